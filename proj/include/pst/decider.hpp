// Perfect state transfer decision pipeline: cospectrality, periodicity of the
// eigenvalue support, pole simplicity, sign/parity compatibility, and the
// final verdict with a machine-checkable certificate either way.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "pst/charpoly.hpp"
#include "pst/matrix.hpp"
#include "pst/nullspace.hpp"
#include "pst/numeric.hpp"
#include "pst/poly.hpp"
#include "pst/support.hpp"

namespace pst {

enum class FailureKind {
  NotCospectral,
  PolesNotSimple,
  NotPeriodic,
  SingletonSupport,
  SignParityMismatch,
};

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::NotCospectral: return "NotCospectral";
    case FailureKind::PolesNotSimple: return "PolesNotSimple";
    case FailureKind::NotPeriodic: return "NotPeriodic";
    case FailureKind::SingletonSupport: return "SingletonSupport";
    case FailureKind::SignParityMismatch: return "SignParityMismatch";
  }
  return "?";
}

struct NotCospectralWitness {
  IntPoly phi_a, phi_b;
};

/// A repeated pole of phi_ab/phi: an extracted integer/quadratic root where
/// possible, otherwise the repeated factor itself.
struct PoleWitness {
  std::variant<Eigenvalue, IntPoly> repeated;
};

struct SingletonWitness {
  Eigenvalue theta;
};

struct SignMismatchWitness {
  int r;               // index into the descending support
  Eigenvalue theta;
  Int d;               // (q_0 - q_r) / (2g)
  int required_sign;   // s_0 * (-1)^d
  int got_sign;
};

struct Failure {
  FailureKind kind;
  std::variant<NotCospectralWitness, PoleWitness, NotPeriodicWitness, SingletonWitness,
               SignMismatchWitness>
      witness;
};

struct PSTVerdict {
  bool yes = false;
  std::pair<int, int> pair{0, 0};
  // YES payload
  std::optional<MinTime> time;
  std::vector<std::pair<Eigenvalue, int>> signs;  // descending over the support
  // NO payload
  std::optional<Failure> failure;
};

/// phi_a(x) = phi_b(x): equal vertex-deleted characteristic polynomials.
inline bool is_cospectral(const IntSymMatrix& m, int a, int b) {
  if (a == b) throw std::invalid_argument("is_cospectral: indices must differ");
  return charpoly_deleted(m, VertexSet({a})) == charpoly_deleted(m, VertexSet({b}));
}

namespace detail {

// Deterministic witness for a repeated factor: smallest integer root if any,
// else the quadratic root (p + q*sqrt(delta))/2 of a degree-2 factor, else
// the factor polynomial itself.
inline PoleWitness extract_pole_witness(const IntPoly& repeated_factor, const Int& R) {
  auto roots = integer_roots(repeated_factor, R);
  if (!roots.empty()) return PoleWitness{Eigenvalue::integer(roots.front().first)};
  IntPoly sf = primitive_part(exact_div(repeated_factor, poly_gcd(repeated_factor, derivative(repeated_factor))));
  if (sf.degree() == 2 && sf.is_monic()) {
    Int b = sf.coeff(1), c = sf.coeff(0);
    Int disc = b * b - 4 * c;
    if (sign_of(disc) > 0 && !is_perfect_square(disc)) {
      auto [delta, s] = squarefree_part(disc);
      return PoleWitness{Eigenvalue(-b, s, delta)};
    }
  }
  return PoleWitness{repeated_factor};
}

}  // namespace detail

/// Strong cospectrality test: cospectral and all poles of phi_ab/phi simple.
/// Returns the repeated-pole witness when the pole test fails.
struct StrongCospectralCheck {
  bool cospectral = false;
  bool poles_simple = false;
  std::optional<PoleWitness> witness;

  bool ok() const { return cospectral && poles_simple; }
};

inline StrongCospectralCheck check_strong_cospectral(const IntSymMatrix& m, const IntPoly& phi,
                                                     const IntPoly& phi_a, const IntPoly& phi_b,
                                                     const IntPoly& phi_ab) {
  StrongCospectralCheck res;
  res.cospectral = phi_a == phi_b;
  if (!res.cospectral) return res;
  IntPoly quotient = exact_div(phi, poly_gcd(phi, phi_ab));
  IntPoly rep = poly_gcd(quotient, derivative(quotient));
  if (rep.degree() == 0) {
    res.poles_simple = true;
  } else {
    res.poles_simple = false;
    res.witness = detail::extract_pole_witness(rep, spectral_bound(m));
  }
  return res;
}

inline bool is_strongly_cospectral(const IntSymMatrix& m, int a, int b) {
  if (a == b) throw std::invalid_argument("is_strongly_cospectral: indices must differ");
  IntPoly phi = charpoly(m);
  IntPoly phi_a = charpoly_deleted(m, VertexSet({a}));
  IntPoly phi_b = charpoly_deleted(m, VertexSet({b}));
  IntPoly phi_ab = detail::charpoly_deleted_or_one(m, VertexSet({std::min(a, b), std::max(a, b)}));
  return check_strong_cospectral(m, phi, phi_a, phi_b, phi_ab).ok();
}

/// Periodicity of one column: classify its eigenvalue support.
inline ClassifyResult is_periodic(const IntSymMatrix& m, int a) {
  return classify_support(support_poly(m, a), spectral_bound(m));
}

/// Multiplicity of theta as a pole of phi_T/phi, computed definitionally as
/// mult_phi(theta) - mult_phi_T(theta) clamped at zero.
inline int pole_multiplicity(const IntSymMatrix& m, const VertexSet& t, const Eigenvalue& theta) {
  IntPoly mp = theta.min_poly();
  auto mult_in = [&mp](IntPoly f) {
    int mult = 0;
    while (true) {
      auto q = try_exact_div(f, mp);
      if (!q) return mult;
      f = std::move(*q);
      ++mult;
      if (f.is_zero()) return mult;
    }
  };
  int in_phi = mult_in(charpoly(m));
  if (in_phi == 0) throw std::invalid_argument("pole_multiplicity: theta is not an eigenvalue");
  int in_phi_t = mult_in(charpoly_deleted(m, t));
  return in_phi > in_phi_t ? in_phi - in_phi_t : 0;
}

/// Per-matrix cache shared across pair decisions: phi, every phi_a (one
/// adjugate pass in batch mode, Berkowitz on demand otherwise), per-column
/// classifications and per-pair phi_ab.
class DeciderContext {
 public:
  explicit DeciderContext(const IntSymMatrix& m, bool batch = true) : m_(m), bound_(spectral_bound(m)) {
    if (batch) {
      CharpolyBatch b = charpoly_with_deleted_batch(m);
      phi_ = std::move(b.phi);
      phi_one_.resize(b.phi_a.size());
      for (std::size_t a = 0; a < b.phi_a.size(); ++a) phi_one_[a] = std::move(b.phi_a[a]);
    }
    classification_.resize(static_cast<std::size_t>(m.order()));
  }

  const IntSymMatrix& matrix() const { return m_; }
  const Int& bound() const { return bound_; }

  const IntPoly& phi() {
    if (phi_.is_zero()) phi_ = charpoly(m_);
    return phi_;
  }

  const IntPoly& phi_one(int a) {
    if (phi_one_.empty()) phi_one_.resize(static_cast<std::size_t>(m_.order()));
    IntPoly& slot = phi_one_[static_cast<std::size_t>(a)];
    if (slot.is_zero()) slot = charpoly_deleted(m_, VertexSet({a}));
    return slot;
  }

  const IntPoly& phi_two(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = phi_two_.find(key);
    if (it == phi_two_.end())
      it = phi_two_.emplace(key, detail::charpoly_deleted_or_one(m_, VertexSet({key.first, key.second}))).first;
    return it->second;
  }

  const ClassifyResult& classification(int a) {
    auto& slot = classification_[static_cast<std::size_t>(a)];
    if (!slot)
      slot = std::make_unique<ClassifyResult>(
          classify_support(support_poly_from(phi(), phi_one(a)), bound_));
    return *slot;
  }

  /// Largest coefficient bit length seen across phi, phi_a and phi_ab.
  std::size_t peak_coeff_bits() const {
    std::size_t bits = coeff_bits(phi_);
    for (const IntPoly& f : phi_one_) bits = std::max(bits, coeff_bits(f));
    for (const auto& [k, f] : phi_two_) bits = std::max(bits, coeff_bits(f));
    return bits;
  }

  PSTVerdict decide(int a, int b);

 private:
  const IntSymMatrix& m_;
  Int bound_;
  IntPoly phi_;
  std::vector<IntPoly> phi_one_;
  std::map<std::pair<int, int>, IntPoly> phi_two_;
  std::vector<std::unique_ptr<ClassifyResult>> classification_;
};

inline PSTVerdict DeciderContext::decide(int a, int b) {
  if (a == b) throw std::invalid_argument("decide_pst: indices must differ");
  PSTVerdict v;
  v.pair = std::minmax(a, b);
  const auto [a0, b0] = v.pair;

  // Cospectrality is the cheapest test and a prerequisite for everything else.
  if (phi_one(a0) != phi_one(b0)) {
    v.failure = Failure{FailureKind::NotCospectral, NotCospectralWitness{phi_one(a0), phi_one(b0)}};
    return v;
  }

  // Periodicity next: cospectral columns share their support polynomial, so
  // one classification covers both. A repeated-pole certificate would also be
  // valid here, but the support shape is the more informative witness.
  const ClassifyResult& cls = classification(a0);
  if (const auto* w = std::get_if<NotPeriodicWitness>(&cls)) {
    v.failure = Failure{FailureKind::NotPeriodic, *w};
    return v;
  }
  const auto& sc = std::get<SupportClassification>(cls);

  // Pole simplicity of phi_ab/phi completes strong cospectrality.
  StrongCospectralCheck scc =
      check_strong_cospectral(m_, phi(), phi_one(a0), phi_one(b0), phi_two(a0, b0));
  if (!scc.poles_simple) {
    v.failure = Failure{FailureKind::PolesNotSimple, *scc.witness};
    return v;
  }

  if (sc.eigenvalues.size() < 2) {
    v.failure = Failure{FailureKind::SingletonSupport, SingletonWitness{sc.eigenvalues.front()}};
    return v;
  }

  // Sign/parity compatibility: s_r * (-1)^{d_r} must not depend on r, with
  // d_r = (q_0 - q_r)/(2g). The r = 0 ratio fixes the global phase.
  const Int& q0 = sc.eigenvalues.front().q;
  int s0 = sign_ratio(m_, sc.eigenvalues.front(), a0, b0);
  std::vector<std::pair<Eigenvalue, int>> signs{{sc.eigenvalues.front(), s0}};
  for (std::size_t r = 1; r < sc.eigenvalues.size(); ++r) {
    Int d = divexact(divexact(q0 - sc.eigenvalues[r].q, Int(2)), sc.g);
    int required = is_even(d) ? s0 : -s0;
    int got = sign_ratio(m_, sc.eigenvalues[r], a0, b0);
    if (got != required) {
      v.failure = Failure{FailureKind::SignParityMismatch,
                          SignMismatchWitness{static_cast<int>(r), sc.eigenvalues[r], d, required, got}};
      return v;
    }
    signs.emplace_back(sc.eigenvalues[r], got);
  }

  v.yes = true;
  v.time = pst_time(sc);
  v.signs = std::move(signs);
  return v;
}

/// Verdict for one pair; builds a fresh lazily-filled context.
inline PSTVerdict decide_pst(const IntSymMatrix& m, int a, int b) {
  DeciderContext ctx(m, /*batch=*/false);
  return ctx.decide(a, b);
}

/// Verdicts for every unordered pair in lexicographic order, sharing the
/// per-column characteristic polynomials and classifications.
inline std::vector<PSTVerdict> decide_all(const IntSymMatrix& m) {
  if (m.order() < 2) throw std::invalid_argument("decide_all: need at least two indices");
  DeciderContext ctx(m);
  std::vector<PSTVerdict> out;
  out.reserve(static_cast<std::size_t>(m.order()) * (m.order() - 1) / 2);
  for (int a = 0; a < m.order(); ++a)
    for (int b = a + 1; b < m.order(); ++b) out.push_back(ctx.decide(a, b));
  return out;
}

/// Re-validates a NO certificate against a fresh computation. Used by report
/// verification; any mismatch means the verdict does not describe this matrix.
inline bool recheck_failure(const IntSymMatrix& m, std::pair<int, int> pair, const Failure& f) {
  int a0 = std::min(pair.first, pair.second), b0 = std::max(pair.first, pair.second);
  if (a0 == b0 || a0 < 0 || b0 >= m.order()) return false;
  switch (f.kind) {
    case FailureKind::NotCospectral: {
      const auto* w = std::get_if<NotCospectralWitness>(&f.witness);
      if (!w) return false;
      IntPoly pa = charpoly_deleted(m, VertexSet({a0}));
      IntPoly pb = charpoly_deleted(m, VertexSet({b0}));
      return pa != pb && w->phi_a == pa && w->phi_b == pb;
    }
    case FailureKind::PolesNotSimple: {
      const auto* w = std::get_if<PoleWitness>(&f.witness);
      if (!w) return false;
      IntPoly phi = charpoly(m);
      IntPoly phi_ab = detail::charpoly_deleted_or_one(m, VertexSet({a0, b0}));
      IntPoly quotient = exact_div(phi, poly_gcd(phi, phi_ab));
      IntPoly rep = poly_gcd(quotient, derivative(quotient));
      if (rep.degree() < 1) return false;
      if (const auto* theta = std::get_if<Eigenvalue>(&w->repeated))
        return try_exact_div(rep, theta->min_poly()).has_value();
      const IntPoly& factor = std::get<IntPoly>(w->repeated);
      return factor.degree() >= 1 && try_exact_div(rep, primitive_part(factor)).has_value();
    }
    case FailureKind::NotPeriodic: {
      const auto* w = std::get_if<NotPeriodicWitness>(&f.witness);
      if (!w) return false;
      ClassifyResult r = is_periodic(m, a0);
      const auto* fresh = std::get_if<NotPeriodicWitness>(&r);
      return fresh && *fresh == *w;
    }
    case FailureKind::SingletonSupport: {
      const auto* w = std::get_if<SingletonWitness>(&f.witness);
      if (!w) return false;
      ClassifyResult r = is_periodic(m, a0);
      const auto* sc = std::get_if<SupportClassification>(&r);
      return sc && sc->eigenvalues.size() == 1 && sc->eigenvalues.front() == w->theta;
    }
    case FailureKind::SignParityMismatch: {
      const auto* w = std::get_if<SignMismatchWitness>(&f.witness);
      if (!w) return false;
      ClassifyResult r = is_periodic(m, a0);
      const auto* sc = std::get_if<SupportClassification>(&r);
      if (!sc || w->r < 1 || static_cast<std::size_t>(w->r) >= sc->eigenvalues.size()) return false;
      if (!(sc->eigenvalues[static_cast<std::size_t>(w->r)] == w->theta)) return false;
      Int d = divexact(divexact(sc->eigenvalues.front().q - w->theta.q, Int(2)), sc->g);
      if (d != w->d) return false;
      int s0 = sign_ratio(m, sc->eigenvalues.front(), a0, b0);
      int required = is_even(d) ? s0 : -s0;
      int got = sign_ratio(m, w->theta, a0, b0);
      return required == w->required_sign && got == w->got_sign && got != required;
    }
  }
  return false;
}

}  // namespace pst
