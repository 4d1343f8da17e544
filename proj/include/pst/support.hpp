// Eigenvalue support machinery: the support polynomial f = phi/gcd(phi, phi_a),
// classification of its roots as integers or quadratic integers (p + q*sqrt(delta))/2
// sharing one trace and radicand, and the symbolic minimum transfer time.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pst/charpoly.hpp"
#include "pst/matrix.hpp"
#include "pst/numeric.hpp"
#include "pst/poly.hpp"
#include "pst/quad.hpp"

namespace pst {

/// Exact eigenvalue (p + q*sqrt(delta))/2. Integer eigenvalues t use the
/// uniform convention delta = 1, p = 0, q = 2t.
struct Eigenvalue {
  Int p, q, delta;

  Eigenvalue(Int p_, Int q_, Int delta_)
      : p(std::move(p_)), q(std::move(q_)), delta(std::move(delta_)) {
    if (sign_of(delta) <= 0) throw std::invalid_argument("Eigenvalue: radicand must be positive");
    if (delta == 1 && (sign_of(p) != 0 || !is_even(q)))
      throw std::invalid_argument("Eigenvalue: integer case requires p = 0 and even q");
    if (delta != 1 && sign_of(q) == 0 && sign_of(p) != 0)
      throw std::invalid_argument("Eigenvalue: zero inside a quadratic support requires p = 0");
    if (!divides(Int(4), p * p - q * q * delta))
      throw std::invalid_argument("Eigenvalue: (p + q*sqrt(delta))/2 is not an algebraic integer");
  }

  static Eigenvalue integer(const Int& value) { return Eigenvalue(Int(0), 2 * value, Int(1)); }

  QuadNum value() const { return QuadNum(Rat(p, 2), Rat(q, 2), delta); }

  /// Minimal polynomial over Z: x - t for integers, else x^2 - p*x + (p^2 - q^2*delta)/4.
  IntPoly min_poly() const {
    if (delta == 1 || sign_of(q) == 0)
      return IntPoly::linear_root(delta == 1 ? divexact(q, Int(2)) : Int(0));
    return IntPoly(std::vector<Int>{divexact(p * p - q * q * delta, Int(4)), -p, Int(1)});
  }

  double to_double() const { return value().to_double(); }

  friend bool operator==(const Eigenvalue& a, const Eigenvalue& b) {
    return a.p == b.p && a.q == b.q && a.delta == b.delta;
  }
};

/// Exact minimum transfer time pi / (g * sqrt(delta)).
struct MinTime {
  Int g;
  Int delta;

  double numeric() const {
    return 3.14159265358979323846264338327950288 / (g.get_d() * std::sqrt(delta.get_d()));
  }
  std::string symbolic() const {
    std::string denom;
    if (delta != 1) denom = (g == 1 ? "" : g.get_str() + "*") + "sqrt(" + delta.get_str() + ")";
    else if (g != 1) denom = g.get_str();
    return denom.empty() ? "pi" : "pi/" + (denom.find('*') != std::string::npos ? "(" + denom + ")" : denom);
  }
};

enum class NotPeriodicReason {
  MixedIntegerQuadratic,
  OddDegreeRemainder,
  NonIntegerSharedTrace,
  ZeroWithNonzeroTrace,
  OddCoefficientAfterShift,
  MissingIntegerZRoot,
  PerfectSquareZRoot,
  InconsistentDelta,
};

inline const char* to_string(NotPeriodicReason r) {
  switch (r) {
    case NotPeriodicReason::MixedIntegerQuadratic: return "MixedIntegerQuadratic";
    case NotPeriodicReason::OddDegreeRemainder: return "OddDegreeRemainder";
    case NotPeriodicReason::NonIntegerSharedTrace: return "NonIntegerSharedTrace";
    case NotPeriodicReason::ZeroWithNonzeroTrace: return "ZeroWithNonzeroTrace";
    case NotPeriodicReason::OddCoefficientAfterShift: return "OddCoefficientAfterShift";
    case NotPeriodicReason::MissingIntegerZRoot: return "MissingIntegerZRoot";
    case NotPeriodicReason::PerfectSquareZRoot: return "PerfectSquareZRoot";
    case NotPeriodicReason::InconsistentDelta: return "InconsistentDelta";
  }
  return "?";
}

/// Machine-checkable witness that a support polynomial violates the
/// all-integer-or-all-quadratic condition. `poly` is the polynomial at the
/// failing step, `root` the offending root where one exists.
struct NotPeriodicWitness {
  NotPeriodicReason reason;
  IntPoly poly;
  std::optional<Int> root;

  friend bool operator==(const NotPeriodicWitness& a, const NotPeriodicWitness& b) {
    return a.reason == b.reason && a.poly == b.poly && a.root == b.root;
  }
};

/// Classified eigenvalue support: strictly descending eigenvalues sharing one
/// radicand (and, for the quadratic case, one trace p). g is the gcd of the
/// normalized gaps (q_0 - q_r)/2, or 0 for a singleton support where no gap exists.
struct SupportClassification {
  std::vector<Eigenvalue> eigenvalues;
  Int delta{1};
  Int p{0};
  Int g{0};

  std::size_t k() const { return eigenvalues.size() - 1; }
};

using ClassifyResult = std::variant<SupportClassification, NotPeriodicWitness>;

/// m = s^2 * delta with delta square-free, by trial division.
inline std::pair<Int, Int> squarefree_part(const Int& m) {
  if (sign_of(m) <= 0) throw std::invalid_argument("squarefree_part: argument must be positive");
  Int rest = m, delta(1), s(1);
  for (Int d(2); d * d <= rest; ++d) {
    if (!divides(d, rest)) continue;
    int e = 0;
    while (divides(d, rest)) {
      rest = divexact(rest, d);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= d;
    if (e % 2) delta *= d;
  }
  delta *= rest;  // leftover prime
  return {delta, s};
}

/// gcd over r >= 1 of (q_0 - q_r)/2; requires at least two support eigenvalues.
inline Int compute_g(const SupportClassification& sc) {
  if (sc.eigenvalues.size() < 2)
    throw std::invalid_argument("compute_g: singleton support has no eigenvalue gaps");
  Int g(0);
  const Int& q0 = sc.eigenvalues.front().q;
  for (std::size_t r = 1; r < sc.eigenvalues.size(); ++r) {
    Int diff = q0 - sc.eigenvalues[r].q;
    if (!is_even(diff)) throw std::logic_error("compute_g: eigenvalue gap with odd q difference");
    g = gcd_int(g, divexact(diff, Int(2)));
  }
  return g;
}

inline MinTime pst_time(const SupportClassification& sc) {
  if (sign_of(sc.g) <= 0) throw std::invalid_argument("pst_time: classification carries no g");
  return MinTime{sc.g, sc.delta};
}

namespace detail {

// 2^deg(h) * h((x + p)/2), integral by construction; roots are 2*theta - p.
inline IntPoly shift_scale_double(const IntPoly& h, const Int& p) {
  IntPoly acc;
  IntPoly xp = IntPoly(std::vector<Int>{p, Int(1)});
  int d = h.degree();
  Int pow2(1);
  for (int k = d; k >= 0; --k) {
    acc = acc * xp + IntPoly(h.coeff(static_cast<std::size_t>(k)) * pow2);
    if (k > 0) pow2 *= 2;
  }
  return acc;
}

inline void verify_classification(const IntPoly& f, const SupportClassification& sc) {
  // Every classified eigenvalue must be an exact root.
  for (const Eigenvalue& ev : sc.eigenvalues) {
    if (!eval_quad(f, ev.value()).is_zero())
      throw std::logic_error("classify_support: classified value is not a root of f");
  }
  // Reconstruction: the monic polynomial with exactly these roots equals f.
  std::vector<QuadNum> prod{QuadNum(Int(1))};
  for (const Eigenvalue& ev : sc.eigenvalues) {
    QuadNum root = ev.value();
    std::vector<QuadNum> next(prod.size() + 1);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] = next[i + 1] + prod[i];
      next[i] = next[i] - prod[i] * root;
    }
    prod = std::move(next);
  }
  if (static_cast<int>(prod.size()) - 1 != f.degree())
    throw std::logic_error("classify_support: reconstruction degree mismatch");
  for (std::size_t i = 0; i < prod.size(); ++i) {
    const QuadNum& c = prod[i];
    if (!c.is_rational() || Rat(f.coeff(i)) != c.rational_part())
      throw std::logic_error("classify_support: reconstruction does not match f");
  }
}

}  // namespace detail

/// Root classification of a square-free monic support polynomial whose real
/// roots all lie in [-R, R]. Either every root is an integer, or every nonzero
/// root is a quadratic integer (p + q*sqrt(delta))/2 with shared p and delta;
/// any other shape yields a NotPeriodicWitness naming the failing step.
inline ClassifyResult classify_support(const IntPoly& f, const Int& R) {
  if (f.is_zero() || !f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("classify_support: f must be monic and nonconstant");
  if (!is_squarefree(f))
    throw std::logic_error("classify_support: support polynomial must be square-free");

  // (1) split off integer roots
  IntPoly h = f;
  std::vector<Int> int_roots;
  bool zero_root = false;
  for (auto& [root, mult] : integer_roots(f, R)) {
    if (mult != 1) throw std::logic_error("classify_support: repeated root in square-free input");
    h = exact_div(h, IntPoly::linear_root(root));
    if (sign_of(root) == 0) zero_root = true;
    else int_roots.push_back(root);
    (void)mult;
  }

  SupportClassification sc;

  if (h.degree() == 0) {
    // (2) all-integer support
    std::vector<Int> all = int_roots;
    if (zero_root) all.push_back(Int(0));
    std::sort(all.begin(), all.end(), [](const Int& a, const Int& b) { return a > b; });
    for (const Int& r : all) sc.eigenvalues.push_back(Eigenvalue::integer(r));
    sc.delta = 1;
    sc.p = 0;
  } else {
    // (3) quadratic remainder
    if (!int_roots.empty())
      return NotPeriodicWitness{NotPeriodicReason::MixedIntegerQuadratic, h, int_roots.front()};
    const int d = h.degree();
    if (d % 2 != 0) return NotPeriodicWitness{NotPeriodicReason::OddDegreeRemainder, h, {}};
    Int sum = -h.coeff(static_cast<std::size_t>(d - 1));
    if (!divides(Int(d), 2 * sum))
      return NotPeriodicWitness{NotPeriodicReason::NonIntegerSharedTrace, h, {}};
    Int p = divexact(2 * sum, Int(d));
    if (zero_root && sign_of(p) != 0)
      return NotPeriodicWitness{NotPeriodicReason::ZeroWithNonzeroTrace, h, Int(0)};

    // (4) center and clear denominators: roots of hh are 2*theta - p
    IntPoly hh = detail::shift_scale_double(h, p);
    for (int i = 1; i <= hh.degree(); i += 2)
      if (sign_of(hh.coeff(static_cast<std::size_t>(i))) != 0)
        return NotPeriodicWitness{NotPeriodicReason::OddCoefficientAfterShift, hh, {}};

    // (5) compress to G with G(x^2) = hh(x); z-roots are (2*theta - p)^2
    std::vector<Int> gc(static_cast<std::size_t>(d / 2) + 1, Int(0));
    for (int i = 0; i <= d; i += 2) gc[static_cast<std::size_t>(i / 2)] = hh.coeff(static_cast<std::size_t>(i));
    IntPoly G(std::move(gc));
    Int zbound = (2 * R + abs(p)) * (2 * R + abs(p));
    std::vector<Int> zroots;
    for (auto& [z, mult] : integer_roots(G, zbound)) {
      if (sign_of(z) <= 0) continue;
      if (mult != 1) throw std::logic_error("classify_support: repeated z-root in square-free input");
      zroots.push_back(z);
    }
    if (static_cast<int>(zroots.size()) != G.degree())
      return NotPeriodicWitness{NotPeriodicReason::MissingIntegerZRoot, G, {}};
    for (const Int& z : zroots)
      if (is_perfect_square(z))
        return NotPeriodicWitness{NotPeriodicReason::PerfectSquareZRoot, G, z};

    // (6) shared radicand
    auto [delta, s_max] = squarefree_part(zroots.back());
    (void)s_max;
    std::vector<Int> qs;
    for (const Int& z : zroots) {
      auto [dz, sz] = squarefree_part(z);
      if (dz != delta) return NotPeriodicWitness{NotPeriodicReason::InconsistentDelta, G, z};
      qs.push_back(sz);
    }

    // (7) assemble (p +- q*sqrt(delta))/2, plus 0 when present
    for (const Int& q : qs) {
      sc.eigenvalues.push_back(Eigenvalue(p, q, delta));
      sc.eigenvalues.push_back(Eigenvalue(p, -q, delta));
    }
    if (zero_root) sc.eigenvalues.push_back(Eigenvalue(Int(0), Int(0), delta));
    sc.delta = delta;
    sc.p = p;
  }

  std::sort(sc.eigenvalues.begin(), sc.eigenvalues.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return a.value() > b.value(); });
  for (std::size_t i = 1; i < sc.eigenvalues.size(); ++i)
    if (!(sc.eigenvalues[i - 1].value() > sc.eigenvalues[i].value()))
      throw std::logic_error("classify_support: eigenvalues not strictly descending");

  detail::verify_classification(f, sc);
  if (sc.eigenvalues.size() >= 2) sc.g = compute_g(sc);
  return sc;
}

/// Square-free monic polynomial whose roots are exactly the eigenvalue
/// support of column a: phi / gcd(phi, phi_a).
inline IntPoly support_poly(const IntSymMatrix& m, int a) {
  if (a < 0 || a >= m.order()) throw std::invalid_argument("support_poly: index out of range");
  IntPoly phi = charpoly(m);
  IntPoly phi_a = detail::charpoly_deleted_or_one(m, VertexSet({a}));
  return exact_div(phi, poly_gcd(phi, phi_a));
}

/// As support_poly, but reusing precomputed phi and phi_a.
inline IntPoly support_poly_from(const IntPoly& phi, const IntPoly& phi_a) {
  return exact_div(phi, poly_gcd(phi, phi_a));
}

}  // namespace pst
