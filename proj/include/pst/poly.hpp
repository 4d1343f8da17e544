// Dense integer-coefficient polynomials with exact arithmetic: subresultant
// gcd, exact division, square-freeness, derivatives and integer root scans.

#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pst/numeric.hpp"

namespace pst {

/// Integer polynomial in canonical dense form: coeffs[i] is the coefficient
/// of x^i and the highest stored coefficient is nonzero. The zero polynomial
/// stores no coefficients and has degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(Int constant) {
    if (sign_of(constant) != 0) c_.push_back(std::move(constant));
  }
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static IntPoly zero() { return IntPoly(); }
  static IntPoly one() { return IntPoly(Int(1)); }

  /// coeff * x^power
  static IntPoly monomial(Int coeff, std::size_t power) {
    if (sign_of(coeff) == 0) return IntPoly();
    std::vector<Int> c(power + 1, Int(0));
    c[power] = std::move(coeff);
    return IntPoly(std::move(c));
  }

  /// x - root
  static IntPoly linear_root(const Int& root) {
    return IntPoly(std::vector<Int>{-root, Int(1)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  const Int& coeff(std::size_t i) const {
    static const Int kZero(0);
    return i < c_.size() ? c_[i] : kZero;
  }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const {
    if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPoly(std::move(c));
  }
  IntPoly operator-() const {
    std::vector<Int> c(c_);
    for (auto& v : c) v = -v;
    IntPoly r;
    r.c_ = std::move(c);
    return r;
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const IntPoly& a, const Int& s) {
    if (sign_of(s) == 0) return IntPoly();
    std::vector<Int> c(a.c_);
    for (auto& v : c) v *= s;
    IntPoly r;
    r.c_ = std::move(c);
    return r;
  }
  friend IntPoly operator*(const Int& s, const IntPoly& a) { return a * s; }

  Int eval(const Int& x) const {
    Int acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }
  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += Rat(*it);
    }
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const Int& a = c_[i];
      if (sign_of(a) == 0) continue;
      Int mag = abs(a);
      if (first) {
        if (sign_of(a) < 0) os << "-";
        first = false;
      } else {
        os << (sign_of(a) < 0 ? " - " : " + ");
      }
      if (i == 0 || mag != 1) os << mag.get_str();
      if (i > 0) {
        if (mag != 1) os << "*";
        os << "x";
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void normalize() {
    while (!c_.empty() && sign_of(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

inline IntPoly derivative(const IntPoly& f) {
  if (f.degree() < 1) return IntPoly();
  std::vector<Int> c(static_cast<std::size_t>(f.degree()), Int(0));
  for (int i = 1; i <= f.degree(); ++i) c[i - 1] = f.coeff(i) * Int(i);
  return IntPoly(std::move(c));
}

/// gcd of all coefficients, nonnegative; content of the zero polynomial is 0.
inline Int content(const IntPoly& f) {
  Int g(0);
  for (const Int& a : f.coeffs()) g = gcd_int(g, a);
  return g;
}

/// f / content(f), sign-normalized so the leading coefficient is positive.
inline IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return IntPoly();
  Int cont = content(f);
  if (sign_of(f.leading()) < 0) cont = -cont;
  std::vector<Int> c;
  c.reserve(f.coeffs().size());
  for (const Int& a : f.coeffs()) c.push_back(divexact(a, cont));
  return IntPoly(std::move(c));
}

/// Quotient f/g when g divides f in Z[x]; nullopt otherwise.
inline std::optional<IntPoly> try_exact_div(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("polynomial division by zero");
  if (f.is_zero()) return IntPoly();
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<Int> rem(f.coeffs());
  std::vector<Int> quo(static_cast<std::size_t>(f.degree() - g.degree()) + 1, Int(0));
  const Int& lg = g.leading();
  for (int k = f.degree() - g.degree(); k >= 0; --k) {
    Int& top = rem[static_cast<std::size_t>(k + g.degree())];
    if (sign_of(top) == 0) continue;
    if (!divides(lg, top)) return std::nullopt;
    Int q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
    for (int i = 0; i <= g.degree(); ++i)
      rem[static_cast<std::size_t>(k + i)] -= q * g.coeff(static_cast<std::size_t>(i));
    quo[static_cast<std::size_t>(k)] = std::move(q);
  }
  for (const Int& r : rem)
    if (sign_of(r) != 0) return std::nullopt;
  return IntPoly(std::move(quo));
}

/// Exact quotient; the divisor must divide f. A failed division here means a
/// caller broke the contract, hence logic_error.
inline IntPoly exact_div(const IntPoly& f, const IntPoly& g) {
  auto q = try_exact_div(f, g);
  if (!q) throw std::logic_error("exact_div: " + g.to_string() + " does not divide " + f.to_string());
  return *q;
}

namespace detail {

// Pseudo-remainder: prem(u, v) = lc(v)^(deg u - deg v + 1) * u  mod  v.
inline IntPoly pseudo_rem(const IntPoly& u, const IntPoly& v) {
  IntPoly r = u;
  const Int& lv = v.leading();
  int e = u.degree() - v.degree() + 1;
  while (!r.is_zero() && r.degree() >= v.degree()) {
    IntPoly t = IntPoly::monomial(r.leading(), static_cast<std::size_t>(r.degree() - v.degree()));
    r = r * lv - t * v;
    --e;
  }
  // Keep the classical normalization so the subresultant divisions stay exact.
  Int scale(1);
  for (; e > 0; --e) scale *= lv;
  return r * scale;
}

inline Int int_pow(const Int& b, int e) {
  Int r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace detail

/// Primitive gcd over Q[x] via the subresultant pseudo-remainder sequence,
/// normalized to a positive leading coefficient. Divides both inputs in Z[x].
inline IntPoly poly_gcd(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("poly_gcd(0, 0) is undefined");
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  IntPoly a = primitive_part(f);
  IntPoly b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  Int h(1), s(1);
  while (true) {
    int delta = a.degree() - b.degree();
    IntPoly r = detail::pseudo_rem(a, b);
    if (r.is_zero()) return primitive_part(b);
    if (r.degree() == 0) return IntPoly::one();
    a = b;
    b = exact_div(r, IntPoly(s * detail::int_pow(h, delta)));
    s = a.leading();
    // h <- s^delta * h^(1-delta), exact for delta >= 1
    h = delta == 0 ? h : divexact(detail::int_pow(s, delta), detail::int_pow(h, delta - 1));
  }
}

/// True iff f has no repeated roots, i.e. gcd(f, f') is constant.
inline bool is_squarefree(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  return poly_gcd(f, derivative(f)).degree() == 0;
}

/// All integer roots of f in [-R, R] with multiplicities, ascending.
inline std::vector<std::pair<Int, int>> integer_roots(const IntPoly& f, const Int& R) {
  if (f.is_zero()) throw std::invalid_argument("integer_roots: zero polynomial");
  if (sign_of(R) < 0) throw std::invalid_argument("integer_roots: negative bound");
  std::vector<std::pair<Int, int>> roots;
  for (Int x = -R; x <= R; ++x) {
    if (sign_of(f.eval(x)) != 0) continue;
    int mult = 0;
    IntPoly rest = f;
    IntPoly lin = IntPoly::linear_root(x);
    while (true) {
      auto q = try_exact_div(rest, lin);
      if (!q) break;
      rest = std::move(*q);
      ++mult;
      if (rest.is_zero()) break;
    }
    roots.emplace_back(x, mult);
  }
  return roots;
}

/// Largest bit length over all coefficients.
inline std::size_t coeff_bits(const IntPoly& f) {
  std::size_t b = 0;
  for (const Int& a : f.coeffs()) b = std::max(b, bit_length(a));
  return b;
}

}  // namespace pst
