// Arbitrary-precision integer/rational aliases and small number-theoretic helpers.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pst {

using Int = mpz_class;
using Rat = mpq_class;

inline int sign_of(const Int& v) { return mpz_sgn(v.get_mpz_t()); }
inline int sign_of(const Rat& v) { return mpq_sgn(v.get_mpq_t()); }

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (sign_of(d) == 0) return sign_of(a) == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact quotient a/b; throws if b does not divide a.
inline Int divexact(const Int& a, const Int& b) {
  if (sign_of(b) == 0) throw std::invalid_argument("divexact: zero divisor");
  if (!divides(b, a)) throw std::logic_error("divexact: inexact division");
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Floor square root of v >= 0.
inline Int isqrt(const Int& v) {
  if (sign_of(v) < 0) throw std::invalid_argument("isqrt: negative argument");
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& v) {
  return sign_of(v) >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline bool is_even(const Int& v) { return mpz_even_p(v.get_mpz_t()) != 0; }

inline std::size_t bit_length(const Int& v) {
  return sign_of(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline bool fits_long(const Int& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

inline long to_long(const Int& v) {
  if (!fits_long(v)) throw std::overflow_error("integer too large for machine word: " + v.get_str());
  return v.get_si();
}

}  // namespace pst
