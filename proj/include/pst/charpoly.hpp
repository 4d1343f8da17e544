// Division-free characteristic polynomials: Berkowitz for a single matrix,
// plus a Faddeev-LeVerrier adjugate recursion that yields the characteristic
// polynomial together with every single-vertex-deleted one in one O(n^4) pass.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pst/matrix.hpp"
#include "pst/poly.hpp"

namespace pst {

namespace detail {

// Berkowitz vectors hold coefficients in descending power order.
inline std::vector<Int> berkowitz_vector(const IntSymMatrix& m) {
  const int n = m.order();
  std::vector<Int> v{Int(1), -m.at(0, 0)};
  std::vector<Int> w, wn, t;
  for (int r = 2; r <= n; ++r) {
    // Toeplitz column: 1, -M[r-1][r-1], -(R A^i C) for i = 0..r-3, with
    // A the leading (r-1)x(r-1) block, C = M[0..r-2][r-1], R = C^T.
    t.assign(static_cast<std::size_t>(r) + 1, Int(0));
    t[0] = 1;
    t[1] = -m.at(r - 1, r - 1);
    w.assign(static_cast<std::size_t>(r - 1), Int(0));
    for (int i = 0; i < r - 1; ++i) w[static_cast<std::size_t>(i)] = m.at(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      Int dot(0);
      for (int i = 0; i < r - 1; ++i) dot += m.at(r - 1, i) * w[static_cast<std::size_t>(i)];
      t[static_cast<std::size_t>(k)] = -dot;
      if (k == r) break;
      wn.assign(static_cast<std::size_t>(r - 1), Int(0));
      for (int i = 0; i < r - 1; ++i)
        for (int j = 0; j < r - 1; ++j)
          wn[static_cast<std::size_t>(i)] += m.at(i, j) * w[static_cast<std::size_t>(j)];
      w.swap(wn);
    }
    std::vector<Int> nv(static_cast<std::size_t>(r) + 1, Int(0));
    for (std::size_t j = 0; j < nv.size(); ++j) {
      std::size_t lo = j >= v.size() ? j - v.size() + 1 : 0;
      for (std::size_t k = lo; k <= j && k < t.size(); ++k) nv[j] += t[k] * v[j - k];
    }
    v.swap(nv);
  }
  return v;
}

inline IntPoly descending_to_poly(const std::vector<Int>& desc) {
  std::vector<Int> asc(desc.rbegin(), desc.rend());
  return IntPoly(std::move(asc));
}

}  // namespace detail

/// Characteristic polynomial det(xI - M), monic of degree n (Berkowitz).
inline IntPoly charpoly(const IntSymMatrix& m) {
  return detail::descending_to_poly(detail::berkowitz_vector(m));
}

/// Characteristic polynomial of the principal submatrix on V minus T.
inline IntPoly charpoly_deleted(const IntSymMatrix& m, const VertexSet& t) {
  return charpoly(m.deleted(t));
}

namespace detail {

// phi_T for |T| = n is the determinant of the empty matrix, i.e. 1; the
// public charpoly_deleted keeps |T| < n.
inline IntPoly charpoly_deleted_or_one(const IntSymMatrix& m, const VertexSet& t) {
  if (t.size() == static_cast<std::size_t>(m.order())) return IntPoly::one();
  return charpoly_deleted(m, t);
}

}  // namespace detail

struct CharpolyBatch {
  IntPoly phi;                 // det(xI - M)
  std::vector<IntPoly> phi_a;  // det(xI - M with row/column a removed), per a
};

/// Faddeev-LeVerrier recursion: M_1 = I, M_k = A*M_{k-1} + c_{n-k+1} I,
/// c_{n-k} = -tr(A*M_k)/k. The trace divisions are exact over Z, the c's are
/// the characteristic polynomial coefficients, and adj(xI - A) = sum M_k
/// x^{n-k}, whose diagonal gives every vertex-deleted characteristic
/// polynomial at once.
inline CharpolyBatch charpoly_with_deleted_batch(const IntSymMatrix& m) {
  const int n = m.order();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<Int> c(nn + 1, Int(0));
  c[nn] = 1;
  // diag_hist[k-1][a] = (M_k)_{aa}
  std::vector<std::vector<Int>> diag_hist;
  diag_hist.reserve(nn);

  std::vector<Int> mk(nn * nn, Int(0));  // M_k, starting at M_1 = I
  for (std::size_t i = 0; i < nn; ++i) mk[i * nn + i] = 1;
  Int tr(0);
  for (int i = 0; i < n; ++i) tr += m.at(i, i);
  c[nn - 1] = -tr;
  diag_hist.emplace_back(nn, Int(1));

  std::vector<Int> prod(nn * nn);
  for (int k = 2; k <= n; ++k) {
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) {
        Int acc(0);
        for (std::size_t l = 0; l < nn; ++l)
          acc += m.at(static_cast<int>(i), static_cast<int>(l)) * mk[l * nn + j];
        prod[i * nn + j] = std::move(acc);
      }
    }
    mk.swap(prod);
    const Int& shift = c[nn - static_cast<std::size_t>(k) + 1];
    for (std::size_t i = 0; i < nn; ++i) mk[i * nn + i] += shift;
    Int trace(0);
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nn; ++j)
        trace += m.at(static_cast<int>(i), static_cast<int>(j)) * mk[j * nn + i];
    if (!divides(Int(k), trace))
      throw std::logic_error("charpoly recursion: trace division not exact");
    c[nn - static_cast<std::size_t>(k)] = -divexact(trace, Int(k));
    std::vector<Int> d(nn);
    for (std::size_t i = 0; i < nn; ++i) d[i] = mk[i * nn + i];
    diag_hist.push_back(std::move(d));
  }

  CharpolyBatch out;
  out.phi = IntPoly(std::move(c));
  out.phi_a.reserve(nn);
  for (std::size_t a = 0; a < nn; ++a) {
    std::vector<Int> coeffs(nn, Int(0));  // degree n-1, coefficient of x^{n-k} is (M_k)_{aa}
    for (std::size_t k = 1; k <= nn; ++k) coeffs[nn - k] = diag_hist[k - 1][a];
    out.phi_a.emplace_back(std::move(coeffs));
  }
  return out;
}

}  // namespace pst
