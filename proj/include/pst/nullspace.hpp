// Exact kernel of 2M - (p + q*sqrt(delta)) I over Q(sqrt(delta)) and the
// eigenvector sign ratio between two strongly cospectral columns.

#pragma once

#include <stdexcept>
#include <vector>

#include "pst/matrix.hpp"
#include "pst/quad.hpp"
#include "pst/support.hpp"

namespace pst {

/// Kernel basis of 2M - (p + q*sqrt(delta)) I in reduced echelon form; the
/// factor 2 keeps the initial entries in Z[sqrt(delta)]. Empty kernel means
/// theta is not an eigenvalue, which is a caller bug.
inline std::vector<QuadVector> nullspace_quad(const IntSymMatrix& m, const Eigenvalue& theta) {
  const int n = m.order();
  std::vector<std::vector<QuadNum>> rows(static_cast<std::size_t>(n),
                                         std::vector<QuadNum>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat rat = Rat(2 * m.at(i, j) - (i == j ? theta.p : Int(0)));
      Rat irr = i == j ? Rat(-theta.q) : Rat(0);
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          QuadNum(std::move(rat), std::move(irr), theta.delta);
    }

  // Gauss-Jordan with first-nonzero pivoting; exact arithmetic needs no
  // magnitude heuristics.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int prow = -1;
    for (int r = rank; r < n; ++r)
      if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        prow = r;
        break;
      }
    if (prow < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(prow)]);
    QuadNum inv = QuadNum(Int(1)) / rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
    for (int j = col; j < n; ++j)
      rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] =
          rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      QuadNum factor = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (factor.is_zero()) continue;
      for (int j = col; j < n; ++j)
        rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
            rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -
            factor * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<QuadVector> basis;
  for (int freec = 0; freec < n; ++freec) {
    if (is_pivot[static_cast<std::size_t>(freec)]) continue;
    QuadVector v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(freec)] = QuadNum(Int(1));
    for (int r = 0; r < rank; ++r)
      v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
          -rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(freec)];
    basis.push_back(std::move(v));
  }
  if (basis.empty())
    throw std::logic_error("nullspace_quad: empty kernel; theta is not an eigenvalue");
  return basis;
}

/// The constant s in {+1, -1} with x_b = s * x_a across every kernel basis
/// vector of theta. Any other shape contradicts strong cospectrality of
/// (a, b), which the caller asserted, hence logic_error.
inline int sign_ratio(const IntSymMatrix& m, const Eigenvalue& theta, int a, int b) {
  if (a < 0 || b < 0 || a >= m.order() || b >= m.order() || a == b)
    throw std::invalid_argument("sign_ratio: bad column pair");
  int s = 0;
  for (const QuadVector& v : nullspace_quad(m, theta)) {
    const QuadNum& va = v[static_cast<std::size_t>(a)];
    const QuadNum& vb = v[static_cast<std::size_t>(b)];
    if (va.is_zero()) {
      if (!vb.is_zero())
        throw std::logic_error("sign_ratio: basis vector vanishes at a but not at b");
      continue;
    }
    QuadNum ratio = vb / va;
    int cur;
    if (ratio == QuadNum(Int(1))) cur = 1;
    else if (ratio == QuadNum(Int(-1))) cur = -1;
    else throw std::logic_error("sign_ratio: ratio " + ratio.to_string() + " is not +-1");
    if (s != 0 && s != cur)
      throw std::logic_error("sign_ratio: inconsistent signs across kernel basis");
    s = cur;
  }
  if (s == 0)
    throw std::logic_error("sign_ratio: no kernel basis vector is nonzero at a");
  return s;
}

}  // namespace pst
