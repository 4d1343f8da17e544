// Test-only oracles and generators, kept independent of the implementation
// paths they check: cofactor-expansion characteristic polynomials, fraction-
// free determinants, exact rational inversion, random matrices/polynomials
// and an exhaustive small-graph enumerator.

#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pst/matrix.hpp"
#include "pst/poly.hpp"

namespace testutil {

using pst::Int;
using pst::IntPoly;
using pst::IntSymMatrix;
using pst::Rat;

// Characteristic polynomial det(xI - M) by recursive cofactor expansion over
// polynomial entries. Exponential; fine for n <= 6.
inline IntPoly cofactor_det(std::vector<std::vector<IntPoly>>& a) {
  std::size_t n = a.size();
  if (n == 1) return a[0][0];
  IntPoly det;
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    if (!a[0][col].is_zero()) {
      std::vector<std::vector<IntPoly>> minor(n - 1, std::vector<IntPoly>(n - 1));
      for (std::size_t i = 1; i < n; ++i) {
        std::size_t jj = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == col) continue;
          minor[i - 1][jj++] = a[i][j];
        }
      }
      IntPoly term = a[0][col] * cofactor_det(minor);
      det = sign > 0 ? det + term : det - term;
    }
    sign = -sign;
  }
  return det;
}

inline IntPoly charpoly_cofactor(const IntSymMatrix& m) {
  std::size_t n = static_cast<std::size_t>(m.order());
  std::vector<std::vector<IntPoly>> a(n, std::vector<IntPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int c = -m.at(static_cast<int>(i), static_cast<int>(j));
      a[i][j] = i == j ? IntPoly(std::vector<Int>{c, Int(1)}) : IntPoly(c);
    }
  return cofactor_det(a);
}

// Fraction-free (Bareiss) determinant over the integers.
inline Int bareiss_det(const IntSymMatrix& m) {
  int n = m.order();
  std::vector<std::vector<Int>> a(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (pst::sign_of(a[k][k]) == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (pst::sign_of(a[r][k]) != 0) { p = r; break; }
      if (p < 0) return Int(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = pst::divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

// Exact inverse of a rational matrix by Gauss-Jordan; throws on singular input.
inline std::vector<std::vector<Rat>> rational_inverse(std::vector<std::vector<Rat>> a) {
  std::size_t n = a.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && pst::sign_of(a[p][col]) == 0) ++p;
    if (p == n) throw std::invalid_argument("rational_inverse: singular matrix");
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    Rat piv = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= piv;
      inv[col][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || pst::sign_of(a[r][col]) == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline IntSymMatrix random_symmetric(std::mt19937& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<Int> e(static_cast<std::size_t>(n) * n, Int(0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int v = dist(rng);
      e[static_cast<std::size_t>(i) * n + j] = v;
      e[static_cast<std::size_t>(j) * n + i] = v;
    }
  return IntSymMatrix(n, std::move(e));
}

inline IntPoly random_poly(std::mt19937& rng, int max_deg, int lo, int hi) {
  std::uniform_int_distribution<int> deg_dist(0, max_deg);
  std::uniform_int_distribution<int> coeff(lo, hi);
  int d = deg_dist(rng);
  std::vector<Int> c(static_cast<std::size_t>(d) + 1);
  for (auto& v : c) v = coeff(rng);
  while (!c.empty() && pst::sign_of(c.back()) == 0) c.pop_back();
  return IntPoly(std::move(c));
}

inline std::vector<std::pair<int, int>> random_graph_edges(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return edges;
}

// ---------------------------------------------------------------------------
// exhaustive non-isomorphic connected graph enumeration, n <= 6

inline bool mask_connected(int n, unsigned mask) {
  auto bit = [](int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  };
  std::vector<int> seen{0};
  std::vector<bool> vis(static_cast<std::size_t>(n), false);
  vis[0] = true;
  while (!seen.empty()) {
    int v = seen.back();
    seen.pop_back();
    for (int u = 0; u < n; ++u) {
      if (u == v || vis[static_cast<std::size_t>(u)]) continue;
      if (mask >> bit(u, v) & 1u) {
        vis[static_cast<std::size_t>(u)] = true;
        seen.push_back(u);
      }
    }
  }
  return std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
}

// Canonical form = maximal edge bitmask over all vertex relabelings.
inline unsigned canonical_mask(int n, unsigned mask) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto edge_index = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  };
  unsigned best = 0;
  do {
    unsigned relabeled = 0;
    int k = 0;
    for (int col = 1; col < n; ++col)
      for (int row = 0; row < col; ++row, ++k)
        if (mask >> k & 1u) relabeled |= 1u << edge_index(perm[row], perm[col]);
    best = std::max(best, relabeled);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::pair<int, int>> mask_edges(int n, unsigned mask) {
  std::vector<std::pair<int, int>> edges;
  int k = 0;
  for (int col = 1; col < n; ++col)
    for (int row = 0; row < col; ++row, ++k)
      if (mask >> k & 1u) edges.emplace_back(row, col);
  return edges;
}

/// All connected graphs on exactly n vertices up to isomorphism, as canonical
/// edge masks in increasing order.
inline std::vector<unsigned> connected_graph_masks(int n) {
  std::set<unsigned> canon;
  unsigned total = n < 2 ? 1u : 1u << (n * (n - 1) / 2);
  for (unsigned mask = 0; mask < total; ++mask)
    if (mask_connected(n, mask)) canon.insert(canonical_mask(n, mask));
  return {canon.begin(), canon.end()};
}

// ---------------------------------------------------------------------------
// numeric test utilities

// Eigenvalues of a symmetric double matrix (plain cyclic Jacobi), for PSD
// checks on oracle outputs.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  std::size_t n = a.size();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a[i][j] * a[i][j];
    if (off < 1e-24) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p][q];
        if (apq == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double eval_double(const IntPoly& p, double x) {
  double acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(static_cast<std::size_t>(i)).get_d();
  return acc;
}

// Estimated distance from x to the nearest root of p (one Newton step).
inline double newton_dist(const IntPoly& p, double x) {
  if (p.degree() < 1) return 1e300;
  double v = eval_double(p, x);
  double dv = eval_double(pst::derivative(p), x);
  return std::abs(v) / (std::abs(dv) + 1e-300);
}

// Whether the root of the square-free polynomial F nearest to x is also a
// root of A: decided by comparing Newton distances of the exact split
// F = gcd(F, A) * rest, so no absolute tolerance enters.
inline bool cluster_is_root_of(const IntPoly& F, const IntPoly& A, double x) {
  IntPoly shared = pst::poly_gcd(F, A);
  if (shared.degree() == 0) return false;
  IntPoly rest = pst::exact_div(F, shared);
  if (rest.degree() == 0) return true;
  return newton_dist(shared, x) < newton_dist(rest, x);
}

// Multiplicity in P of the root of F nearest x, via the derivative-gcd chain.
inline int cluster_mult(const IntPoly& F, const IntPoly& P, double x) {
  int e = 0;
  IntPoly a = P;
  while (a.degree() > 0 && cluster_is_root_of(F, a, x)) {
    ++e;
    a = pst::poly_gcd(a, pst::derivative(a));
  }
  return e;
}

// Pole multiplicity of phi_a/phi at the eigenvalue nearest x, computed from
// exact polynomial data; the numeric value only selects which exact root.
inline int pole_mult_at_cluster(const IntPoly& phi, const IntPoly& phi_a, double x) {
  IntPoly F = pst::exact_div(phi, pst::poly_gcd(phi, pst::derivative(phi)));
  int mp = cluster_mult(F, phi, x);
  int ma = cluster_mult(F, phi_a, x);
  return mp > ma ? mp - ma : 0;
}

}  // namespace testutil
