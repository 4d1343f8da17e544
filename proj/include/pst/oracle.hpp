// Floating-point spectral toolkit used only to cross-validate exact verdicts:
// cyclic Jacobi eigendecomposition, unitary evolution, fidelity, mixing
// matrices and certificate verification.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pst/decider.hpp"
#include "pst/matrix.hpp"

namespace pst {

struct SpectralDecomp {
  std::vector<double> values;               // ascending
  std::vector<std::vector<double>> vectors; // vectors[r] is the unit eigenvector of values[r]
  std::vector<std::vector<int>> clusters;   // indices grouped into distinct-eigenvalue classes
};

struct MixingReport {
  double t = 0.0;
  std::vector<std::vector<double>> matrix;
};

namespace detail {

inline std::vector<std::vector<double>> to_double_matrix(const IntSymMatrix& m) {
  std::vector<std::vector<double>> a(static_cast<std::size_t>(m.order()),
                                     std::vector<double>(static_cast<std::size_t>(m.order())));
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j).get_d();
  return a;
}

inline double offdiag_frob(const std::vector<std::vector<double>>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 * ||M||_F; deterministic sweep order, hard iteration cap.
inline SpectralDecomp eig_sym(const IntSymMatrix& m) {
  const int n = m.order();
  auto a = detail::to_double_matrix(m);
  std::vector<std::vector<double>> v(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;

  double frob = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
  frob = std::sqrt(frob);
  const double target = 1e-12 * frob;

  if (frob > 0) {
    bool converged = detail::offdiag_frob(a) <= target;
    int sweeps = 0;
    while (!converged) {
      if (++sweeps > 100) throw std::logic_error("eig_sym: Jacobi iteration did not converge");
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          double apq = a[p][q];
          if (apq == 0.0) continue;
          double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
          double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          double c = 1.0 / std::sqrt(t * t + 1.0);
          double s = t * c;
          for (int k = 0; k < n; ++k) {
            double akp = a[k][p], akq = a[k][q];
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
          }
          for (int k = 0; k < n; ++k) {
            double apk = a[p][k], aqk = a[q][k];
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
          }
          for (int k = 0; k < n; ++k) {
            double vkp = v[k][p], vkq = v[k][q];
            v[k][p] = c * vkp - s * vkq;
            v[k][q] = s * vkp + c * vkq;
          }
        }
      }
      converged = detail::offdiag_frob(a) <= target;
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](int x, int y) { return a[x][x] < a[y][y]; });

  SpectralDecomp d;
  d.values.reserve(static_cast<std::size_t>(n));
  d.vectors.reserve(static_cast<std::size_t>(n));
  for (int idx : order) {
    d.values.push_back(a[idx][idx]);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)][idx];
    d.vectors.push_back(std::move(col));
  }

  double max_abs = std::max(1.0, m.max_abs_entry().get_d());
  const double cluster_tol = 1e-8 * max_abs;
  std::vector<int> cur{0};
  for (int r = 1; r < n; ++r) {
    if (d.values[static_cast<std::size_t>(r)] - d.values[static_cast<std::size_t>(r - 1)] <= cluster_tol) {
      cur.push_back(r);
    } else {
      d.clusters.push_back(cur);
      cur = {r};
    }
  }
  d.clusters.push_back(cur);
  return d;
}

/// (a, b) entry of exp(itM) from a precomputed decomposition.
inline std::complex<double> evolution_entry(const SpectralDecomp& d, double t, int a, int b) {
  std::complex<double> acc(0, 0);
  for (std::size_t r = 0; r < d.values.size(); ++r) {
    double w = d.vectors[r][static_cast<std::size_t>(a)] * d.vectors[r][static_cast<std::size_t>(b)];
    acc += std::polar(w, t * d.values[r]);
  }
  return acc;
}

inline double fidelity(const SpectralDecomp& d, double t, int a, int b) {
  return std::abs(evolution_entry(d, t, a, b));
}

/// |exp(itM)_{a,b}|, in [0, 1] up to roundoff.
inline double fidelity(const IntSymMatrix& m, double t, int a, int b) {
  if (t < 0) throw std::invalid_argument("fidelity: time must be nonnegative");
  return fidelity(eig_sym(m), t, a, b);
}

/// N(t) = exp(itM) o exp(-itM): entrywise squared magnitudes of exp(itM).
inline MixingReport mixing_matrix(const IntSymMatrix& m, double t) {
  if (t < 0) throw std::invalid_argument("mixing_matrix: time must be nonnegative");
  SpectralDecomp d = eig_sym(m);
  const int n = m.order();
  MixingReport rep;
  rep.t = t;
  rep.matrix.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double f = std::abs(evolution_entry(d, t, i, j));
      rep.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f * f;
    }
  return rep;
}

/// max-norm test of N(t) against the flat distribution J/n.
inline bool uniform_mixing_at(const IntSymMatrix& m, double t, double tol) {
  if (tol <= 0) throw std::invalid_argument("uniform_mixing_at: tolerance must be positive");
  MixingReport rep = mixing_matrix(m, t);
  double target = 1.0 / m.order();
  for (const auto& row : rep.matrix)
    for (double x : row)
      if (std::abs(x - target) > tol) return false;
  return true;
}

/// Average mixing matrix sum_r E_r o E_r over eigenvalue clusters; rational in
/// exact arithmetic, here numeric: symmetric, doubly stochastic, PSD.
inline std::vector<std::vector<double>> average_mixing(const IntSymMatrix& m) {
  SpectralDecomp d = eig_sym(m);
  const std::size_t n = static_cast<std::size_t>(m.order());
  std::vector<std::vector<double>> nhat(n, std::vector<double>(n, 0.0));
  for (const auto& cluster : d.clusters) {
    std::vector<std::vector<double>> proj(n, std::vector<double>(n, 0.0));
    for (int r : cluster)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          proj[i][j] += d.vectors[static_cast<std::size_t>(r)][i] * d.vectors[static_cast<std::size_t>(r)][j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) nhat[i][j] += proj[i][j] * proj[i][j];
  }
  return nhat;
}

/// Grid argmax of the fidelity over {step, 2*step, ..., <= t_max}.
inline std::pair<double, double> scan_fidelity(const IntSymMatrix& m, int a, int b, double t_max,
                                               double step) {
  if (t_max <= 0 || step <= 0) throw std::invalid_argument("scan_fidelity: bad grid");
  SpectralDecomp d = eig_sym(m);
  long kmax = static_cast<long>(t_max / step * (1 + 1e-12));
  if (kmax < 1) return {0.0, 0.0};
  double best_t = step, best_f = -1.0;
  for (long k = 1; k <= kmax; ++k) {
    double t = static_cast<double>(k) * step;
    double f = fidelity(d, t, a, b);
    if (f > best_f) {
      best_f = f;
      best_t = t;
    }
  }
  return {best_t, best_f};
}

/// YES verdicts must reach fidelity 1 - 1e-9 at the emitted time; NO verdicts
/// must carry a certificate that re-validates exactly.
inline bool verify_certificate(const IntSymMatrix& m, const PSTVerdict& v) {
  if (v.yes) {
    if (!v.time) return false;
    return fidelity(m, v.time->numeric(), v.pair.first, v.pair.second) >= 1.0 - 1e-9;
  }
  if (!v.failure) return false;
  try {
    return recheck_failure(m, v.pair, *v.failure);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace pst
