// Symmetric integer matrices over an index set, graph constructors and the
// Gershgorin spectral bound. Matrices are immutable once constructed.

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pst/numeric.hpp"

namespace pst {

/// Strictly increasing set of indices in [0, n); used to delete rows/columns.
struct VertexSet {
  std::vector<int> members;

  VertexSet() = default;
  explicit VertexSet(std::vector<int> m) : members(std::move(m)) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i] < 0) throw std::invalid_argument("VertexSet: negative index");
      if (i > 0 && members[i] <= members[i - 1])
        throw std::invalid_argument("VertexSet: indices must be strictly increasing");
    }
  }
  std::size_t size() const { return members.size(); }
  bool contains(int v) const {
    for (int m : members) {
      if (m == v) return true;
      if (m > v) break;
    }
    return false;
  }
};

class IntSymMatrix {
 public:
  IntSymMatrix(int n, std::vector<Int> entries, std::vector<std::string> labels = {})
      : n_(n), e_(std::move(entries)), labels_(std::move(labels)) {
    if (n_ < 1) throw std::invalid_argument("IntSymMatrix: order must be at least 1");
    if (e_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
      throw std::invalid_argument("IntSymMatrix: entry count does not match order");
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("IntSymMatrix: label count does not match order");
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (at(i, j) != at(j, i))
          throw std::invalid_argument("IntSymMatrix: not symmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
  }

  static IntSymMatrix from_rows(const std::vector<std::vector<Int>>& rows,
                                std::vector<std::string> labels = {}) {
    int n = static_cast<int>(rows.size());
    std::vector<Int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n)
        throw std::invalid_argument("IntSymMatrix: ragged rows");
      for (const Int& v : r) flat.push_back(v);
    }
    return IntSymMatrix(n, std::move(flat), std::move(labels));
  }

  int order() const { return n_; }
  const Int& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(j)];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Principal submatrix on V minus T; |T| < n.
  IntSymMatrix deleted(const VertexSet& t) const {
    if (t.size() >= static_cast<std::size_t>(n_))
      throw std::invalid_argument("deleted: must keep at least one index");
    std::vector<int> keep;
    keep.reserve(static_cast<std::size_t>(n_) - t.size());
    for (int v = 0; v < n_; ++v)
      if (!t.contains(v)) keep.push_back(v);
    if (keep.size() + t.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("deleted: index out of range");
    std::vector<Int> sub;
    sub.reserve(keep.size() * keep.size());
    for (int i : keep)
      for (int j : keep) sub.push_back(at(i, j));
    return IntSymMatrix(static_cast<int>(keep.size()), std::move(sub));
  }

  Int max_abs_entry() const {
    Int m(0);
    for (const Int& v : e_)
      if (cmp(abs(v), m) > 0) m = abs(v);
    return m;
  }

  friend bool operator==(const IntSymMatrix& a, const IntSymMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

 private:
  int n_;
  std::vector<Int> e_;
  std::vector<std::string> labels_;
};

namespace detail {

inline void check_edges(const std::vector<std::pair<int, int>>& edges, int n) {
  if (n < 1) throw std::invalid_argument("graph order must be at least 1");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ")");
  }
}

}  // namespace detail

/// 0/1 adjacency matrix of the simple graph with the given edges.
inline IntSymMatrix build_adjacency(const std::vector<std::pair<int, int>>& edges, int n) {
  detail::check_edges(edges, n);
  std::vector<Int> e(static_cast<std::size_t>(n) * n, Int(0));
  for (auto [u, v] : edges) {
    e[static_cast<std::size_t>(u) * n + v] = 1;
    e[static_cast<std::size_t>(v) * n + u] = 1;
  }
  return IntSymMatrix(n, std::move(e));
}

/// Laplacian D - A of the simple graph with the given edges; rows sum to 0.
inline IntSymMatrix build_laplacian(const std::vector<std::pair<int, int>>& edges, int n) {
  detail::check_edges(edges, n);
  std::vector<Int> e(static_cast<std::size_t>(n) * n, Int(0));
  for (auto [u, v] : edges) {
    e[static_cast<std::size_t>(u) * n + v] = -1;
    e[static_cast<std::size_t>(v) * n + u] = -1;
    e[static_cast<std::size_t>(u) * n + u] += 1;
    e[static_cast<std::size_t>(v) * n + v] += 1;
  }
  return IntSymMatrix(n, std::move(e));
}

/// Gershgorin bound R = max_i sum_j |M_ij|; every eigenvalue lies in [-R, R].
inline Int spectral_bound(const IntSymMatrix& m) {
  Int best(0);
  for (int i = 0; i < m.order(); ++i) {
    Int row(0);
    for (int j = 0; j < m.order(); ++j) row += abs(m.at(i, j));
    if (cmp(row, best) > 0) best = row;
  }
  return best;
}

}  // namespace pst
