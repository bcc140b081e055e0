#pragma once

#include <bit>
#include <span>
#include <string>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/error.hpp"
#include "lrw/graph.hpp"

namespace lrw {

/// Dense matrix over GF(2); every row is a bit-vector of the same length.
class GF2Matrix {
 public:
  GF2Matrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows), VertexSet(cols)) {}

  explicit GF2Matrix(const std::vector<std::vector<int>>& entries) {
    cols_ = entries.empty() ? 0 : static_cast<int>(entries.front().size());
    rows_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (static_cast<int>(entries[i].size()) != cols_)
        throw Error("ragged matrix: row " + std::to_string(i) + " has " + std::to_string(entries[i].size()) +
                    " entries, expected " + std::to_string(cols_));
      VertexSet r(cols_);
      for (int j = 0; j < cols_; ++j) {
        if (entries[i][j] != 0 && entries[i][j] != 1)
          throw Error("matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not 0/1");
        if (entries[i][j]) r.set(j);
      }
      rows_.push_back(std::move(r));
    }
  }

  static GF2Matrix from_rows(int cols, std::vector<VertexSet> rows) {
    GF2Matrix m(0, cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].universe() != cols) throw Error("ragged matrix: row " + std::to_string(i) + " has wrong width");
    m.rows_ = std::move(rows);
    return m;
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  bool get(int i, int j) const { return rows_[i].test(j); }
  void set(int i, int j, bool value) {
    if (value)
      rows_[i].set(j);
    else
      rows_[i].reset(j);
  }
  const std::vector<VertexSet>& row_sets() const { return rows_; }

 private:
  int cols_ = 0;
  std::vector<VertexSet> rows_;
};

/// Row rank over GF(2) by Gaussian elimination on word-packed rows.
inline int gf2_rank(std::vector<VertexSet> rows) {
  int rank = 0;
  const std::size_t m = rows.size();
  if (m == 0) return 0;
  const int cols = rows.front().universe();
  std::size_t pivot_row = 0;
  for (int c = 0; c < cols && pivot_row < m; ++c) {
    const std::size_t wi = static_cast<std::size_t>(c / VertexSet::kWordBits);
    const VertexSet::Word bit = VertexSet::Word{1} << (c % VertexSet::kWordBits);
    std::size_t sel = m;
    for (std::size_t i = pivot_row; i < m; ++i)
      if (rows[i].words()[wi] & bit) {
        sel = i;
        break;
      }
    if (sel == m) continue;
    std::swap(rows[pivot_row], rows[sel]);
    for (std::size_t i = pivot_row + 1; i < m; ++i)
      if (rows[i].words()[wi] & bit) rows[i] ^= rows[pivot_row];
    ++pivot_row;
    ++rank;
  }
  return rank;
}

inline int gf2_rank(const GF2Matrix& m) { return gf2_rank(m.row_sets()); }

/// Rank of a small matrix whose rows fit in one machine word.
inline int gf2_rank_words(std::span<const Mask> input) {
  // basis[b] holds a reduced row whose lowest set bit is b
  Mask basis[64] = {};
  int rank = 0;
  for (Mask r : input) {
    while (r != 0) {
      const int b = std::countr_zero(r);
      if (basis[b] == 0) {
        basis[b] = r;
        ++rank;
        break;
      }
      r ^= basis[b];
    }
  }
  return rank;
}

/// Rank of A_G[X, V(G) \ X]; zero when X is empty or everything.
inline int cutrank(const Graph& g, const VertexSet& x) {
  const VertexSet rest = x.complement();
  if (x.none() || rest.none()) return 0;
  std::vector<VertexSet> rows;
  rows.reserve(static_cast<std::size_t>(x.count()));
  x.for_each([&](int v) {
    VertexSet r = g.row(v) & rest;
    if (r.any()) rows.push_back(std::move(r));
  });
  return gf2_rank(std::move(rows));
}

inline int cutrank(const Graph& g, const std::vector<int>& x) {
  return cutrank(g, VertexSet(g.n(), std::span<const int>(x)));
}

/// Row masks of a graph with n <= 64, for exhaustive subset sweeps.
inline std::vector<Mask> adjacency_masks(const Graph& g) {
  if (g.n() > 64) throw CapacityError("mask-based routines need at most 64 vertices");
  std::vector<Mask> rows(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) rows[v] = mask_of(g.row(v));
  return rows;
}

inline int cutrank_mask(std::span<const Mask> adj, Mask x, Mask all) {
  const Mask rest = all & ~x;
  if (x == 0 || rest == 0) return 0;
  Mask rows[64];
  int k = 0;
  for (Mask m = x; m != 0; m &= m - 1) {
    const Mask r = adj[std::countr_zero(m)] & rest;
    if (r != 0) rows[k++] = r;
  }
  return gf2_rank_words(std::span<const Mask>(rows, static_cast<std::size_t>(k)));
}

}  // namespace lrw
