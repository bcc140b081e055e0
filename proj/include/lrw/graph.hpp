#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/error.hpp"

namespace lrw {

using Edge = std::pair<int, int>;

inline constexpr int kUnreachable = std::numeric_limits<int>::max();
inline constexpr int kMaxVertices = 1 << 16;

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency is stored as one bit-row per vertex. Labels are an opaque side
/// table (one string per vertex, typically compact JSON) that algorithms never
/// consult.
class Graph {
 public:
  Graph(int n, const std::vector<Edge>& edges, std::optional<std::vector<std::string>> labels = std::nullopt)
      : n_(n), labels_(std::move(labels)) {
    if (n <= 0) throw GraphError("graph must have at least one vertex");
    if (n > kMaxVertices) throw GraphError("graph exceeds " + std::to_string(kMaxVertices) + " vertices");
    if (labels_ && static_cast<int>(labels_->size()) != n)
      throw GraphError("labels must cover all " + std::to_string(n) + " vertices");
    rows_.assign(static_cast<std::size_t>(n), VertexSet(n));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw GraphError("edge " + std::to_string(i) + " (" + std::to_string(u) + "," + std::to_string(v) +
                         ") has a vertex out of range [0," + std::to_string(n) + ")");
      if (u == v) throw GraphError("edge " + std::to_string(i) + " is a self-loop at vertex " + std::to_string(u));
      rows_[u].set(v);
      rows_[v].set(u);
    }
  }

  /// Builds directly from symmetric bit-rows (used by derived constructions).
  static Graph from_rows(std::vector<VertexSet> rows) {
    Graph g;
    g.n_ = static_cast<int>(rows.size());
    if (g.n_ <= 0) throw GraphError("graph must have at least one vertex");
    g.rows_ = std::move(rows);
    return g;
  }

  int n() const { return n_; }
  bool adjacent(int u, int v) const { return rows_[u].test(v); }
  const VertexSet& row(int v) const { return rows_[v]; }
  int degree(int v) const { return rows_[v].count(); }

  std::vector<int> neighbors(int v) const { return rows_[v].to_vector(); }

  std::int64_t edge_count() const {
    std::int64_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
  }

  /// Edges (u,v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
      rows_[u].for_each([&](int v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  VertexSet all() const { return VertexSet::full(n_); }
  VertexSet empty_set() const { return VertexSet(n_); }

  const std::optional<std::vector<std::string>>& labels() const { return labels_; }
  Graph with_labels(std::vector<std::string> labels) const {
    if (static_cast<int>(labels.size()) != n_) throw GraphError("labels must cover all vertices");
    Graph g(*this);
    g.labels_ = std::move(labels);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  Graph() = default;

  int n_ = 0;
  std::vector<VertexSet> rows_;
  std::optional<std::vector<std::string>> labels_;
};

inline Graph build_graph(int n, const std::vector<Edge>& edges,
                         std::optional<std::vector<std::string>> labels = std::nullopt) {
  return Graph(n, edges, std::move(labels));
}

struct InducedSubgraph {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for vertices outside X
  std::vector<int> new_to_old;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x) {
  if (x.none()) throw GraphError("induced subgraph on an empty vertex set");
  std::vector<int> new_to_old = x.to_vector();
  std::vector<int> old_to_new(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < new_to_old.size(); ++i) old_to_new[new_to_old[i]] = static_cast<int>(i);
  const int k = static_cast<int>(new_to_old.size());
  std::vector<VertexSet> rows(static_cast<std::size_t>(k), VertexSet(k));
  for (int i = 0; i < k; ++i) {
    (g.row(new_to_old[i]) & x).for_each([&](int w) { rows[i].set(old_to_new[w]); });
  }
  Graph sub = Graph::from_rows(std::move(rows));
  if (g.labels()) {
    std::vector<std::string> labels;
    labels.reserve(new_to_old.size());
    for (int v : new_to_old) labels.push_back((*g.labels())[v]);
    sub = sub.with_labels(std::move(labels));
  }
  return {std::move(sub), std::move(old_to_new), std::move(new_to_old)};
}

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& x) {
  return induced_subgraph(g, VertexSet(g.n(), std::span<const int>(x)));
}

/// Distances from source inside the subgraph induced by `within` (which must contain source).
inline std::vector<int> bfs_distances(const Graph& g, int source, const VertexSet& within) {
  std::vector<int> dist(static_cast<std::size_t>(g.n()), kUnreachable);
  dist[source] = 0;
  VertexSet frontier(g.n());
  frontier.set(source);
  VertexSet unseen = within;
  unseen.reset(source);
  for (int d = 1; frontier.any(); ++d) {
    VertexSet next(g.n());
    frontier.for_each([&](int u) { next |= g.row(u); });
    next &= unseen;
    unseen.subtract(next);
    next.for_each([&](int v) { dist[v] = d; });
    frontier = std::move(next);
  }
  return dist;
}

inline std::vector<int> bfs_distances(const Graph& g, int source) { return bfs_distances(g, source, g.all()); }

/// Full distance matrix; intended for desk-scale verification.
inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  std::vector<std::vector<int>> d;
  d.reserve(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) d.push_back(bfs_distances(g, v));
  return d;
}

/// Ball of radius r around v (including v).
inline VertexSet ball(const Graph& g, int v, int r, const VertexSet& within) {
  VertexSet seen(g.n());
  seen.set(v);
  VertexSet frontier = seen;
  for (int d = 0; d < r && frontier.any(); ++d) {
    VertexSet next(g.n());
    frontier.for_each([&](int u) { next |= g.row(u); });
    next &= within;
    next.subtract(seen);
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

inline Graph power(const Graph& g, int r) {
  if (r < 1) throw GraphError("power radius must be >= 1");
  std::vector<VertexSet> rows;
  rows.reserve(static_cast<std::size_t>(g.n()));
  const VertexSet all = g.all();
  for (int v = 0; v < g.n(); ++v) {
    VertexSet b = ball(g, v, r, all);
    b.reset(v);
    rows.push_back(std::move(b));
  }
  Graph out = Graph::from_rows(std::move(rows));
  return g.labels() ? out.with_labels(*g.labels()) : out;
}

inline Graph complement(const Graph& g) {
  std::vector<VertexSet> rows;
  rows.reserve(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) {
    VertexSet r = g.row(v).complement();
    r.reset(v);
    rows.push_back(std::move(r));
  }
  Graph out = Graph::from_rows(std::move(rows));
  return g.labels() ? out.with_labels(*g.labels()) : out;
}

/// Connected components of G[within], each as a vertex set, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& within) {
  std::vector<VertexSet> out;
  VertexSet left = within;
  for (int s = left.first(); s != -1; s = left.first()) {
    VertexSet comp(g.n());
    comp.set(s);
    VertexSet frontier = comp;
    while (frontier.any()) {
      VertexSet next(g.n());
      frontier.for_each([&](int u) { next |= g.row(u); });
      next &= within;
      next.subtract(comp);
      comp |= next;
      frontier = std::move(next);
    }
    left.subtract(comp);
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<VertexSet> components(const Graph& g) { return components(g, g.all()); }

inline bool is_connected(const Graph& g) { return components(g).size() == 1; }

/// Degeneracy via repeated minimum-degree peeling.
inline int degeneracy(const Graph& g) {
  VertexSet alive = g.all();
  int best = 0;
  for (int step = 0; step < g.n(); ++step) {
    int pick = -1;
    int pick_deg = kUnreachable;
    alive.for_each([&](int v) {
      int d = (g.row(v) & alive).count();
      if (d < pick_deg) {
        pick_deg = d;
        pick = v;
      }
    });
    best = std::max(best, pick_deg);
    alive.reset(pick);
  }
  return best;
}

}  // namespace lrw
