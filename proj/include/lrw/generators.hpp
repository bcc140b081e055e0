#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lrw/coloring.hpp"
#include "lrw/error.hpp"
#include "lrw/graph.hpp"
#include "lrw/random.hpp"

namespace lrw {

// ---------------------------------------------------------------- utility families

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph edgeless_graph(int n) { return Graph(n, {}); }

inline Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

/// a x b grid, vertex (i, j) -> i * b + j.
inline Graph grid_graph(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      if (i + 1 < a) e.emplace_back(i * b + j, (i + 1) * b + j);
      if (j + 1 < b) e.emplace_back(i * b + j, i * b + j + 1);
    }
  return Graph(a * b, e);
}

/// d-degenerate graph: vertex v picks min(d, v) distinct earlier neighbors at random.
inline Graph random_degenerate(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) {
    std::vector<int> earlier(static_cast<std::size_t>(v));
    for (int u = 0; u < v; ++u) earlier[u] = u;
    const int take = std::min(d, v);
    for (int i = 0; i < take; ++i) {
      const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v - i)));
      std::swap(earlier[i], earlier[j]);
      e.emplace_back(earlier[i], v);
    }
  }
  return Graph(n, e);
}

inline Graph random_gnp(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng, p)) e.emplace_back(u, v);
  return Graph(n, e);
}

/// Random cograph built from its grammar: recursive split, each node union or join.
inline Graph random_cograph(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  std::vector<std::pair<int, int>> work{{0, n}};  // half-open vertex ranges
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    if (hi - lo <= 1) continue;
    const int mid = lo + 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo - 1)));
    if (rng() & 1U)
      for (int u = lo; u < mid; ++u)
        for (int v = mid; v < hi; ++v) e.emplace_back(u, v);
    work.emplace_back(lo, mid);
    work.emplace_back(mid, hi);
  }
  return Graph(n, e);
}

// ---------------------------------------------------------------- H_{n,m} family

struct HLabel {
  int row = 1;  // 1..n
  int col = 1;  // 1..m
  friend bool operator==(const HLabel&, const HLabel&) = default;
};

struct HGraph {
  Graph graph;
  std::vector<HLabel> labels;
  int rows = 1;
  int cols = 1;
  int id(int row, int col) const { return (row - 1) * cols + (col - 1); }
};

inline std::string label_json(const HLabel& l) {
  return "{\"row\":" + std::to_string(l.row) + ",\"col\":" + std::to_string(l.col) + "}";
}

/// H_{n,m}: rows V_1..V_n; v_{i,j} ~ v_{i+1,j'} iff j' <= j. With `tilde`, every row is a clique.
inline HGraph h_family(int n, int m, bool tilde) {
  if (n < 1 || m < 1) throw GraphError("H_{n,m} needs n, m >= 1");
  auto id = [m](int i, int j) { return (i - 1) * m + (j - 1); };
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j <= m; ++j)
      for (int jp = 1; jp <= j; ++jp) e.emplace_back(id(i, j), id(i + 1, jp));
  if (tilde)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= m; ++j)
        for (int jp = j + 1; jp <= m; ++jp) e.emplace_back(id(i, j), id(i, jp));
  std::vector<HLabel> labels;
  std::vector<std::string> text;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      labels.push_back({i, j});
      text.push_back(label_json(labels.back()));
    }
  return {Graph(n * m, e, std::move(text)), std::move(labels), n, m};
}

inline HGraph h_graph(int n, int m) { return h_family(n, m, false); }
inline HGraph h_tilde(int n, int m) { return h_family(n, m, true); }

/// Row i gets color (i mod (p+1)) + 1; palette p + 1.
inline Coloring row_coloring(int n, int m, int p) {
  if (p < 1) throw Error("row_coloring needs p >= 1");
  std::vector<int> colors;
  colors.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) colors.push_back(i % (p + 1) + 1);
  return Coloring(p + 1, std::move(colors));
}

// ---------------------------------------------------------------- twisted chains

enum class ChainVariant { bare, interval, permutation };

inline const char* to_string(ChainVariant v) {
  switch (v) {
    case ChainVariant::bare:
      return "bare";
    case ChainVariant::interval:
      return "interval";
    case ChainVariant::permutation:
      return "permutation";
  }
  return "?";
}

struct TwistedChainLabel {
  char role = 'A';  // 'A', 'B' or 'C'
  int k = 0;        // A/B: 1..n^2
  int i = 0;        // C: 1..n
  int j = 0;
  friend bool operator==(const TwistedChainLabel&, const TwistedChainLabel&) = default;
};

inline std::string label_json(const TwistedChainLabel& l) {
  if (l.role == 'C') return "{\"role\":\"C\",\"i\":" + std::to_string(l.i) + ",\"j\":" + std::to_string(l.j) + "}";
  return std::string("{\"role\":\"") + l.role + "\",\"k\":" + std::to_string(l.k) + "}";
}

/// Vertex ids of a twisted chain of order n: A block, then B, then C row-major.
struct ChainLayout {
  int order = 1;
  int a(int k) const { return k - 1; }
  int b(int k) const { return order * order + k - 1; }
  int c(int i, int j) const { return 2 * order * order + (i - 1) * order + (j - 1); }
  int size() const { return 3 * order * order; }
  /// k = n(x-1) + y
  std::pair<int, int> split(int k) const { return {(k - 1) / order + 1, (k - 1) % order + 1}; }
  int scalar(int x, int y) const { return order * (x - 1) + y; }
};

/// v_k ~ z_(i,j) with k = n(x-1)+y iff x < i, or x = i and y <= j.
inline bool chain_a_adjacent(int n, int k, int i, int j) {
  const int x = (k - 1) / n + 1;
  const int y = (k - 1) % n + 1;
  return x < i || (x == i && y <= j);
}

/// w_k ~ z_(i,j) with k = n(x-1)+y iff x < j, or x = j and y <= i.
inline bool chain_b_adjacent(int n, int k, int i, int j) {
  const int x = (k - 1) / n + 1;
  const int y = (k - 1) % n + 1;
  return x < j || (x == j && y <= i);
}

/// Scalar forms of the same rules.
inline bool chain_a_adjacent_scalar(int n, int k, int i, int j) { return k <= n * (i - 1) + j; }
inline bool chain_b_adjacent_scalar(int n, int k, int i, int j) { return k <= n * (j - 1) + i; }

/// Intra-C edges of the permutation variant: z-segments cross.
inline bool chain_c_crossing(int n, int i1, int j1, int i2, int j2) {
  const long s1 = n * (i1 - 1) + j1, s2 = n * (i2 - 1) + j2;
  const long t1 = n * (j1 - 1) + i1, t2 = n * (j2 - 1) + i2;
  return (s1 - s2) * (t1 - t2) > 0;
}

struct TwistedChain {
  Graph graph;
  std::vector<TwistedChainLabel> labels;
  ChainLayout layout;
  int order() const { return layout.order; }
};

inline std::vector<TwistedChainLabel> chain_labels(int n) {
  std::vector<TwistedChainLabel> labels;
  labels.reserve(static_cast<std::size_t>(3 * n * n));
  for (int k = 1; k <= n * n; ++k) labels.push_back({'A', k, 0, 0});
  for (int k = 1; k <= n * n; ++k) labels.push_back({'B', k, 0, 0});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) labels.push_back({'C', 0, i, j});
  return labels;
}

inline TwistedChain twisted_chain(int n, ChainVariant variant = ChainVariant::bare) {
  if (n < 1) throw GraphError("twisted chain needs order >= 1");
  const ChainLayout L{n};
  const int nn = n * n;
  std::vector<VertexSet> rows(static_cast<std::size_t>(L.size()), VertexSet(L.size()));
  auto link = [&](int u, int v) {
    rows[u].set(v);
    rows[v].set(u);
  };
  for (int k = 1; k <= nn; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (chain_a_adjacent(n, k, i, j)) link(L.a(k), L.c(i, j));
        if (chain_b_adjacent(n, k, i, j)) link(L.b(k), L.c(i, j));
      }
  if (variant == ChainVariant::interval) {
    for (int k = 1; k <= nn; ++k)
      for (int k2 = k + 1; k2 <= nn; ++k2) {
        link(L.a(k), L.a(k2));
        link(L.b(k), L.b(k2));
      }
    for (int s = 0; s < nn; ++s)
      for (int t = s + 1; t < nn; ++t) link(2 * nn + s, 2 * nn + t);
  } else if (variant == ChainVariant::permutation) {
    for (int s = 0; s < nn; ++s)
      for (int t = s + 1; t < nn; ++t)
        if (chain_c_crossing(n, s / n + 1, s % n + 1, t / n + 1, t % n + 1)) link(2 * nn + s, 2 * nn + t);
  }
  auto labels = chain_labels(n);
  std::vector<std::string> text;
  text.reserve(labels.size());
  for (const auto& l : labels) text.push_back(label_json(l));
  return {Graph::from_rows(std::move(rows)).with_labels(std::move(text)), std::move(labels), L};
}

/// Index reversal v_k -> v_{n^2+1-k}, w_k -> w_{n^2+1-k}, z_(x,y) -> z_(n+1-x, n+1-y), as a vertex map.
inline std::vector<int> chain_reversal(int n) {
  const ChainLayout L{n};
  const int nn = n * n;
  std::vector<int> map(static_cast<std::size_t>(L.size()));
  for (int k = 1; k <= nn; ++k) {
    map[L.a(k)] = L.a(nn + 1 - k);
    map[L.b(k)] = L.b(nn + 1 - k);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) map[L.c(i, j)] = L.c(n + 1 - i, n + 1 - j);
  return map;
}

// ---------------------------------------------------------------- intersection models

struct IntervalModel {
  int order = 1;
  long scale = 0;  // M
  std::vector<std::pair<long, long>> intervals;  // per vertex, canonical chain layout
  std::vector<int> relabel;  // model vertex -> twisted-chain vertex
};

struct SegmentModel {
  int order = 1;
  long scale = 0;
  std::vector<std::pair<long, long>> segments;  // (x on the bottom line, x on the top line)
  std::vector<int> relabel;
};

/// v_i = [0,i], w_i = [M-i,M], z_(x,y) = [(x-1)n+y, M-(y-1)n-x] with M = 2n^2 + 1.
inline IntervalModel interval_model(int n) {
  if (n < 1) throw Error("interval model needs order >= 1");
  const ChainLayout L{n};
  const long nn = static_cast<long>(n) * n;
  IntervalModel m;
  m.order = n;
  m.scale = 2 * nn + 1;
  m.intervals.resize(static_cast<std::size_t>(L.size()));
  for (int i = 1; i <= nn; ++i) {
    m.intervals[L.a(i)] = {0, i};
    m.intervals[L.b(i)] = {m.scale - i, m.scale};
  }
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      m.intervals[L.c(x, y)] = {static_cast<long>(x - 1) * n + y, m.scale - static_cast<long>(y - 1) * n - x};
  m.relabel = chain_reversal(n);
  return m;
}

/// v_i: (i,0)-(i,1); w_i: (M-i,0)-(M-i,1); z_(x,y): ((x-1)n+y, 0)-(M-(y-1)n-x, 1) with M = 10n^2 + 1.
inline SegmentModel segment_model(int n) {
  if (n < 1) throw Error("segment model needs order >= 1");
  const ChainLayout L{n};
  const long nn = static_cast<long>(n) * n;
  SegmentModel m;
  m.order = n;
  m.scale = 10 * nn + 1;
  m.segments.resize(static_cast<std::size_t>(L.size()));
  for (int i = 1; i <= nn; ++i) {
    m.segments[L.a(i)] = {i, i};
    m.segments[L.b(i)] = {m.scale - i, m.scale - i};
  }
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      m.segments[L.c(x, y)] = {static_cast<long>(x - 1) * n + y, m.scale - static_cast<long>(y - 1) * n - x};
  m.relabel = chain_reversal(n);
  return m;
}

/// Closed intervals intersect iff they overlap or touch.
inline Graph intersection_graph(const std::vector<std::pair<long, long>>& intervals) {
  const int n = static_cast<int>(intervals.size());
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    if (intervals[u].first > intervals[u].second) throw Error("interval " + std::to_string(u) + " has lo > hi");
    for (int v = u + 1; v < n; ++v)
      if (std::max(intervals[u].first, intervals[v].first) <= std::min(intervals[u].second, intervals[v].second))
        e.emplace_back(u, v);
  }
  return Graph(n, e);
}

inline Graph intersection_graph(const IntervalModel& m) { return intersection_graph(m.intervals); }

/// Segments between two parallel lines meet iff their endpoint orders differ or they share an endpoint.
inline Graph segment_intersection_graph(const std::vector<std::pair<long, long>>& segments) {
  const int n = static_cast<int>(segments.size());
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const long db = segments[u].first - segments[v].first;
      const long dt = segments[u].second - segments[v].second;
      if ((db < 0 && dt >= 0) || (db > 0 && dt <= 0) || db == 0) e.emplace_back(u, v);
    }
  return Graph(n, e);
}

inline Graph intersection_graph(const SegmentModel& m) { return segment_intersection_graph(m.segments); }

/// True iff adjacency of `a` at (u,v) equals adjacency of `b` at (map[u], map[v]) for all pairs.
inline bool isomorphic_under(const Graph& a, const Graph& b, const std::vector<int>& map) {
  if (a.n() != b.n() || static_cast<int>(map.size()) != a.n()) return false;
  for (int u = 0; u < a.n(); ++u)
    for (int v = u + 1; v < a.n(); ++v)
      if (a.adjacent(u, v) != b.adjacent(map[u], map[v])) return false;
  return true;
}

// ---------------------------------------------------------------- map graphs and line graphs

struct FaceTrace {
  std::vector<std::vector<int>> faces;  // vertices incident to each face (sorted)
};

/// Traces the faces of a connected plane rotation system (per-vertex cyclic neighbor order).
inline FaceTrace trace_faces(const std::vector<std::vector<int>>& rotations) {
  const int n = static_cast<int>(rotations.size());
  if (n == 0) throw GraphError("rotation system is empty");
  std::map<std::pair<int, int>, int> index_at;  // (v, u) -> position of u in rotation of v
  std::size_t darts = 0;
  for (int v = 0; v < n; ++v)
    for (std::size_t i = 0; i < rotations[v].size(); ++i) {
      const int u = rotations[v][i];
      if (u < 0 || u >= n || u == v) throw GraphError("rotation of vertex " + std::to_string(v) + " names invalid neighbor");
      if (!index_at.emplace(std::make_pair(v, u), static_cast<int>(i)).second)
        throw GraphError("rotation of vertex " + std::to_string(v) + " repeats neighbor " + std::to_string(u));
      ++darts;
    }
  for (const auto& [key, pos] : index_at)
    if (!index_at.count({key.second, key.first}))
      throw GraphError("rotation system is not symmetric at edge " + std::to_string(key.first) + "-" +
                       std::to_string(key.second));
  std::vector<Edge> edges;
  for (const auto& [key, pos] : index_at)
    if (key.first < key.second) edges.push_back(key);
  if (!is_connected(Graph(n, edges))) throw GraphError("rotation system is not connected");

  FaceTrace out;
  if (darts == 0) {
    out.faces.push_back({0});
    return out;
  }
  std::map<std::pair<int, int>, bool> used;
  for (const auto& [dart, pos] : index_at) {
    if (used[dart]) continue;
    std::vector<int> verts;
    std::pair<int, int> d = dart;  // dart (u, v) travels from u to v
    std::size_t steps = 0;
    while (!used[d]) {
      used[d] = true;
      verts.push_back(d.first);
      const int u = d.first, v = d.second;
      const auto& rot = rotations[v];
      const int at = index_at.at({v, u});
      const int w = rot[(static_cast<std::size_t>(at) + 1) % rot.size()];
      d = {v, w};
      if (++steps > darts) throw GraphError("face tracing did not close");
    }
    if (d != dart) throw GraphError("face tracing failed to partition the darts");
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    out.faces.push_back(std::move(verts));
  }
  const long euler = static_cast<long>(n) - static_cast<long>(edges.size()) + static_cast<long>(out.faces.size());
  if (euler != 2) throw GraphError("rotation system is not planar (V - E + F = " + std::to_string(euler) + ")");
  return out;
}

/// Radial graph R (vertices, then faces; v ~ f iff v lies on f), squared, induced on the faces.
inline Graph radial_square_map_graph(const std::vector<std::vector<int>>& rotations) {
  const FaceTrace trace = trace_faces(rotations);
  const int n = static_cast<int>(rotations.size());
  const int f = static_cast<int>(trace.faces.size());
  std::vector<Edge> e;
  for (int i = 0; i < f; ++i)
    for (int v : trace.faces[i]) e.emplace_back(v, n + i);
  const Graph radial(n + f, e);
  const Graph sq = power(radial, 2);
  std::vector<int> face_vertices;
  for (int i = 0; i < f; ++i) face_vertices.push_back(n + i);
  return induced_subgraph(sq, face_vertices).graph;
}

/// 1-subdivision: original vertices keep their ids, edge e (in edges() order) becomes vertex n + e.
inline Graph subdivide(const Graph& g) {
  const auto edges = g.edges();
  std::vector<Edge> e;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int s = g.n() + static_cast<int>(i);
    e.emplace_back(edges[i].first, s);
    e.emplace_back(edges[i].second, s);
  }
  return Graph(g.n() + static_cast<int>(edges.size()), e);
}

/// Line graph read off the square of the 1-subdivision; vertex i is the i-th edge of g.
inline Graph line_graph_via_subdivision(const Graph& g) {
  const auto m = static_cast<int>(g.edge_count());
  if (m == 0) throw GraphError("line graph of an edgeless graph is empty");
  const Graph sq = power(subdivide(g), 2);
  std::vector<int> subdividing;
  for (int i = 0; i < m; ++i) subdividing.push_back(g.n() + i);
  return induced_subgraph(sq, subdividing).graph;
}

}  // namespace lrw
