#pragma once
// Slow, independent reference implementations used only by tests.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <lrw/lrw.hpp>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

/// Rank over GF(2) as log2 of the size of the row span, by enumerating all row combinations.
inline int span_rank(const Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::set<std::vector<int>> span;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << rows); ++pick) {
    std::vector<int> v(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
      if ((pick >> i) & 1U)
        for (std::size_t j = 0; j < cols; ++j) v[j] ^= m[i][j];
    span.insert(v);
  }
  int r = 0;
  while ((std::size_t{1} << r) < span.size()) ++r;
  return r;
}

inline Matrix cut_matrix(const lrw::Graph& g, const std::vector<int>& x) {
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (int v : x) in[v] = 1;
  Matrix m;
  for (int u : x) {
    std::vector<int> row;
    for (int v = 0; v < g.n(); ++v)
      if (!in[v]) row.push_back(g.adjacent(u, v) ? 1 : 0);
    m.push_back(row);
  }
  return m;
}

inline int cutrank(const lrw::Graph& g, const std::vector<int>& x) {
  if (x.empty() || static_cast<int>(x.size()) == g.n()) return 0;
  return span_rank(cut_matrix(g, x));
}

inline std::vector<int> bits(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1U) out.push_back(v);
  return out;
}

/// Graph on n vertices from an edge mask over the pairs (u < v) in lexicographic order.
inline lrw::Graph graph_from_code(int n, std::uint64_t code) {
  std::vector<lrw::Edge> e;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if ((code >> bit) & 1U) e.emplace_back(u, v);
  return lrw::Graph(n, e);
}

inline lrw::Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<lrw::Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return lrw::Graph(n, e);
}

// ---------------------------------------------------------------- distances

inline Matrix floyd(const lrw::Graph& g) {
  const int n = g.n();
  const int inf = 1 << 20;
  Matrix d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), inf));
  for (int u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (int v = 0; v < n; ++v)
      if (g.adjacent(u, v)) d[u][v] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline bool hitter(const lrw::Graph& g, const std::vector<int>& x, const std::vector<int>& xp, int r) {
  const auto d = floyd(g);
  for (int u : x)
    for (int v : x) {
      if (u >= v || d[u][v] <= 1 || d[u][v] > r) continue;
      bool hit = false;
      for (int z : xp)
        if (z != u && z != v && d[u][z] + d[z][v] == d[u][v]) hit = true;
      if (!hit) return false;
    }
  return true;
}

inline bool closure(const lrw::Graph& g, const std::vector<int>& x, const std::vector<int>& xp, int r) {
  const auto d = floyd(g);
  const auto sub = lrw::induced_subgraph(g, xp);
  const auto ds = floyd(sub.graph);
  for (int u : x)
    for (int v : x) {
      if (u >= v || d[u][v] > r) continue;
      if (ds[sub.old_to_new[u]][sub.old_to_new[v]] != d[u][v]) return false;
    }
  return true;
}

// ---------------------------------------------------------------- rank-width by tree enumeration

/// Minimum over all unrooted trees with internal degree 3 and leaves 0..n-1 of the maximum
/// edge cut-rank. Trees are grown by inserting each new leaf into every edge.
inline int rank_width(const lrw::Graph& g) {
  const int n = g.n();
  if (n <= 1) return 0;
  if (n == 2) return g.adjacent(0, 1) ? 1 : 0;
  std::map<std::uint64_t, int> memo;
  auto cut = [&](std::uint64_t side) {
    auto it = memo.find(side);
    if (it != memo.end()) return it->second;
    const int r = oracle::cutrank(g, bits(side, n));
    memo.emplace(side, r);
    return r;
  };
  // nodes 0..n-1 are leaves; internal nodes from n upward
  std::vector<std::pair<int, int>> edges{{0, n}, {1, n}, {2, n}};
  int best = n;
  std::function<void(int, int)> grow = [&](int leaf, int next_internal) {
    if (leaf == n) {
      int width = 0;
      for (std::size_t e = 0; e < edges.size() && width < best; ++e) {
        // leaves on the side of edges[e].first
        std::uint64_t side = 0;
        std::vector<int> stack{edges[e].first};
        std::set<int> seen{edges[e].first, edges[e].second};
        while (!stack.empty()) {
          const int a = stack.back();
          stack.pop_back();
          if (a < n) side |= std::uint64_t{1} << a;
          for (auto [p, q] : edges) {
            const int other = p == a ? q : q == a ? p : -1;
            if (other >= 0 && seen.insert(other).second) stack.push_back(other);
          }
        }
        width = std::max(width, cut(side));
      }
      best = std::min(best, width);
      return;
    }
    const std::size_t count = edges.size();
    for (std::size_t e = 0; e < count; ++e) {
      auto [p, q] = edges[e];
      const int mid = next_internal;
      edges[e] = {p, mid};
      edges.emplace_back(mid, q);
      edges.emplace_back(leaf, mid);
      grow(leaf + 1, next_internal + 1);
      edges.pop_back();
      edges.pop_back();
      edges[e] = {p, q};
    }
  };
  grow(3, n + 1);
  return best;
}

// ---------------------------------------------------------------- tree-depth

inline int tree_depth(const lrw::Graph& g, std::uint64_t s, std::map<std::uint64_t, int>& memo) {
  const int n = g.n();
  if (std::popcount(s) == 1) return 1;
  auto it = memo.find(s);
  if (it != memo.end()) return it->second;
  // components of G[s]
  std::vector<std::uint64_t> comps;
  std::uint64_t left = s;
  while (left) {
    std::uint64_t comp = left & (~left + 1), grown = 0;
    while (grown != comp) {
      grown = comp;
      for (int v = 0; v < n; ++v)
        if ((comp >> v) & 1U)
          for (int u = 0; u < n; ++u)
            if (((s >> u) & 1U) && g.adjacent(u, v)) comp |= std::uint64_t{1} << u;
    }
    comps.push_back(comp);
    left &= ~comp;
  }
  int out = 0;
  if (comps.size() > 1) {
    for (auto c : comps) out = std::max(out, tree_depth(g, c, memo));
  } else {
    out = n + 1;
    for (int v = 0; v < n; ++v)
      if ((s >> v) & 1U) out = std::min(out, 1 + tree_depth(g, s & ~(std::uint64_t{1} << v), memo));
  }
  memo.emplace(s, out);
  return out;
}

inline int tree_depth(const lrw::Graph& g) {
  std::map<std::uint64_t, int> memo;
  return tree_depth(g, (std::uint64_t{1} << g.n()) - 1, memo);
}

// ---------------------------------------------------------------- weak reachability

/// Enumerates every simple path from v of length <= r and collects the minima.
inline std::set<int> wreach(const lrw::Graph& g, const std::vector<int>& pos, int r, int v) {
  std::set<int> out{v};
  std::vector<int> path{v};
  std::function<void()> walk = [&]() {
    const int last = path.back();
    int mn = path.front();
    for (int u : path)
      if (pos[u] < pos[mn]) mn = u;
    out.insert(mn);
    if (static_cast<int>(path.size()) > r) return;
    for (int u = 0; u < g.n(); ++u)
      if (g.adjacent(last, u) && std::find(path.begin(), path.end(), u) == path.end()) {
        path.push_back(u);
        walk();
        path.pop_back();
      }
  };
  walk();
  return out;
}

inline int wcol_of_order(const lrw::Graph& g, const std::vector<int>& order, int r) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  int best = 0;
  for (int v = 0; v < g.n(); ++v) best = std::max(best, static_cast<int>(wreach(g, pos, r, v).size()));
  return best;
}

inline int wcol(const lrw::Graph& g, int r) {
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  int best = g.n() + 1;
  do best = std::min(best, wcol_of_order(g, order, r));
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// ---------------------------------------------------------------- misc

inline lrw::Graph line_graph(const lrw::Graph& g) {
  const auto e = g.edges();
  std::vector<lrw::Edge> out;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (e[i].first == e[j].first || e[i].first == e[j].second || e[i].second == e[j].first ||
          e[i].second == e[j].second)
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return lrw::Graph(std::max<int>(1, static_cast<int>(e.size())), out);
}

inline int degeneracy(const lrw::Graph& g) {
  std::vector<char> gone(static_cast<std::size_t>(g.n()), 0);
  int best = 0;
  for (int step = 0; step < g.n(); ++step) {
    int pick = -1, low = g.n() + 1;
    for (int v = 0; v < g.n(); ++v) {
      if (gone[v]) continue;
      int deg = 0;
      for (int u = 0; u < g.n(); ++u) deg += !gone[u] && g.adjacent(u, v);
      if (deg < low) low = deg, pick = v;
    }
    best = std::max(best, low);
    gone[pick] = 1;
  }
  return best;
}

/// Largest clique and largest independent set, by subset enumeration (n <= 20).
inline std::pair<int, int> omega_alpha(const lrw::Graph& g) {
  int om = 0, al = 0;
  const int n = g.n();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    const auto v = bits(s, n);
    bool clique = true, indep = true;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) (g.adjacent(v[i], v[j]) ? indep : clique) = false;
    if (clique) om = std::max(om, static_cast<int>(v.size()));
    if (indep) al = std::max(al, static_cast<int>(v.size()));
  }
  return {om, al};
}

inline bool same_edges(const lrw::Graph& a, const lrw::Graph& b) { return a.n() == b.n() && a.edges() == b.edges(); }

}  // namespace oracle
