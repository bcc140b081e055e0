#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/error.hpp"
#include "lrw/graph.hpp"
#include "lrw/orderings.hpp"

namespace lrw {

/// Vertex coloring with colors 1..palette_size.
class Coloring {
 public:
  Coloring() = default;
  Coloring(int palette_size, std::vector<int> colors) : palette_(palette_size), colors_(std::move(colors)) {
    if (palette_ < 1) throw Error("palette size must be >= 1");
    for (std::size_t v = 0; v < colors_.size(); ++v)
      if (colors_[v] < 1 || colors_[v] > palette_)
        throw Error("vertex " + std::to_string(v) + " has color " + std::to_string(colors_[v]) + " outside 1.." +
                    std::to_string(palette_));
  }

  /// Palette = largest color used.
  static Coloring from_colors(std::vector<int> colors) {
    const int k = colors.empty() ? 1 : *std::max_element(colors.begin(), colors.end());
    return Coloring(std::max(k, 1), std::move(colors));
  }

  static Coloring constant(int n) { return Coloring(1, std::vector<int>(static_cast<std::size_t>(n), 1)); }

  int palette_size() const { return palette_; }
  int size() const { return static_cast<int>(colors_.size()); }
  int operator[](int v) const { return colors_[v]; }
  const std::vector<int>& colors() const { return colors_; }

  /// Number of distinct colors actually used.
  int used_count() const { return static_cast<int>(std::set<int>(colors_.begin(), colors_.end()).size()); }

  /// Vertices whose color is in `palette_subset`.
  VertexSet class_union(const std::vector<int>& palette_subset) const {
    std::vector<char> want(static_cast<std::size_t>(palette_) + 1, 0);
    for (int c : palette_subset) want[c] = 1;
    VertexSet s(size());
    for (int v = 0; v < size(); ++v)
      if (want[colors_[v]]) s.set(v);
    return s;
  }

  VertexSet color_class(int c) const { return class_union({c}); }

  /// Sorted set of colors received by X.
  std::vector<int> colors_of(const VertexSet& x) const {
    std::set<int> out;
    x.for_each([&](int v) { out.insert(colors_[v]); });
    return {out.begin(), out.end()};
  }

  void check_fits(const Graph& g) const {
    if (size() != g.n())
      throw Error("coloring covers " + std::to_string(size()) + " vertices, graph has " + std::to_string(g.n()));
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  int palette_ = 1;
  std::vector<int> colors_;
};

/// One radius of a refinement: refined colors are sets of `base` colors.
struct RefinementLevel {
  int radius = 2;
  LinearOrder order;
  int wcol = 0;  // wcol_of_order(G, order, radius)
  Coloring base;
  Coloring refined;
  std::vector<std::vector<int>> decode;  // refined color q (1-based) -> decode[q - 1]

  int budget() const { return 2 * wcol; }
  const std::vector<int>& decode_of(int q) const { return decode[static_cast<std::size_t>(q - 1)]; }
};

/// A good refinement (one level) or an excellent refinement (levels for radius 2..r,
/// each refining the previous level's coloring).
struct RefinementColoring {
  std::vector<RefinementLevel> levels;

  const Coloring& base() const { return levels.front().base; }
  const Coloring& refined() const { return levels.back().refined; }
  int radius() const { return levels.back().radius; }

  /// Product of 2*wcol over the levels: the per-color base budget.
  long double product_constant() const {
    long double d = 1;
    for (const auto& l : levels) d *= l.budget();
    return d;
  }
};

namespace detail {

/// Shortest u-v path with interior restricted to `interior`; parents are the
/// smallest-id neighbor in the previous BFS layer. Empty when none of length <= r.
inline std::vector<int> restricted_shortest_path(const Graph& g, int u, int v, int r, const VertexSet& interior) {
  const int n = g.n();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  VertexSet seen(n);
  seen.set(u);
  std::vector<int> layer{u};
  for (int d = 1; d <= r && !layer.empty(); ++d) {
    VertexSet prev(n, std::span<const int>(layer));
    VertexSet next(n);
    for (int a : layer) next |= g.row(a);
    next.subtract(seen);
    if (next.test(v)) {
      parent[v] = (g.row(v) & prev).first();
      std::vector<int> path{v};
      for (int w = v; w != u;) {
        w = parent[w];
        path.push_back(w);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    next &= interior;
    std::vector<int> fresh;
    next.for_each([&](int w) {
      parent[w] = (g.row(w) & prev).first();
      fresh.push_back(w);
    });
    seen |= next;
    layer = std::move(fresh);
  }
  return {};
}

inline Coloring intern_sets(const std::vector<std::vector<int>>& sets, std::vector<std::vector<int>>& decode) {
  std::map<std::vector<int>, int> ids;
  std::vector<int> colors;
  colors.reserve(sets.size());
  for (const auto& s : sets) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()) + 1);
    if (inserted) decode.push_back(s);
    colors.push_back(it->second);
  }
  return Coloring(std::max<int>(1, static_cast<int>(ids.size())), std::move(colors));
}

}  // namespace detail

/// Refinement whose color classes admit r-shortest-path hitters with few base colors.
///
/// c'(v) collects c(u) for every u in WReach_r[G,L,v], and for each such u not
/// adjacent to v, c(z) for the L-largest vertex z of a shortest u-v path of
/// length <= r whose interior lies after v (when one exists).
inline RefinementColoring good_refinement(const Graph& g, const Coloring& c, int r, const LinearOrder& order) {
  if (r < 2) throw Error("good_refinement needs radius >= 2");
  c.check_fits(g);
  if (order.size() != g.n()) throw Error("order does not match the graph");
  const int n = g.n();
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
  int wcol = 0;
  for (int v = 0; v < n; ++v) {
    const VertexSet reach = wreach(g, order, r, v);
    wcol = std::max(wcol, reach.count());
    std::set<int> colors;
    reach.for_each([&](int u) { colors.insert(c[u]); });
    const VertexSet interior = order.after(v);
    reach.for_each([&](int u) {
      if (u == v || g.adjacent(u, v)) return;
      const auto path = detail::restricted_shortest_path(g, u, v, r, interior);
      if (path.empty()) return;
      int z = path.front();
      for (int w : path)
        if (order.position(w) > order.position(z)) z = w;
      colors.insert(c[z]);
    });
    sets[v] = {colors.begin(), colors.end()};
  }
  RefinementLevel level;
  level.radius = r;
  level.order = order;
  level.wcol = wcol;
  level.base = c;
  level.refined = detail::intern_sets(sets, level.decode);
  RefinementColoring out;
  out.levels.push_back(std::move(level));
  return out;
}

namespace detail {

inline VertexSet expand_level(const RefinementLevel& level, const VertexSet& x) {
  std::vector<char> wanted(static_cast<std::size_t>(level.base.palette_size()) + 1, 0);
  x.for_each([&](int v) {
    for (int b : level.decode_of(level.refined[v])) wanted[b] = 1;
  });
  VertexSet out(x.universe());
  for (int v = 0; v < level.base.size(); ++v)
    if (wanted[level.base[v]]) out.set(v);
  return out;
}

}  // namespace detail

/// X' = vertices whose base color lies in the decode of some refined color on X (top level).
inline VertexSet expand_good(const RefinementColoring& R, const VertexSet& x) {
  return detail::expand_level(R.levels.back(), x);
}

/// X'' from the top-level expansion followed by the recursive lower-radius expansions.
inline VertexSet expand_excellent(const RefinementColoring& R, const VertexSet& x) {
  VertexSet cur = x;
  for (auto it = R.levels.rbegin(); it != R.levels.rend(); ++it) cur = detail::expand_level(*it, cur);
  return cur;
}

inline bool is_hitter(const Graph& g, const VertexSet& x, const VertexSet& xp, int r) {
  if (!x.is_subset_of(xp)) throw Error("is_hitter: X is not a subset of X'");
  const auto xs = x.to_vector();
  for (std::size_t a = 0; a < xs.size(); ++a) {
    const auto du = bfs_distances(g, xs[a]);
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      const int v = xs[b];
      const int d = du[v];
      if (d <= 1 || d > r) continue;
      const auto dv = bfs_distances(g, v);
      bool hit = false;
      xp.for_each([&](int z) {
        if (hit || z == xs[a] || z == v) return;
        if (du[z] != kUnreachable && dv[z] != kUnreachable && du[z] + dv[z] == d) hit = true;
      });
      if (!hit) return false;
    }
  }
  return true;
}

inline bool is_closure(const Graph& g, const VertexSet& x, const VertexSet& xp, int r) {
  if (!x.is_subset_of(xp)) throw Error("is_closure: X is not a subset of X'");
  const auto xs = x.to_vector();
  for (std::size_t a = 0; a < xs.size(); ++a) {
    const auto dg = bfs_distances(g, xs[a]);
    const auto dx = bfs_distances(g, xs[a], xp);
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      const int v = xs[b];
      if (dg[v] <= r && dx[v] != dg[v]) return false;
    }
  }
  return true;
}

/// Excellent refinement built level by level: radius 2 refines c, radius l refines level l-1.
/// `orders[i]` is the order for radius i + 2.
inline RefinementColoring excellent_refinement(const Graph& g, const Coloring& c, int r,
                                               const std::vector<LinearOrder>& orders) {
  if (r < 2) throw Error("excellent_refinement needs radius >= 2");
  if (static_cast<int>(orders.size()) < r - 1)
    throw Error("excellent_refinement needs one order per radius 2.." + std::to_string(r) + ", got " +
                std::to_string(orders.size()));
  RefinementColoring out;
  Coloring current = c;
  for (int radius = 2; radius <= r; ++radius) {
    RefinementColoring level = good_refinement(g, current, radius, orders[static_cast<std::size_t>(radius - 2)]);
    current = level.levels.front().refined;
    out.levels.push_back(std::move(level.levels.front()));
  }
  return out;
}

/// Greedy proper coloring along a smallest-last (degeneracy) order of G[within].
inline std::vector<int> greedy_proper_colors(const Graph& g, const VertexSet& within) {
  VertexSet alive = within;
  std::vector<int> peel;
  while (alive.any()) {
    int pick = -1;
    int pick_deg = kUnreachable;
    alive.for_each([&](int v) {
      const int d = (g.row(v) & alive).count();
      if (d < pick_deg) {
        pick_deg = d;
        pick = v;
      }
    });
    peel.push_back(pick);
    alive.reset(pick);
  }
  std::vector<int> color(static_cast<std::size_t>(g.n()), 0);
  for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
    std::vector<char> used;
    (g.row(*it) & within).for_each([&](int w) {
      const int cw = color[w];
      if (cw > 0) {
        if (static_cast<int>(used.size()) <= cw) used.resize(static_cast<std::size_t>(cw) + 1, 0);
        used[cw] = 1;
      }
    });
    int k = 1;
    while (k < static_cast<int>(used.size()) && used[k]) ++k;
    color[*it] = k;
  }
  return color;
}

inline Coloring greedy_proper_coloring(const Graph& g) { return Coloring::from_colors(greedy_proper_colors(g, g.all())); }

inline bool is_proper(const Graph& g, const Coloring& c) {
  for (auto [u, v] : g.edges())
    if (c[u] == c[v]) return false;
  return true;
}

}  // namespace lrw
