#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/decomposition.hpp"
#include "lrw/error.hpp"
#include "lrw/gf2.hpp"
#include "lrw/graph.hpp"

namespace lrw {

enum class WidthMethod { exact, upper_bound };

inline const char* to_string(WidthMethod m) { return m == WidthMethod::exact ? "exact" : "upper-bound"; }

struct WidthReport {
  int value = 0;
  WidthMethod method = WidthMethod::exact;
  std::optional<RankDecomposition> decomposition;
  double elapsed_ms = 0.0;
};

inline constexpr int kDefaultRankWidthCap = 12;
inline constexpr int kDefaultTreeDepthCap = 14;

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

/// Builds the unrooted tree from the optimal root split and per-subset best splits.
class SplitTreeBuilder {
 public:
  SplitTreeBuilder(int n, const std::vector<Mask>& best_split) : best_split_(best_split) {
    d_.leaf_of_vertex.assign(static_cast<std::size_t>(n), -1);
  }

  RankDecomposition build(Mask left, Mask right) {
    const int a = emit(left);
    const int b = emit(right);
    d_.edges.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(d_.edges.begin(), d_.edges.end());
    return std::move(d_);
  }

 private:
  int emit(Mask s) {
    const int node = d_.node_count++;
    if (std::popcount(s) == 1) {
      d_.leaf_of_vertex[std::countr_zero(s)] = node;
      return node;
    }
    const Mask s1 = best_split_[s];
    const int a = emit(s1);
    const int b = emit(s & ~s1);
    d_.edges.emplace_back(node, a);
    d_.edges.emplace_back(node, b);
    return node;
  }

  const std::vector<Mask>& best_split_;
  RankDecomposition d_;
};

}  // namespace detail

/// Exact rank-width by dynamic programming over vertex subsets.
///
/// Every subcubic tree, rooted by subdividing an edge, is a rooted binary tree
/// whose subtrees are the sides of its edges, so minimising over recursive
/// binary splits of V(G) ranges over exactly the same widths. Runs in O(3^n).
inline WidthReport rank_width_exact(const Graph& g, int cap = kDefaultRankWidthCap) {
  const auto start = std::chrono::steady_clock::now();
  const int n = g.n();
  if (n <= 1) return {0, WidthMethod::exact, std::nullopt, detail::ms_since(start)};
  if (n > cap || n > 30)
    throw CapacityError("rank_width_exact: " + std::to_string(n) + " vertices exceeds the exact cap of " +
                        std::to_string(std::min(cap, 30)) + "; use rank_width_upper instead");
  const auto adj = adjacency_masks(g);
  const Mask all = (n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::uint8_t> cr(subsets);
  for (Mask s = 0; s < subsets; ++s) cr[s] = static_cast<std::uint8_t>(cutrank_mask(adj, s, all));

  // f[s]: best width of a rooted binary tree with leaf set s, counting the cut-ranks of all its proper subtrees
  std::vector<std::uint8_t> f(subsets, 0);
  std::vector<Mask> split(subsets, 0);
  for (Mask s = 1; s < subsets; ++s) {
    if ((s & (s - 1)) == 0) continue;
    const Mask low = s & (~s + 1);
    const Mask rest = s & ~low;
    int best = 255;
    Mask best_s1 = 0;
    // s1 ranges over subsets containing the lowest member, excluding s itself
    for (Mask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const Mask s1 = sub | low;
      const Mask s2 = s & ~s1;
      const int w = std::max({int(cr[s1]), int(cr[s2]), int(f[s1]), int(f[s2])});
      if (w < best) {
        best = w;
        best_s1 = s1;
      }
      if (sub == 0) break;
    }
    f[s] = static_cast<std::uint8_t>(best);
    split[s] = best_s1;
  }
  // unrooted: pick the root edge (X, V \ X) with vertex 0 in X
  int best = 255;
  Mask best_x = 0;
  const Mask rest = all & ~Mask{1};
  for (Mask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
    const Mask x = sub | 1;
    const Mask y = all & ~x;
    const int w = std::max({int(cr[x]), int(f[x]), int(f[y])});
    if (w < best) {
      best = w;
      best_x = x;
    }
    if (sub == 0) break;
  }
  detail::SplitTreeBuilder builder(n, split);
  RankDecomposition d = builder.build(best_x, all & ~best_x);
  return {best, WidthMethod::exact, std::move(d), detail::ms_since(start)};
}

enum class OrderStrategy { identity, bfs, greedy_cut };

inline const char* to_string(OrderStrategy s) {
  switch (s) {
    case OrderStrategy::identity:
      return "identity";
    case OrderStrategy::bfs:
      return "bfs";
    case OrderStrategy::greedy_cut:
      return "greedy-cut";
  }
  return "?";
}

inline std::vector<int> linear_order(const Graph& g, OrderStrategy strategy) {
  const int n = g.n();
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  switch (strategy) {
    case OrderStrategy::identity:
      for (int v = 0; v < n; ++v) order.push_back(v);
      break;
    case OrderStrategy::bfs: {
      VertexSet seen(n);
      for (int s = 0; s < n; ++s) {
        if (seen.test(s)) continue;
        std::vector<int> queue{s};
        seen.set(s);
        for (std::size_t i = 0; i < queue.size(); ++i) {
          order.push_back(queue[i]);
          (g.row(queue[i]) - seen).for_each([&](int w) {
            seen.set(w);
            queue.push_back(w);
          });
        }
      }
      break;
    }
    case OrderStrategy::greedy_cut: {
      VertexSet prefix(n);
      for (int step = 0; step < n; ++step) {
        int pick = -1;
        int pick_rank = kUnreachable;
        int pick_out = kUnreachable;
        for (int v = 0; v < n; ++v) {
          if (prefix.test(v)) continue;
          VertexSet next = prefix;
          next.set(v);
          const int rk = cutrank(g, next);
          const int out = (g.row(v) - next).count();
          if (rk < pick_rank || (rk == pick_rank && out < pick_out)) {
            pick = v;
            pick_rank = rk;
            pick_out = out;
          }
        }
        prefix.set(pick);
        order.push_back(pick);
      }
      break;
    }
  }
  return order;
}

/// Upper bound from the caterpillar decomposition of a vertex order.
inline WidthReport rank_width_upper(const Graph& g, OrderStrategy strategy = OrderStrategy::greedy_cut) {
  const auto start = std::chrono::steady_clock::now();
  if (g.n() <= 1) return {0, WidthMethod::upper_bound, std::nullopt, detail::ms_since(start)};
  RankDecomposition d = caterpillar(linear_order(g, strategy));
  const int w = verify_decomposition(g, d);
  return {w, WidthMethod::upper_bound, std::move(d), detail::ms_since(start)};
}

/// Exact width when n fits the cap, otherwise the best caterpillar upper bound.
inline WidthReport rank_width_best(const Graph& g, int cap = kDefaultRankWidthCap) {
  if (g.n() <= cap) return rank_width_exact(g, cap);
  WidthReport best = rank_width_upper(g, OrderStrategy::greedy_cut);
  for (auto s : {OrderStrategy::bfs, OrderStrategy::identity}) {
    if (best.value <= 1) break;
    WidthReport r = rank_width_upper(g, s);
    if (r.value < best.value) best = std::move(r);
  }
  return best;
}

struct Bipartition {
  VertexSet x;
  VertexSet y;
};

/// Bipartition (X, Y) balanced with respect to C whose cut-rank is at most the width of D.
///
/// D is rooted by subdividing its lexicographically smallest edge; X is the set
/// of vertices below the deepest node whose subtree holds at least |C|/3
/// members of C (smallest node id among equally deep candidates).
inline Bipartition balanced_partition(const Graph& g, const VertexSet& c, const RankDecomposition& d) {
  const int csize = c.count();
  if (csize < 3) throw Error("balanced_partition needs |C| >= 3");
  check_structure(g, d);
  auto adj = d.adjacency();
  auto root_edge = *std::min_element(d.edges.begin(), d.edges.end(), [](auto a, auto b) {
    return std::minmax(a.first, a.second) < std::minmax(b.first, b.second);
  });
  std::vector<int> vertex_at(static_cast<std::size_t>(d.node_count), -1);
  for (int v = 0; v < g.n(); ++v) vertex_at[d.leaf_of_vertex[v]] = v;

  std::vector<int> parent(static_cast<std::size_t>(d.node_count), -1);
  std::vector<int> depth(static_cast<std::size_t>(d.node_count), 0);
  std::vector<int> preorder;
  // the subdivision node is virtual: both endpoints of the root edge sit at depth 1
  for (int top : {root_edge.first, root_edge.second}) {
    const int other = top == root_edge.first ? root_edge.second : root_edge.first;
    parent[top] = other;  // sentinel, never followed upward
    depth[top] = 1;
    std::vector<int> stack{top};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      preorder.push_back(t);
      for (int s : adj[t])
        if (s != parent[t]) {
          parent[s] = t;
          depth[s] = depth[t] + 1;
          stack.push_back(s);
        }
    }
  }
  std::vector<int> mu(static_cast<std::size_t>(d.node_count), 0);
  std::vector<VertexSet> below(static_cast<std::size_t>(d.node_count), VertexSet(g.n()));
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const int t = *it;
    if (vertex_at[t] >= 0) {
      below[t].set(vertex_at[t]);
      if (c.test(vertex_at[t])) mu[t] = 1;
    }
    for (int s : adj[t])
      if (s != parent[t] && parent[s] == t) {
        mu[t] += mu[s];
        below[t] |= below[s];
      }
  }
  int pick = -1;
  for (int t = 0; t < d.node_count; ++t) {
    if (3 * mu[t] < csize) continue;
    if (pick == -1 || depth[t] > depth[pick]) pick = t;
  }
  return {below[pick], below[pick].complement()};
}

/// Exact tree-depth by the recursive definition, memoised on vertex-subset masks.
class TreeDepthSolver {
 public:
  explicit TreeDepthSolver(const Graph& g) : adj_(adjacency_masks(g)) {}

  int solve(Mask s) {
    if (s == 0) return 0;
    if ((s & (s - 1)) == 0) return 1;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    int result;
    const auto comps = split(s);
    if (comps.size() > 1) {
      result = 0;
      for (Mask c : comps) result = std::max(result, solve(c));
    } else {
      result = kUnreachable;
      const int lower = clique_bound(s);
      for (Mask m = s; m != 0; m &= m - 1) {
        const int v = std::countr_zero(m);
        result = std::min(result, 1 + solve(s & ~(Mask{1} << v)));
        if (result <= lower) break;
      }
    }
    memo_.emplace(s, result);
    return result;
  }

  /// Elimination-tree height from always deleting a max-degree vertex; an upper bound.
  int greedy_upper(Mask s) const {
    if (s == 0) return 0;
    if ((s & (s - 1)) == 0) return 1;
    const auto comps = split(s);
    if (comps.size() > 1) {
      int best = 0;
      for (Mask c : comps) best = std::max(best, greedy_upper(c));
      return best;
    }
    int pick = -1;
    int pick_deg = -1;
    for (Mask m = s; m != 0; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(adj_[v] & s);
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    return 1 + greedy_upper(s & ~(Mask{1} << pick));
  }

  std::vector<Mask> split(Mask s) const {
    std::vector<Mask> comps;
    Mask left = s;
    while (left != 0) {
      Mask comp = left & (~left + 1);
      Mask frontier = comp;
      while (frontier != 0) {
        Mask next = 0;
        for (Mask m = frontier; m != 0; m &= m - 1) next |= adj_[std::countr_zero(m)];
        next &= s & ~comp;
        comp |= next;
        frontier = next;
      }
      comps.push_back(comp);
      left &= ~comp;
    }
    return comps;
  }

 private:
  // td(G) >= omega(G); a cheap greedy clique gives a valid early-exit bound
  int clique_bound(Mask s) const {
    int best = 1;
    for (Mask m = s; m != 0; m &= m - 1) {
      Mask cand = adj_[std::countr_zero(m)] & s;
      int size = 1;
      while (cand != 0) {
        const int w = std::countr_zero(cand);
        ++size;
        cand &= adj_[w];
      }
      best = std::max(best, size);
    }
    return best;
  }

  std::vector<Mask> adj_;
  std::unordered_map<Mask, int> memo_;
};

inline int tree_depth_exact(const Graph& g, int cap = kDefaultTreeDepthCap) {
  if (g.n() > cap || g.n() > 64)
    throw CapacityError("tree_depth_exact: " + std::to_string(g.n()) + " vertices exceeds the cap of " +
                        std::to_string(std::min(cap, 64)));
  TreeDepthSolver solver(g);
  return solver.solve(mask_of(g.all()));
}

}  // namespace lrw
