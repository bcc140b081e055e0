#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/error.hpp"
#include "lrw/gf2.hpp"
#include "lrw/graph.hpp"

namespace lrw {

/// Subcubic tree with its leaves in bijection with the vertices of a graph.
struct RankDecomposition {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaf_of_vertex;  // vertex -> tree node

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
  }

  friend bool operator==(const RankDecomposition&, const RankDecomposition&) = default;
};

/// Throws DecompositionError naming the first structural violation.
inline void check_structure(const Graph& g, const RankDecomposition& d) {
  const int nodes = d.node_count;
  if (nodes < 2) throw DecompositionError("tree has fewer than 2 nodes");
  if (static_cast<int>(d.edges.size()) != nodes - 1)
    throw DecompositionError("tree has " + std::to_string(d.edges.size()) + " edges, expected " +
                             std::to_string(nodes - 1));
  std::vector<int> deg(static_cast<std::size_t>(nodes), 0);
  for (auto [a, b] : d.edges) {
    if (a < 0 || a >= nodes || b < 0 || b >= nodes || a == b)
      throw DecompositionError("invalid tree edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    ++deg[a];
    ++deg[b];
  }
  const auto adj = d.adjacency();
  std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : adj[t])
      if (!seen[s]) {
        seen[s] = 1;
        ++reached;
        stack.push_back(s);
      }
  }
  if (reached != nodes) throw DecompositionError("tree is disconnected");
  int leaves = 0;
  for (int t = 0; t < nodes; ++t) {
    if (deg[t] != 1 && deg[t] != 3)
      throw DecompositionError("node " + std::to_string(t) + " has degree " + std::to_string(deg[t]) +
                               " (must be 1 or 3)");
    if (deg[t] == 1) ++leaves;
  }
  if (static_cast<int>(d.leaf_of_vertex.size()) != g.n())
    throw DecompositionError("leaf map covers " + std::to_string(d.leaf_of_vertex.size()) + " vertices, graph has " +
                             std::to_string(g.n()));
  if (leaves != g.n())
    throw DecompositionError("tree has " + std::to_string(leaves) + " leaves, graph has " + std::to_string(g.n()) +
                             " vertices");
  std::vector<char> used(static_cast<std::size_t>(nodes), 0);
  for (int v = 0; v < g.n(); ++v) {
    const int t = d.leaf_of_vertex[v];
    if (t < 0 || t >= nodes) throw DecompositionError("vertex " + std::to_string(v) + " maps to a missing node");
    if (deg[t] != 1)
      throw DecompositionError("vertex " + std::to_string(v) + " maps to non-leaf node " + std::to_string(t));
    if (used[t]) throw DecompositionError("leaf " + std::to_string(t) + " is assigned to two vertices");
    used[t] = 1;
  }
}

/// For each tree edge (in `edges` order), the vertex set on the side of its second endpoint.
inline std::vector<VertexSet> edge_sides(const Graph& g, const RankDecomposition& d) {
  const auto adj = d.adjacency();
  std::vector<int> vertex_at(static_cast<std::size_t>(d.node_count), -1);
  for (int v = 0; v < g.n(); ++v) vertex_at[d.leaf_of_vertex[v]] = v;
  std::vector<VertexSet> sides;
  sides.reserve(d.edges.size());
  for (auto [a, b] : d.edges) {
    VertexSet side(g.n());
    std::vector<std::pair<int, int>> stack{{b, a}};
    while (!stack.empty()) {
      auto [t, parent] = stack.back();
      stack.pop_back();
      if (vertex_at[t] >= 0) side.set(vertex_at[t]);
      for (int s : adj[t])
        if (s != parent) stack.emplace_back(s, t);
    }
    sides.push_back(std::move(side));
  }
  return sides;
}

/// Width of a decomposition: the largest cut-rank over its tree edges.
inline int verify_decomposition(const Graph& g, const RankDecomposition& d) {
  check_structure(g, d);
  int width = 0;
  for (const auto& side : edge_sides(g, d)) width = std::max(width, cutrank(g, side));
  return width;
}

/// Caterpillar decomposition whose spine cuts are the prefixes of `order`.
inline RankDecomposition caterpillar(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  if (n < 2) throw DecompositionError("a rank-decomposition needs at least 2 vertices");
  RankDecomposition d;
  d.leaf_of_vertex.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) d.leaf_of_vertex[order[i]] = i;
  if (n == 2) {
    d.node_count = 2;
    d.edges = {{0, 1}};
    return d;
  }
  // spine node for position i (1..n-2) is n + i - 1
  d.node_count = n + (n - 2);
  auto spine = [n](int i) { return n + i - 1; };
  d.edges.emplace_back(spine(1), 0);
  for (int i = 1; i <= n - 2; ++i) {
    d.edges.emplace_back(spine(i), i);
    if (i + 1 <= n - 2) d.edges.emplace_back(spine(i), spine(i + 1));
  }
  d.edges.emplace_back(spine(n - 2), n - 1);
  return d;
}

/// Decomposition of G[X] obtained by pruning leaves outside X and suppressing degree-2 nodes.
/// `sub_of_old` maps old vertex ids to the ids used by the induced subgraph (-1 outside X).
inline RankDecomposition restrict_decomposition(const RankDecomposition& d, const std::vector<int>& sub_of_old,
                                                int sub_n) {
  if (sub_n < 2) throw DecompositionError("restriction needs at least 2 vertices");
  auto adj = d.adjacency();
  const int nodes = d.node_count;
  std::vector<char> alive(static_cast<std::size_t>(nodes), 1);
  std::vector<int> keep_leaf(static_cast<std::size_t>(nodes), -1);
  for (std::size_t v = 0; v < sub_of_old.size(); ++v)
    if (sub_of_old[v] >= 0) keep_leaf[d.leaf_of_vertex[v]] = sub_of_old[v];
  std::vector<int> deg(static_cast<std::size_t>(nodes));
  for (int t = 0; t < nodes; ++t) deg[t] = static_cast<int>(adj[t].size());
  // prune dead leaves repeatedly
  std::vector<int> queue;
  for (int t = 0; t < nodes; ++t)
    if (deg[t] <= 1 && keep_leaf[t] < 0) queue.push_back(t);
  while (!queue.empty()) {
    int t = queue.back();
    queue.pop_back();
    if (!alive[t]) continue;
    alive[t] = 0;
    for (int s : adj[t])
      if (alive[s] && --deg[s] <= 1 && keep_leaf[s] < 0) queue.push_back(s);
  }
  // live neighbors
  std::vector<std::vector<int>> live(static_cast<std::size_t>(nodes));
  for (int t = 0; t < nodes; ++t)
    if (alive[t])
      for (int s : adj[t])
        if (alive[s]) live[t].push_back(s);
  // walk from each kept node through degree-2 chains
  std::vector<int> id(static_cast<std::size_t>(nodes), -1);
  RankDecomposition out;
  for (int t = 0; t < nodes; ++t)
    if (alive[t] && live[t].size() != 2) id[t] = out.node_count++;
  if (out.node_count == 0) {
    // a single path of degree-2 nodes cannot occur with >= 2 kept leaves
    throw DecompositionError("restriction collapsed");
  }
  for (int t = 0; t < nodes; ++t) {
    if (id[t] < 0) continue;
    for (int s : live[t]) {
      int prev = t;
      int cur = s;
      while (id[cur] < 0) {
        int nxt = live[cur][0] == prev ? live[cur][1] : live[cur][0];
        prev = cur;
        cur = nxt;
      }
      if (id[t] < id[cur]) out.edges.emplace_back(id[t], id[cur]);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  out.leaf_of_vertex.assign(static_cast<std::size_t>(sub_n), -1);
  for (int t = 0; t < nodes; ++t)
    if (keep_leaf[t] >= 0) out.leaf_of_vertex[keep_leaf[t]] = id[t];
  return out;
}

}  // namespace lrw
