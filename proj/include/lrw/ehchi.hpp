#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/coloring.hpp"
#include "lrw/decomposition.hpp"
#include "lrw/error.hpp"
#include "lrw/gf2.hpp"
#include "lrw/graph.hpp"
#include "lrw/width.hpp"

namespace lrw {

inline double kappa(int p) { return 1.0 / (std::log2(3.0) + p); }
inline double delta(int p) { return kappa(p) / 2.0; }

struct EHParams {
  int n1 = 1;  // number of colors of the p = 1 coloring
  int r1 = 0;  // rank-width bound of a single class
  double kappa = 0;
  double delta = 0;
  double epsilon = 0;

  static EHParams make(int n1, int r1) {
    if (n1 < 1 || r1 < 0) throw Error("EH parameters need N(1) >= 1 and R(1) >= 0");
    EHParams e;
    e.n1 = n1;
    e.r1 = r1;
    e.kappa = lrw::kappa(r1);
    e.delta = lrw::delta(r1);
    e.epsilon = e.delta / 2;
    if (n1 > 1) e.epsilon = std::min(e.epsilon, 1.0 / (2.0 * std::log2(static_cast<double>(n1))));
    return e;
  }
};

/// size >= n^exponent, compared on logarithms.
inline bool meets_power(int size, int n, double exponent) {
  if (n <= 1) return size >= 1;
  return std::log(static_cast<double>(size)) + 1e-9 >= exponent * std::log(static_cast<double>(n));
}

/// ceil(n^exponent) as an integer, nudged down at float boundaries.
inline int ceil_power(int n, double exponent) {
  const double v = std::pow(static_cast<double>(n), exponent);
  return static_cast<int>(std::ceil(v - 1e-9));
}

// ---------------------------------------------------------------- cotrees

struct Cotree {
  enum class Op { leaf, disjoint_union, join };
  struct Node {
    Op op = Op::leaf;
    int vertex = -1;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = -1;
};

inline const char* to_string(Cotree::Op op) {
  switch (op) {
    case Cotree::Op::leaf:
      return "leaf";
    case Cotree::Op::disjoint_union:
      return "union";
    case Cotree::Op::join:
      return "join";
  }
  return "?";
}

namespace detail {

inline int build_cotree(const Graph& g, const Graph& co, const VertexSet& x, Cotree& t) {
  const int id = static_cast<int>(t.nodes.size());
  t.nodes.emplace_back();
  if (x.count() == 1) {
    t.nodes[id].vertex = x.first();
    return id;
  }
  auto parts = components(g, x);
  Cotree::Op op = Cotree::Op::disjoint_union;
  if (parts.size() == 1) {
    parts = components(co, x);
    op = Cotree::Op::join;
    if (parts.size() == 1) return -1;
  }
  t.nodes[id].op = op;
  for (const auto& part : parts) {
    const int child = build_cotree(g, co, part, t);
    if (child < 0) return -1;
    t.nodes[id].children.push_back(child);
  }
  return id;
}

}  // namespace detail

/// Cotree of G when G is a cograph: disconnected -> union over components,
/// co-disconnected -> join over co-components, otherwise not a cograph.
inline std::optional<Cotree> is_cograph(const Graph& g) {
  Cotree t;
  const Graph co = complement(g);
  t.root = detail::build_cotree(g, co, g.all(), t);
  if (t.root < 0) return std::nullopt;
  return t;
}

/// Adjacency obtained by evaluating the cotree (two leaves are adjacent iff their lowest common node is a join).
inline Graph evaluate_cotree(const Cotree& t, int n) {
  std::vector<VertexSet> rows(static_cast<std::size_t>(n), VertexSet(n));
  std::function<VertexSet(int)> leaves = [&](int id) {
    const auto& node = t.nodes[id];
    VertexSet s(n);
    if (node.op == Cotree::Op::leaf) {
      s.set(node.vertex);
      return s;
    }
    std::vector<VertexSet> parts;
    for (int c : node.children) parts.push_back(leaves(c));
    for (std::size_t a = 0; a < parts.size(); ++a) {
      if (node.op == Cotree::Op::join)
        for (std::size_t b = 0; b < parts.size(); ++b)
          if (a != b) parts[a].for_each([&](int u) { rows[u] |= parts[b]; });
      s |= parts[a];
    }
    return s;
  };
  leaves(t.root);
  return Graph::from_rows(std::move(rows));
}

enum class WitnessKind { clique, independent };

inline const char* to_string(WitnessKind k) { return k == WitnessKind::clique ? "clique" : "independent"; }

struct HomogeneousSet {
  WitnessKind kind = WitnessKind::clique;
  std::vector<int> vertices;
};

inline bool is_homogeneous(const Graph& g, const HomogeneousSet& s) {
  for (std::size_t a = 0; a < s.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < s.vertices.size(); ++b)
      if (g.adjacent(s.vertices[a], s.vertices[b]) != (s.kind == WitnessKind::clique)) return false;
  return true;
}

/// Largest clique and independent set read off the cotree; returns the larger (clique on ties).
inline HomogeneousSet cograph_clique_or_is(const Graph& g, const Cotree& t) {
  struct Best {
    std::vector<int> clique;
    std::vector<int> independent;
  };
  std::function<Best(int)> solve = [&](int id) {
    const auto& node = t.nodes[id];
    if (node.op == Cotree::Op::leaf) return Best{{node.vertex}, {node.vertex}};
    Best out;
    for (int c : node.children) {
      Best b = solve(c);
      auto& summed = node.op == Cotree::Op::join ? out.clique : out.independent;
      auto& maxed = node.op == Cotree::Op::join ? out.independent : out.clique;
      auto& from_sum = node.op == Cotree::Op::join ? b.clique : b.independent;
      auto& from_max = node.op == Cotree::Op::join ? b.independent : b.clique;
      summed.insert(summed.end(), from_sum.begin(), from_sum.end());
      if (from_max.size() > maxed.size()) maxed = std::move(from_max);
    }
    return out;
  };
  Best b = solve(t.root);
  HomogeneousSet out;
  if (b.clique.size() >= b.independent.size()) {
    out = {WitnessKind::clique, std::move(b.clique)};
  } else {
    out = {WitnessKind::independent, std::move(b.independent)};
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  if (!is_homogeneous(g, out)) throw ContractError("cotree witness failed the adjacency scan");
  const auto sz = static_cast<long>(out.vertices.size());
  if (sz * sz < g.n()) throw ContractError("cotree witness is smaller than sqrt(n)");
  return out;
}

// ---------------------------------------------------------------- cograph extraction

enum class BlockRelation { complete, anticomplete };

inline const char* to_string(BlockRelation r) { return r == BlockRelation::complete ? "complete" : "anticomplete"; }

struct UniformBlocks {
  VertexSet a;
  VertexSet b;
  BlockRelation relation = BlockRelation::anticomplete;
};

/// A' = largest class of A by neighborhood in B (at most 2^p classes); B' = the larger of
/// the common neighbors and common non-neighbors of A' in B.
inline UniformBlocks uniform_blocks(const Graph& g, const VertexSet& a, const VertexSet& b, int p) {
  if (a.none() || b.none()) throw Error("uniform_blocks needs nonempty sides");
  if (a.intersects(b)) throw Error("uniform_blocks needs disjoint sides");
  std::unordered_map<VertexSet, VertexSet, VertexSetHash> classes;
  std::vector<VertexSet> first_seen;
  a.for_each([&](int v) {
    const VertexSet pattern = g.row(v) & b;
    auto [it, fresh] = classes.try_emplace(pattern, VertexSet(g.n()));
    if (fresh) first_seen.push_back(pattern);
    it->second.set(v);
  });
  const double limit = std::ldexp(1.0, std::min(p, 60));
  if (static_cast<double>(classes.size()) > limit) {
    const int rank = cutrank(g, a);  // recheck over the full complement
    throw Error("uniform_blocks: " + std::to_string(classes.size()) + " row patterns exceed 2^" + std::to_string(p) +
                " (cut-rank of A is " + std::to_string(rank) + ")");
  }
  const VertexSet* best = nullptr;
  for (const auto& pattern : first_seen)
    if (best == nullptr || classes.at(pattern).count() > classes.at(*best).count()) best = &pattern;
  UniformBlocks out;
  out.a = classes.at(*best);
  const VertexSet non = b - *best;
  if (best->count() >= non.count()) {
    out.b = *best;
    out.relation = BlockRelation::complete;
  } else {
    out.b = non;
    out.relation = BlockRelation::anticomplete;
  }
  return out;
}

namespace detail {

inline VertexSet extract_cograph(const Graph& g, const RankDecomposition& d, int p) {
  const int n = g.n();
  if (n <= 2) return g.all();
  const Bipartition part = balanced_partition(g, g.all(), d);
  const UniformBlocks blocks = uniform_blocks(g, part.x, part.y, p);
  VertexSet out(n);
  for (const VertexSet* side : {&blocks.a, &blocks.b}) {
    if (side->count() <= 2) {
      out |= *side;
      continue;
    }
    const auto sub = induced_subgraph(g, *side);
    const RankDecomposition sd = restrict_decomposition(d, sub.old_to_new, sub.graph.n());
    extract_cograph(sub.graph, sd, p).for_each([&](int v) { out.set(sub.new_to_old[v]); });
  }
  return out;
}

}  // namespace detail

struct CographExtraction {
  VertexSet vertices;
  Cotree cotree;  // over the induced subgraph on `vertices` (ids in increasing order)
};

/// Vertex set inducing a cograph of size >= n^kappa(p), by balanced splits and uniform blocks.
inline CographExtraction cograph_extract(const Graph& g, const RankDecomposition& d, int p) {
  if (p < 0) throw Error("cograph_extract needs p >= 0");
  CographExtraction out;
  if (g.n() <= 2) {
    out.vertices = g.all();
  } else {
    const int width = verify_decomposition(g, d);
    if (width > p)
      throw Error("decomposition has width " + std::to_string(width) + " > p = " + std::to_string(p));
    out.vertices = detail::extract_cograph(g, d, p);
  }
  const auto sub = induced_subgraph(g, out.vertices);
  auto tree = is_cograph(sub.graph);
  if (!tree) throw ContractError("cograph_extract produced a non-cograph");
  out.cotree = std::move(*tree);
  if (!meets_power(out.vertices.count(), g.n(), kappa(p)))
    throw ContractError("cograph_extract fell below n^kappa(p)");
  return out;
}

// ---------------------------------------------------------------- Erdos-Hajnal witness

struct EHWitness {
  HomogeneousSet set;  // ids of G
  EHParams params;
  int n = 0;
  int class_color = 0;   // 0 on the small-n branch
  int class_size = 0;
  int class_width = 0;   // width of the decomposition used on the class
};

/// Clique or independent set of size >= n^epsilon from a p = 1 coloring whose classes have
/// rank-width <= r1. The largest class is decomposed, a cograph is extracted from it, and
/// the cotree yields the homogeneous set.
inline EHWitness eh_witness(const Graph& g, const Coloring& c, int r1, int exact_cap = 16) {
  c.check_fits(g);
  EHWitness out;
  out.n = g.n();
  out.params = EHParams::make(c.palette_size(), r1);
  const long n = g.n();
  if (n < static_cast<long>(out.params.n1) * out.params.n1) {
    out.set.vertices = {0};
    if (n >= 2) {
      out.set.vertices.push_back(1);
      out.set.kind = g.adjacent(0, 1) ? WitnessKind::clique : WitnessKind::independent;
    }
    return out;
  }
  std::map<int, int> sizes;
  for (int v = 0; v < g.n(); ++v) ++sizes[c[v]];
  int color = sizes.begin()->first;
  for (auto [col, cnt] : sizes)
    if (cnt > sizes[color]) color = col;
  const auto h = induced_subgraph(g, c.color_class(color));
  out.class_color = color;
  out.class_size = h.graph.n();
  CographExtraction cog;
  if (h.graph.n() <= 2) {
    cog = cograph_extract(h.graph, RankDecomposition{}, r1);
  } else {
    const WidthReport rep = rank_width_best(h.graph, exact_cap);
    out.class_width = rep.value;
    if (rep.value > r1)
      throw Error("color class " + std::to_string(color) + " has rank-width " + std::to_string(rep.value) +
                  (rep.method == WidthMethod::exact ? "" : " (upper bound)") + " > R(1) = " + std::to_string(r1));
    cog = cograph_extract(h.graph, *rep.decomposition, r1);
  }
  const auto cg = induced_subgraph(h.graph, cog.vertices);
  HomogeneousSet local = cograph_clique_or_is(cg.graph, cog.cotree);
  out.set.kind = local.kind;
  for (int v : local.vertices) out.set.vertices.push_back(h.new_to_old[cg.new_to_old[v]]);
  std::sort(out.set.vertices.begin(), out.set.vertices.end());
  if (!is_homogeneous(g, out.set)) throw ContractError("EH witness failed the adjacency scan");
  if (static_cast<int>(out.set.vertices.size()) < ceil_power(g.n(), out.params.epsilon))
    throw ContractError("EH witness is smaller than n^epsilon");
  return out;
}

// ---------------------------------------------------------------- product colorings

using ProperColorer = std::function<std::vector<int>(const Graph&)>;

inline std::vector<int> greedy_degeneracy_colorer(const Graph& h) { return greedy_proper_colors(h, h.all()); }

struct ProductColoring {
  Coloring coloring;
  std::map<int, int> class_palette;  // base color -> palette of its subcoloring
  int classes = 0;                   // N(1): colors used by the base coloring
  int max_class_palette = 0;
  int bound() const { return classes * max_class_palette; }
};

/// c'(u) = (c(u), c_{c(u)}(u)) interned to dense ids in vertex order.
inline ProductColoring chi_product_coloring(const Graph& g, const Coloring& c,
                                            const ProperColorer& colorer = greedy_degeneracy_colorer) {
  c.check_fits(g);
  std::vector<int> sub_color(static_cast<std::size_t>(g.n()), 0);
  ProductColoring out;
  for (int col : c.colors_of(g.all())) {
    const auto h = induced_subgraph(g, c.color_class(col));
    const std::vector<int> local = colorer(h.graph);
    if (static_cast<int>(local.size()) != h.graph.n())
      throw Error("subcoloring of class " + std::to_string(col) + " has the wrong length");
    for (auto [u, v] : h.graph.edges())
      if (local[u] == local[v])
        throw Error("subcoloring of class " + std::to_string(col) + " is improper on edge " +
                    std::to_string(h.new_to_old[u]) + "-" + std::to_string(h.new_to_old[v]));
    std::vector<int> used(local);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    out.class_palette[col] = static_cast<int>(used.size());
    out.max_class_palette = std::max(out.max_class_palette, static_cast<int>(used.size()));
    for (int i = 0; i < h.graph.n(); ++i) sub_color[h.new_to_old[i]] = local[i];
  }
  out.classes = static_cast<int>(out.class_palette.size());
  std::map<std::pair<int, int>, int> ids;
  std::vector<int> colors;
  for (int v = 0; v < g.n(); ++v) {
    auto [it, fresh] = ids.emplace(std::make_pair(c[v], sub_color[v]), static_cast<int>(ids.size()) + 1);
    colors.push_back(it->second);
  }
  out.coloring = Coloring(std::max<int>(1, static_cast<int>(ids.size())), std::move(colors));
  for (auto [u, v] : g.edges())
    if (out.coloring[u] == out.coloring[v])
      throw ContractError("product coloring is improper on edge " + std::to_string(u) + "-" + std::to_string(v));
  return out;
}

}  // namespace lrw
