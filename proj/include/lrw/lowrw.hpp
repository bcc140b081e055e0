#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lrw/coloring.hpp"
#include "lrw/error.hpp"
#include "lrw/graph.hpp"
#include "lrw/orderings.hpp"
#include "lrw/parallel.hpp"
#include "lrw/width.hpp"

namespace lrw {

inline constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max();

inline std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

/// Rank-width budget 2(r+1)^(t+1) - 2 for the r-th power of a graph of tree-width <= t.
inline std::int64_t power_width_budget(int r, std::int64_t t) {
  std::int64_t p = 1;
  for (std::int64_t e = 0; e <= t; ++e) {
    p = saturating_mul(p, r + 1);
    if (p == kSaturated) return kSaturated;
  }
  return p > kSaturated / 2 ? kSaturated : 2 * p - 2;
}

/// Measured widths of a coloring against a budget Q(i), i = 1..p.
struct ColoringProfile {
  int p = 1;
  int palette = 0;               // N: colors used
  std::vector<std::int64_t> budget;  // budget[i - 1] = Q(i)
  std::int64_t product_constant = 0;  // d_r, 0 when not applicable
  std::vector<int> measured;     // measured[i - 1] = max width over unions of i classes
  std::vector<bool> exact;       // whether every width behind measured[i - 1] is exact
  bool verified = false;
  std::vector<int> worst_union;  // color set realising the first violation, if any
};

/// Enumerates the subsets of `items` of size 1..max_size in lexicographic order.
inline std::vector<std::vector<int>> subsets_up_to(const std::vector<int>& items, int max_size,
                                                   std::size_t limit = 20'000'000) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    for (std::size_t i = start; i < items.size(); ++i) {
      cur.push_back(items[i]);
      out.push_back(cur);
      if (out.size() > limit) throw CapacityError("too many color subsets to enumerate");
      if (static_cast<int>(cur.size()) < max_size) rec(i + 1);
      cur.pop_back();
    }
  };
  if (max_size >= 1) rec(0);
  return out;
}

inline std::vector<int> used_colors(const Coloring& c) {
  std::vector<int> used = c.colors();
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used;
}

struct TdVerification {
  bool verified = true;
  int checked = 0;
  std::vector<int> violating_colors;
  int violating_depth = 0;
};

/// Checks that every union of i <= p color classes induces tree-depth <= i.
inline TdVerification verify_td_coloring(const Graph& g, const Coloring& c, int p, int cap = kDefaultTreeDepthCap) {
  c.check_fits(g);
  if (g.n() > 64) throw CapacityError("verify_td_coloring supports at most 64 vertices");
  TreeDepthSolver solver(g);
  const auto used = used_colors(c);
  std::vector<Mask> class_mask(static_cast<std::size_t>(c.palette_size()) + 1, 0);
  for (int v = 0; v < g.n(); ++v) class_mask[c[v]] |= Mask{1} << v;
  const Mask all = mask_of(g.all());
  const int whole_upper = solver.greedy_upper(all);
  TdVerification out;
  for (const auto& s : subsets_up_to(used, p)) {
    const int i = static_cast<int>(s.size());
    ++out.checked;
    Mask u = 0;
    for (int col : s) u |= class_mask[col];
    const int size = std::popcount(u);
    if (size <= i || whole_upper <= i) continue;
    if (solver.greedy_upper(u) <= i) continue;
    if (size > cap)
      throw CapacityError("verify_td_coloring: a union of " + std::to_string(i) + " classes has " +
                          std::to_string(size) + " vertices, over the tree-depth cap of " + std::to_string(cap));
    const int td = solver.solve(u);
    if (td > i) {
      out.verified = false;
      out.violating_colors = s;
      out.violating_depth = td;
      return out;
    }
  }
  return out;
}

enum class TdStrategy { automatic, exact_small, wcol_greedy };

struct TdColoringOptions {
  TdStrategy strategy = TdStrategy::automatic;
  int exact_cap = 12;
  int td_cap = kDefaultTreeDepthCap;
  int max_retries = 3;
};

namespace detail {

class TdColoringSearch {
 public:
  TdColoringSearch(const Graph& g, int p) : g_(g), p_(p), solver_(g), colors_(static_cast<std::size_t>(g.n()), 0) {
    // BFS order keeps partial unions connected, which prunes earlier
    order_ = linear_order(g, OrderStrategy::bfs);
  }

  std::optional<std::vector<int>> run(int palette) {
    k_ = palette;
    class_mask_.assign(static_cast<std::size_t>(palette) + 1, 0);
    if (place(0, 0)) return colors_;
    return std::nullopt;
  }

 private:
  bool consistent(int color, int max_used) {
    // every union containing `color` of at most p used classes
    std::vector<int> others;
    for (int col = 1; col <= max_used; ++col)
      if (col != color) others.push_back(col);
    const int limit = std::min(p_, static_cast<int>(others.size()) + 1);
    bool ok = true;
    std::function<void(std::size_t, Mask, int)> rec = [&](std::size_t start, Mask u, int count) {
      if (!ok) return;
      if (std::popcount(u) > count && solver_.solve(u) > count) {
        ok = false;
        return;
      }
      if (count == limit) return;
      for (std::size_t i = start; i < others.size() && ok; ++i) rec(i + 1, u | class_mask_[others[i]], count + 1);
    };
    rec(0, class_mask_[color], 1);
    return ok;
  }

  bool place(std::size_t idx, int max_used) {
    if (idx == order_.size()) return true;
    const int v = order_[idx];
    const int top = std::min(k_, max_used + 1);
    for (int col = 1; col <= top; ++col) {
      class_mask_[col] |= Mask{1} << v;
      colors_[v] = col;
      if (consistent(col, std::max(max_used, col)) && place(idx + 1, std::max(max_used, col))) return true;
      class_mask_[col] &= ~(Mask{1} << v);
      colors_[v] = 0;
    }
    return false;
  }

  const Graph& g_;
  int p_;
  int k_ = 0;
  TreeDepthSolver solver_;
  std::vector<int> order_;
  std::vector<int> colors_;
  std::vector<Mask> class_mask_;
};

inline Coloring wcol_greedy_candidate(const Graph& g, int radius) {
  const WcolResult h = wcol_heuristic(g, radius);
  std::vector<int> color(static_cast<std::size_t>(g.n()), 0);
  for (int v : h.order.order()) {
    VertexSet reach = wreach(g, h.order, radius, v);
    reach.reset(v);
    std::vector<char> used(static_cast<std::size_t>(g.n()) + 2, 0);
    reach.for_each([&](int u) { used[color[u]] = 1; });
    int k = 1;
    while (used[k]) ++k;
    color[v] = k;
  }
  return Coloring::from_colors(std::move(color));
}

}  // namespace detail

/// p-tree-depth coloring: every union of i <= p classes has tree-depth <= i.
///
/// exact_small searches palettes 1, 2, ... by backtracking with tree-depth pruning.
/// wcol_greedy colors each v away from WReach_{2^p}[G,L,v], doubling the radius
/// when verification fails; after the retries it falls back to the injective
/// coloring. Whatever is returned has passed verify_td_coloring.
inline Coloring treedepth_coloring(const Graph& g, int p, const TdColoringOptions& opts = {}) {
  if (p < 1) throw Error("treedepth_coloring needs p >= 1");
  if (g.n() > 64) throw CapacityError("treedepth_coloring supports at most 64 vertices");
  TdStrategy strategy = opts.strategy;
  if (strategy == TdStrategy::automatic)
    strategy = g.n() <= opts.exact_cap ? TdStrategy::exact_small : TdStrategy::wcol_greedy;
  if (p == 1) return greedy_proper_coloring(g);
  if (strategy == TdStrategy::exact_small) {
    if (g.n() > opts.exact_cap)
      throw CapacityError("exact tree-depth coloring is limited to " + std::to_string(opts.exact_cap) + " vertices");
    detail::TdColoringSearch search(g, p);
    for (int k = 1; k <= g.n(); ++k)
      if (auto colors = search.run(k)) {
        Coloring c(k, std::move(*colors));
        if (!verify_td_coloring(g, c, p, opts.td_cap).verified) throw ContractError("exact tree-depth search returned an invalid coloring");
        return c;
      }
    throw ContractError("no tree-depth coloring found");
  }
  std::int64_t radius = p >= 6 ? g.n() : std::min<std::int64_t>(std::int64_t{1} << p, g.n());
  radius = std::max<std::int64_t>(radius, 1);
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    Coloring c = detail::wcol_greedy_candidate(g, static_cast<int>(radius));
    if (verify_td_coloring(g, c, p, opts.td_cap).verified) return c;
    radius = std::min<std::int64_t>(radius * 2, g.n());
  }
  std::vector<int> distinct(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) distinct[v] = v + 1;
  Coloring c(g.n(), std::move(distinct));
  if (!verify_td_coloring(g, c, p, opts.td_cap).verified) throw ContractError("injective coloring failed verification");
  return c;
}

struct WidthOptions {
  int exact_cap = kDefaultRankWidthCap;
  int threads = 1;
};

/// Measures the rank-width of every union of i <= p classes against Q(i).
///
/// Components up to exact_cap vertices are solved exactly; larger ones get a
/// caterpillar upper bound and the entry is flagged inexact.
inline ColoringProfile verify_low_rw_coloring(const Graph& h, const Coloring& c, int p,
                                              const std::function<std::int64_t(int)>& budget,
                                              const WidthOptions& opts = {}) {
  c.check_fits(h);
  if (p < 1) throw Error("p must be >= 1");
  ColoringProfile prof;
  prof.p = p;
  prof.palette = c.used_count();
  for (int i = 1; i <= p; ++i) prof.budget.push_back(budget(i));
  prof.measured.assign(static_cast<std::size_t>(p), 0);
  prof.exact.assign(static_cast<std::size_t>(p), true);

  const auto subsets = subsets_up_to(used_colors(c), p);
  struct Slot {
    int width = 0;
    bool exact = true;
  };
  std::vector<Slot> slots(subsets.size());
  const int workers = std::max(opts.threads, 1);
  std::vector<std::unordered_map<VertexSet, std::pair<int, bool>, VertexSetHash>> memo(
      static_cast<std::size_t>(workers));
  parallel_for(subsets.size(), workers, [&](std::size_t idx, std::size_t worker) {
    const VertexSet u = c.class_union(subsets[idx]);
    Slot slot;
    for (const auto& comp : components(h, u)) {
      if (comp.count() <= 1) continue;
      auto& cache = memo[worker];
      auto it = cache.find(comp);
      if (it == cache.end()) {
        const auto sub = induced_subgraph(h, comp);
        const WidthReport rep = rank_width_best(sub.graph, opts.exact_cap);
        it = cache.emplace(comp, std::make_pair(rep.value, rep.method == WidthMethod::exact)).first;
      }
      slot.width = std::max(slot.width, it->second.first);
      slot.exact = slot.exact && it->second.second;
    }
    slots[idx] = slot;
  });
  prof.verified = true;
  for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
    const std::size_t i = subsets[idx].size() - 1;
    prof.measured[i] = std::max(prof.measured[i], slots[idx].width);
    if (!slots[idx].exact) prof.exact[i] = false;
    if (slots[idx].width > prof.budget[i] && prof.verified) {
      prof.verified = false;
      prof.worst_union = subsets[idx];
    }
  }
  return prof;
}

struct LowRwResult {
  Coloring coloring;           // refined coloring c' of V(G), to be read on G^r
  Coloring treedepth;          // base coloring c
  RefinementColoring refinement;
  ColoringProfile profile;     // budget filled, measurements empty until verified
  std::vector<int> wcol_per_radius;  // radius 2..r
};

/// Low rank-width coloring of G^r: a (d_r * p)-tree-depth coloring refined excellently.
inline LowRwResult low_rankwidth_coloring_of_power(const Graph& g, int r, int p, const TdColoringOptions& td_opts = {}) {
  if (r < 2) throw Error("low_rankwidth_coloring_of_power needs r >= 2");
  if (p < 1) throw Error("p must be >= 1");
  LowRwResult out;
  std::vector<LinearOrder> orders;
  std::int64_t d = 1;
  for (int radius = 2; radius <= r; ++radius) {
    WcolResult h = wcol_heuristic(g, radius);
    out.wcol_per_radius.push_back(h.value);
    d = saturating_mul(d, 2 * h.value);
    orders.push_back(std::move(h.order));
  }
  const std::int64_t td_classes = saturating_mul(d, p);
  const int td_p = static_cast<int>(std::min<std::int64_t>(td_classes, std::max(g.n(), 1)));
  // unions of more than n classes never occur, so p beyond n adds nothing
  out.treedepth = treedepth_coloring(g, std::max(td_p, 1), td_opts);
  out.refinement = excellent_refinement(g, out.treedepth, r, orders);
  out.coloring = out.refinement.refined();
  out.profile.p = p;
  out.profile.palette = out.coloring.used_count();
  out.profile.product_constant = d;
  for (int i = 1; i <= p; ++i) out.profile.budget.push_back(power_width_budget(r, saturating_mul(d, i)));
  return out;
}

}  // namespace lrw
