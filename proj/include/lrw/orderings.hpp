#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/error.hpp"
#include "lrw/graph.hpp"

namespace lrw {

/// A linear order of V(G): `order[i]` is the vertex at position i.
class LinearOrder {
 public:
  LinearOrder() = default;
  explicit LinearOrder(std::vector<int> order) : order_(std::move(order)), position_(order_.size(), -1) {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const int v = order_[i];
      if (v < 0 || v >= static_cast<int>(order_.size()) || position_[v] != -1)
        throw Error("linear order is not a permutation (entry " + std::to_string(i) + ")");
      position_[v] = static_cast<int>(i);
    }
  }

  static LinearOrder identity(int n) {
    std::vector<int> o(static_cast<std::size_t>(n));
    std::iota(o.begin(), o.end(), 0);
    return LinearOrder(std::move(o));
  }

  int size() const { return static_cast<int>(order_.size()); }
  int position(int v) const { return position_[v]; }
  int at(int i) const { return order_[i]; }
  bool less(int u, int v) const { return position_[u] < position_[v]; }
  const std::vector<int>& order() const { return order_; }

  /// Vertices strictly after v.
  VertexSet after(int v) const {
    VertexSet s(size());
    for (std::size_t i = static_cast<std::size_t>(position_[v]) + 1; i < order_.size(); ++i) s.set(order_[i]);
    return s;
  }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;

 private:
  std::vector<int> order_;
  std::vector<int> position_;
};

/// WReach_r[G, L, v]: vertices u that are the L-minimum of some u-v path of length at most r.
///
/// For each candidate u before v, a depth-bounded search from v restricted to
/// vertices not smaller than u decides reachability.
inline VertexSet wreach(const Graph& g, const LinearOrder& order, int r, int v) {
  if (r < 0) throw Error("wreach radius must be >= 0");
  VertexSet result(g.n());
  result.set(v);
  if (r == 0) return result;
  // only vertices within distance r can qualify
  const VertexSet near = ball(g, v, r, g.all());
  VertexSet at_least(g.n());  // vertices >=_L u, grown as u walks down the order
  for (int i = g.n() - 1; i >= 0; --i) {
    const int u = order.at(i);
    at_least.set(u);
    if (order.position(u) >= order.position(v) || !near.test(u)) continue;
    if (ball(g, v, r, at_least).test(u)) result.set(u);
  }
  return result;
}

inline int wcol_of_order(const Graph& g, const LinearOrder& order, int r) {
  int best = 0;
  for (int v = 0; v < g.n(); ++v) best = std::max(best, wreach(g, order, r, v).count());
  return best;
}

struct WcolResult {
  int value = 0;
  LinearOrder order;
};

inline constexpr int kWcolExactCap = 9;

namespace detail {

class WcolSearch {
 public:
  WcolSearch(const Graph& g, int r, int upper, std::vector<int> upper_order)
      : g_(g), r_(r), best_(upper), best_order_(std::move(upper_order)), placed_(g.n()) {}

  void run() {
    std::vector<int> prefix;
    descend(prefix, 0);
  }
  int best() const { return best_; }
  const std::vector<int>& best_order() const { return best_order_; }

 private:
  // |WReach(v)| when v is appended after `prefix`; every unplaced vertex ends up after v
  int reach_size(const std::vector<int>& prefix, int v) const {
    int size = 1;
    VertexSet allowed = placed_.complement();  // unplaced, includes v
    const VertexSet near = ball(g_, v, r_, g_.all());
    // walk u from the end of the prefix backwards so "placed after u" accumulates
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
      const int u = *it;
      allowed.set(u);
      if (near.test(u) && ball(g_, v, r_, allowed).test(u)) ++size;
    }
    return size;
  }

  void descend(std::vector<int>& prefix, int current) {
    const int n = g_.n();
    if (static_cast<int>(prefix.size()) == n) {
      if (current < best_) {
        best_ = current;
        best_order_ = prefix;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (placed_.test(v)) continue;
      const int size = reach_size(prefix, v);
      const int next = std::max(current, size);
      if (next >= best_) continue;
      placed_.set(v);
      prefix.push_back(v);
      descend(prefix, next);
      prefix.pop_back();
      placed_.reset(v);
    }
  }

  const Graph& g_;
  int r_;
  int best_;
  std::vector<int> best_order_;
  VertexSet placed_;
};

}  // namespace detail

/// Degeneracy-style order: repeatedly place last the remaining vertex with the fewest
/// remaining vertices reachable by paths of length <= r whose interior is already placed.
/// Ties go to the smallest vertex id.
inline WcolResult wcol_heuristic(const Graph& g, int r) {
  const int n = g.n();
  VertexSet remaining = g.all();
  std::vector<int> reversed;
  reversed.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    int pick_weight = kUnreachable;
    remaining.for_each([&](int v) {
      // interior may only use already placed (= later) vertices
      VertexSet through = remaining.complement();
      through.set(v);
      VertexSet reach(n);
      VertexSet frontier(n);
      frontier.set(v);
      VertexSet seen = frontier;
      for (int d = 0; d < r && frontier.any(); ++d) {
        VertexSet next(n);
        frontier.for_each([&](int u) { next |= g.row(u); });
        next.subtract(seen);
        seen |= next;
        reach |= next & remaining;
        frontier = next & through;
      }
      const int weight = reach.count();
      if (weight < pick_weight) {
        pick_weight = weight;
        pick = v;
      }
    });
    remaining.reset(pick);
    reversed.push_back(pick);
  }
  std::reverse(reversed.begin(), reversed.end());
  LinearOrder order(std::move(reversed));
  const int value = wcol_of_order(g, order, r);
  return {value, std::move(order)};
}

/// Exact wcol_r by branch and bound over vertex placements; |V(G)| <= cap.
inline WcolResult wcol_exact(const Graph& g, int r, int cap = kWcolExactCap) {
  if (g.n() > cap)
    throw CapacityError("wcol_exact: " + std::to_string(g.n()) + " vertices exceeds the cap of " +
                        std::to_string(cap) + "; use wcol_heuristic instead");
  WcolResult start = wcol_heuristic(g, r);
  detail::WcolSearch search(g, r, start.value, start.order.order());
  search.run();
  return {search.best(), LinearOrder(search.best_order())};
}

}  // namespace lrw
