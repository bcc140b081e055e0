#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace lrw;

namespace {

Coloring random_coloring(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (auto& x : c) x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k));
  return Coloring(k, c);
}

// Smallest k admitting a coloring whose unions of i <= p classes have tree-depth <= i.
int min_td_palette(const Graph& g, int p) {
  const int n = g.n();
  for (int k = 1; k <= n; ++k) {
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    bool found = false;
    std::function<void(int)> rec = [&](int v) {
      if (found) return;
      if (v == n) {
        bool ok = true;
        for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << k) && ok; ++pick) {
          const int i = std::popcount(pick);
          if (i > p) continue;
          std::uint64_t s = 0;
          for (int u = 0; u < n; ++u)
            if ((pick >> (c[u] - 1)) & 1U) s |= std::uint64_t{1} << u;
          std::map<std::uint64_t, int> memo;
          if (s && oracle::tree_depth(g, s, memo) > i) ok = false;
        }
        found = ok;
        return;
      }
      for (int col = 1; col <= k; ++col) {
        c[v] = col;
        rec(v + 1);
      }
    };
    rec(0);
    if (found) return k;
  }
  return n;
}

}  // namespace

TEST_CASE("good_refinement on small examples") {
  const Graph e = edgeless_graph(5);
  const Coloring base(3, {1, 2, 3, 1, 2});
  const auto R = good_refinement(e, base, 2, LinearOrder::identity(5));
  CHECK(R.refined().used_count() == 3);
  for (int v = 0; v < 5; ++v) CHECK(R.levels[0].decode_of(R.refined()[v]) == std::vector<int>{base[v]});

  const Graph p3 = path_graph(3);
  const auto P = good_refinement(p3, Coloring::constant(3), 2, LinearOrder({1, 0, 2}));
  for (const auto& d : P.levels[0].decode) CHECK(d == std::vector<int>{1});
  const VertexSet x(3, {0, 2});
  const VertexSet xp = expand_good(P, x);
  CHECK(xp.count() == 3);
  CHECK(is_hitter(p3, x, xp, 2));

  CHECK_THROWS(good_refinement(p3, Coloring::constant(3), 1, LinearOrder::identity(3)));
}

TEST_CASE("good_refinement bounds on random graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = random_gnp(20, 0.15, seed);
    const Coloring c = random_coloring(20, 3, seed + 100);
    for (int r : {2, 3}) {
      const auto h = wcol_heuristic(g, r);
      const auto R = good_refinement(g, c, r, h.order);
      const auto& level = R.levels[0];
      CHECK(level.wcol == wcol_of_order(g, h.order, r));
      CHECK(static_cast<long double>(R.refined().used_count()) <= std::pow(3.0L, 2 * level.wcol));
      for (int v = 0; v < g.n(); ++v) {
        const auto& d = level.decode_of(R.refined()[v]);
        CHECK(static_cast<int>(d.size()) <= level.budget());
        CHECK(std::binary_search(d.begin(), d.end(), c[v]));
      }
      std::mt19937_64 rng(seed);
      for (int t = 0; t < 30; ++t) {
        const VertexSet x = set_of(20, rng() & rng() & 0xFFFFF);
        const VertexSet xp = expand_good(R, x);
        CHECK(x.is_subset_of(xp));
        CHECK(is_hitter(g, x, xp, r));
        CHECK(oracle::hitter(g, x.to_vector(), xp.to_vector(), r));
        const int refined_on_x = static_cast<int>(R.refined().colors_of(x).size());
        CHECK(static_cast<int>(c.colors_of(xp).size()) <= level.budget() * refined_on_x);
      }
    }
  }
  CHECK(expand_good(good_refinement(path_graph(4), Coloring::constant(4), 2, LinearOrder::identity(4)),
                    VertexSet(4))
            .none());
}

TEST_CASE("is_hitter and is_closure") {
  const Graph p3 = path_graph(3);
  const VertexSet x(3, {0, 2});
  CHECK_FALSE(is_hitter(p3, x, x, 2));
  CHECK(is_hitter(p3, x, p3.all(), 2));
  CHECK(is_hitter(complete_graph(4), complete_graph(4).all(), complete_graph(4).all(), 3));
  CHECK_FALSE(is_closure(p3, x, x, 2));
  CHECK(is_closure(p3, x, p3.all(), 2));
  CHECK_THROWS(is_hitter(p3, p3.all(), x, 2));
  CHECK_THROWS(is_closure(p3, p3.all(), x, 2));

  const Graph c6 = cycle_graph(6);
  const VertexSet ends(6, {0, 3});
  CHECK(is_hitter(c6, ends, VertexSet(6, {0, 1, 3}), 3));
  CHECK(is_hitter(c6, ends, VertexSet(6, {0, 2, 3}), 3));
  CHECK_FALSE(is_hitter(c6, ends, ends, 3));

  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_gnp(10, 0.25, seed);
    const VertexSet a = set_of(10, rng() & 0x3FF);
    const VertexSet b = a | set_of(10, rng() & 0x3FF);
    for (int r = 2; r <= 4; ++r) {
      const bool h = is_hitter(g, a, b, r), cl = is_closure(g, a, b, r);
      CHECK(h == oracle::hitter(g, a.to_vector(), b.to_vector(), r));
      CHECK(cl == oracle::closure(g, a.to_vector(), b.to_vector(), r));
      if (cl) CHECK(h);
      CHECK(is_closure(g, a, g.all(), r));
    }
  }
}

TEST_CASE("excellent_refinement") {
  const Graph g = random_gnp(14, 0.2, 9);
  const Coloring c = random_coloring(14, 3, 2);
  const auto o2 = wcol_heuristic(g, 2).order;
  const auto o3 = wcol_heuristic(g, 3).order;
  const auto good = good_refinement(g, c, 2, o2);
  const auto ex2 = excellent_refinement(g, c, 2, {o2});
  CHECK(ex2.refined() == good.refined());
  CHECK(ex2.levels[0].decode == good.levels[0].decode);
  CHECK_THROWS(excellent_refinement(g, c, 3, {o2}));

  const Graph p4 = path_graph(4);
  const auto R = excellent_refinement(p4, Coloring::constant(4), 3,
                                      {wcol_heuristic(p4, 2).order, wcol_heuristic(p4, 3).order});
  for (Mask m = 0; m < 16; ++m) {
    const VertexSet x = set_of(4, m);
    CHECK(is_closure(p4, x, expand_excellent(R, x), 3));
  }
  CHECK(expand_excellent(R, VertexSet(4)).none());

  const auto E = excellent_refinement(g, c, 3, {o2, o3});
  const long double d = E.product_constant();
  CHECK(static_cast<long double>(E.refined().used_count()) <= std::pow(3.0L, d));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const VertexSet x = set_of(14, rng() & rng() & 0x3FFF);
    const VertexSet xpp = expand_excellent(E, x);
    CHECK(is_closure(g, x, xpp, 3));
    if (x.any()) CHECK(oracle::closure(g, x.to_vector(), xpp.to_vector(), 3));
    const auto q = static_cast<long double>(E.refined().colors_of(x).size());
    CHECK(static_cast<long double>(c.colors_of(xpp).size()) <= d * q);
  }
  const auto r2 = excellent_refinement(g, c, 2, {o2});
  const VertexSet some(14, {1, 5, 9});
  CHECK(expand_excellent(r2, some) == expand_good(r2, some));
}

TEST_CASE("treedepth_coloring and verify_td_coloring") {
  const Graph g = random_gnp(15, 0.3, 1);
  const Coloring one = treedepth_coloring(g, 1);
  CHECK(is_proper(g, one));
  CHECK(verify_td_coloring(g, one, 1).verified);

  const Graph p4 = path_graph(4);
  const Coloring c = treedepth_coloring(p4, 2);
  CHECK(c.used_count() == 3);
  CHECK(min_td_palette(p4, 2) == 3);
  CHECK(verify_td_coloring(p4, c, 2).verified);

  const Graph k4 = complete_graph(4);
  CHECK(treedepth_coloring(k4, 2).used_count() == 4);
  CHECK(min_td_palette(k4, 2) == 4);

  CHECK_FALSE(verify_td_coloring(p4, Coloring::constant(4), 1).verified);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph h = random_degenerate(9, 2, seed);
    const Coloring small = treedepth_coloring(h, 2, {TdStrategy::exact_small});
    CHECK(small.used_count() == min_td_palette(h, 2));
    const Coloring greedy = treedepth_coloring(h, 3, {TdStrategy::wcol_greedy});
    CHECK(verify_td_coloring(h, greedy, 3).verified);
  }
}

TEST_CASE("power_width_budget") {
  CHECK(power_width_budget(2, 2) == 52);
  CHECK(power_width_budget(1, 1) == 6);
  CHECK(power_width_budget(2, 1000) == kSaturated);
}

TEST_CASE("verify_low_rw_coloring") {
  const Graph e = edgeless_graph(6);
  const auto prof = verify_low_rw_coloring(e, Coloring(2, {1, 2, 1, 2, 1, 2}), 2, [](int) { return 0; });
  CHECK(prof.verified);
  CHECK(prof.measured == std::vector<int>{0, 0});

  const auto h = h_graph(5, 3);
  const auto hp = verify_low_rw_coloring(h.graph, row_coloring(5, 3, 2), 2, [](int i) { return 3 * i; });
  CHECK(hp.verified);
  CHECK(hp.measured[1] <= 6);
  CHECK(hp.exact[1]);

  const auto bad = verify_low_rw_coloring(complete_graph(5), Coloring::constant(5), 1, [](int) { return 0; });
  CHECK_FALSE(bad.verified);
  CHECK(bad.measured[0] == 1);
}

TEST_CASE("low_rankwidth_coloring_of_power") {
  const Graph p6 = path_graph(6);
  const auto res = low_rankwidth_coloring_of_power(p6, 2, 1);
  const Graph sq = power(p6, 2);
  for (int col : res.coloring.colors_of(p6.all())) {
    const VertexSet x = res.coloring.color_class(col);
    const VertexSet xpp = expand_excellent(res.refinement, x);
    const Graph lhs = induced_subgraph(sq, x).graph;
    const auto inner = induced_subgraph(p6, xpp);
    const Graph rhs_pow = power(inner.graph, 2);
    std::vector<int> ids;
    x.for_each([&](int v) { ids.push_back(inner.old_to_new[v]); });
    CHECK(lhs == induced_subgraph(rhs_pow, ids).graph);
  }

  const Graph grid = grid_graph(4, 4);
  const auto gr = low_rankwidth_coloring_of_power(grid, 2, 2);
  const auto budget = gr.profile.budget;
  const auto prof = verify_low_rw_coloring(power(grid, 2), gr.coloring, 2,
                                           [&](int i) { return budget[static_cast<std::size_t>(i - 1)]; });
  CHECK(prof.verified);
  CHECK(gr.profile.product_constant == 2 * gr.wcol_per_radius[0]);
  CHECK(verify_td_coloring(grid, gr.treedepth, static_cast<int>(std::min<std::int64_t>(
                                                  gr.profile.product_constant * 2, grid.n())))
            .verified);
  CHECK_THROWS(low_rankwidth_coloring_of_power(grid, 1, 2));
}
