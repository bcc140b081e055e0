#include <doctest.h>

#include "oracles.hpp"

using namespace lrw;

TEST_CASE("verify_decomposition") {
  const Graph k2 = complete_graph(2);
  CHECK(verify_decomposition(k2, caterpillar({0, 1})) == 1);
  CHECK(verify_decomposition(edgeless_graph(4), caterpillar({2, 0, 3, 1})) == 0);
  const Graph c4 = cycle_graph(4);
  CHECK(verify_decomposition(c4, caterpillar({0, 1, 2, 3})) == 2);

  RankDecomposition bad = caterpillar({0, 1, 2, 3});
  bad.leaf_of_vertex[1] = bad.leaf_of_vertex[0];
  CHECK_THROWS_AS(verify_decomposition(c4, bad), DecompositionError);

  RankDecomposition deg = caterpillar({0, 1, 2});
  deg.edges.emplace_back(deg.node_count, deg.leaf_of_vertex[0]);
  ++deg.node_count;
  CHECK_THROWS_AS(verify_decomposition(path_graph(3), deg), DecompositionError);
}

TEST_CASE("rank_width_exact ground truths") {
  const auto single = rank_width_exact(Graph(1, {}));
  CHECK(single.value == 0);
  CHECK_FALSE(single.decomposition.has_value());
  for (int n = 2; n <= 8; ++n) {
    CHECK(rank_width_exact(complete_graph(n)).value == 1);
    CHECK(oracle::rank_width(complete_graph(n)) == 1);
    CHECK(rank_width_exact(path_graph(n)).value == 1);
  }
  CHECK(rank_width_exact(cycle_graph(5)).value == 2);
  CHECK(oracle::rank_width(cycle_graph(5)) == 2);
  CHECK_THROWS_AS(rank_width_exact(path_graph(13)), CapacityError);
}

TEST_CASE("rank_width_exact matches tree enumeration") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);  // 3..7
    const Graph g = oracle::random_graph(n, 0.5, seed);
    const auto rep = rank_width_exact(g);
    CAPTURE(seed);
    CHECK(rep.method == WidthMethod::exact);
    CHECK(rep.value == oracle::rank_width(g));
    REQUIRE(rep.decomposition.has_value());
    CHECK(verify_decomposition(g, *rep.decomposition) == rep.value);
  }
  // a few at n = 8
  for (std::uint64_t seed = 100; seed < 103; ++seed) {
    const Graph g = oracle::random_graph(8, 0.5, seed);
    CHECK(rank_width_exact(g).value == oracle::rank_width(g));
  }
}

TEST_CASE("upper bounds and monotonicity") {
  CHECK(rank_width_upper(path_graph(7), OrderStrategy::identity).value == 1);
  CHECK(rank_width_upper(complete_graph(6), OrderStrategy::bfs).value == 1);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = oracle::random_graph(7, 0.4, seed);
    const int exact = rank_width_exact(g).value;
    for (auto s : {OrderStrategy::identity, OrderStrategy::bfs, OrderStrategy::greedy_cut}) {
      const auto up = rank_width_upper(g, s);
      CHECK(up.method == WidthMethod::upper_bound);
      CHECK(up.value >= exact);
      CHECK(verify_decomposition(g, *up.decomposition) == up.value);
    }
    CHECK(exact <= tree_depth_exact(g));
  }
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = oracle::random_graph(8, 0.5, seed);
    const int whole = rank_width_exact(g).value;
    for (int t = 0; t < 5; ++t) {
      const Mask x = (rng() & 0xFF) | 1;
      const auto sub = induced_subgraph(g, set_of(8, x));
      CHECK(rank_width_exact(sub.graph).value <= whole);
    }
  }
}

TEST_CASE("balanced_partition") {
  auto check = [](const Graph& g, const VertexSet& c, const RankDecomposition& d) {
    const auto bp = balanced_partition(g, c, d);
    const int cs = c.count();
    const int in_x = (bp.x & c).count(), in_y = (bp.y & c).count();
    CHECK(3 * in_x >= cs);
    CHECK(3 * in_y >= cs);
    CHECK(3 * in_x <= 2 * cs);
    CHECK((bp.x | bp.y) == g.all());
    CHECK_FALSE(bp.x.intersects(bp.y));
    CHECK(cutrank(g, bp.x) <= verify_decomposition(g, d));
    return bp;
  };
  const Graph p4 = path_graph(4);
  const auto bp = check(p4, p4.all(), caterpillar({0, 1, 2, 3}));
  CHECK((bp.x & p4.all()).count() == 2);

  const Graph g = random_gnp(8, 0.5, 2);
  const VertexSet three(8, {1, 4, 6});
  check(g, three, caterpillar({0, 1, 2, 3, 4, 5, 6, 7}));
  CHECK_THROWS(balanced_partition(g, VertexSet(8, {1, 2}), caterpillar({0, 1, 2, 3, 4, 5, 6, 7})));

  const Graph h = h_graph(2, 2).graph;
  const auto ex = rank_width_exact(h);
  const auto hb = check(h, h.all(), *ex.decomposition);
  CHECK(cutrank(h, hb.x) <= ex.value);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph r = random_gnp(11, 0.35, seed);
    const auto rep = rank_width_exact(r);
    check(r, r.all(), *rep.decomposition);
    check(r, VertexSet(11, {0, 2, 3, 5, 8}), *rep.decomposition);
  }
}

TEST_CASE("tree_depth_exact") {
  CHECK(tree_depth_exact(Graph(1, {})) == 1);
  CHECK(tree_depth_exact(complete_graph(2)) == 2);
  CHECK(tree_depth_exact(path_graph(4)) == 3);
  CHECK(oracle::tree_depth(path_graph(4)) == 3);
  CHECK(tree_depth_exact(path_graph(7)) == 3);
  CHECK(tree_depth_exact(complete_graph(6)) == 6);
  CHECK_THROWS_AS(tree_depth_exact(path_graph(15)), CapacityError);

  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    const Graph g = oracle::random_graph(n, 0.35, seed);
    const int td = tree_depth_exact(g);
    CAPTURE(seed);
    CHECK(td == oracle::tree_depth(g));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> e;
    for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
    CHECK(tree_depth_exact(Graph(n, e)) == td);
  }
}
