#include <doctest.h>

#include "oracles.hpp"

using namespace lrw;

namespace {

std::vector<int> positions(const LinearOrder& L) {
  std::vector<int> pos(static_cast<std::size_t>(L.size()));
  for (int i = 0; i < L.size(); ++i) pos[L.at(i)] = i;
  return pos;
}

}  // namespace

TEST_CASE("LinearOrder") {
  const LinearOrder L({2, 0, 1});
  CHECK(L.position(2) == 0);
  CHECK(L.at(2) == 1);
  CHECK(L.less(0, 1));
  CHECK_THROWS(LinearOrder({0, 0, 1}));
}

TEST_CASE("wreach examples") {
  const Graph p3 = path_graph(3);
  const LinearOrder L({1, 0, 2});
  CHECK(wreach(p3, L, 0, 2).to_vector() == std::vector<int>{2});
  CHECK(wreach(p3, L, 2, 2).to_vector() == std::vector<int>{1, 2});
  CHECK(wcol_of_order(p3, L, 2) == 2);

  const Graph k3 = complete_graph(3);
  const LinearOrder id = LinearOrder::identity(3);
  CHECK(wreach(k3, id, 1, 2).count() == 3);
  CHECK(wcol_of_order(edgeless_graph(5), LinearOrder::identity(5), 3) == 1);
  CHECK(wcol_of_order(complete_graph(6), LinearOrder({3, 1, 5, 0, 2, 4}), 1) == 6);
}

TEST_CASE("wreach matches path enumeration") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_graph(9, 0.3, seed);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const LinearOrder L(perm);
    const auto pos = positions(L);
    for (int r = 0; r <= 4; ++r)
      for (int v = 0; v < g.n(); ++v) {
        const auto got = wreach(g, L, r, v);
        const auto want = oracle::wreach(g, pos, r, v);
        CHECK(got.to_vector() == std::vector<int>(want.begin(), want.end()));
        CHECK(got.test(v));
        got.for_each([&](int u) { CHECK(L.position(u) <= L.position(v)); });
        if (r > 0) CHECK(wreach(g, L, r - 1, v).is_subset_of(got));
      }
    for (int r = 1; r <= 3; ++r) CHECK((wcol_of_order(g, L, r) == 1) == (g.edge_count() == 0));
  }
}

TEST_CASE("wcol_exact") {
  for (int r = 1; r <= 4; ++r) CHECK(wcol_exact(path_graph(3), r).value == 2);
  const auto star = wcol_exact(star_graph(3), 1);
  CHECK(star.value == 2);
  for (int n = 1; n <= 6; ++n) CHECK(wcol_exact(complete_graph(n), 2).value == n);
  CHECK_THROWS_AS(wcol_exact(path_graph(10), 2), CapacityError);

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 4 + static_cast<int>(seed % 3);  // 4..6
    const Graph g = oracle::random_graph(n, 0.4, seed);
    for (int r = 1; r <= 3; ++r) {
      const auto ex = wcol_exact(g, r);
      CAPTURE(seed);
      CAPTURE(r);
      CHECK(ex.value == oracle::wcol(g, r));
      CHECK(wcol_of_order(g, ex.order, r) == ex.value);
      CHECK(wcol_heuristic(g, r).value >= ex.value);
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(7, 0.35, seed);
    for (int r = 1; r <= 3; ++r) CHECK(wcol_heuristic(g, r).value >= wcol_exact(g, r).value);
  }
}

TEST_CASE("wcol_heuristic") {
  CHECK(wcol_heuristic(edgeless_graph(7), 3).value == 1);
  const auto grid = wcol_heuristic(grid_graph(5, 5), 2);
  CHECK(grid.value == 7);  // regression snapshot
  CHECK(grid.value <= 10);
  CHECK(wcol_of_order(grid_graph(5, 5), grid.order, 2) == grid.value);
  CHECK(wcol_heuristic(grid_graph(5, 5), 2).order.order() == grid.order.order());
}
