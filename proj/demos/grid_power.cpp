// Colors the square of a grid so that unions of at most p classes have small rank-width.
#include <cstdio>
#include <cstdlib>

#include <lrw/lrw.hpp>

int main(int argc, char** argv) {
  const int a = argc > 1 ? std::atoi(argv[1]) : 4;
  const int b = argc > 2 ? std::atoi(argv[2]) : 4;
  const int r = 2, p = 2;
  const lrw::Graph g = lrw::grid_graph(a, b);
  const lrw::LowRwResult res = lrw::low_rankwidth_coloring_of_power(g, r, p);
  const auto budget = res.profile.budget;
  const auto prof = lrw::verify_low_rw_coloring(lrw::power(g, r), res.coloring, p,
                                                [&](int i) { return budget[static_cast<std::size_t>(i - 1)]; });
  std::printf("grid %dx%d, r=%d, p=%d: %d colors\n", a, b, r, p, prof.palette);
  for (int i = 1; i <= p; ++i)
    std::printf("  unions of %d classes: width %d%s, budget %lld\n", i, prof.measured[i - 1],
                prof.exact[i - 1] ? "" : " (upper bound)", static_cast<long long>(prof.budget[i - 1]));
  std::printf("%s\n", prof.verified ? "verified" : "NOT verified");
  return prof.verified ? 0 : 1;
}
