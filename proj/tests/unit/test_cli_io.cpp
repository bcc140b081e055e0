#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using namespace lrw;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("lrw_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) { return read_file(path); }

void put(const std::string& path, const std::string& text) { write_file(path, text); }

std::string golden(const std::string& name) { return slurp(std::string(LRW_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST_CASE("edge list round trip") {
  std::vector<Graph> graphs{path_graph(1), cycle_graph(5), grid_graph(3, 4), h_graph(3, 3).graph,
                            h_tilde(2, 4).graph, twisted_chain(3).graph, complete_graph(7)};
  for (std::uint64_t s = 0; s < 20; ++s) {
    graphs.push_back(random_degenerate(30, 3, s));
    graphs.push_back(random_gnp(17, 0.3, s));
    graphs.push_back(random_cograph(12, s));
  }
  for (const Graph& g : graphs) {
    const std::string text = serialize_edge_list(g);
    const Graph back = parse_edge_list(text);
    CHECK(oracle::same_edges(back, g));
    CHECK(serialize_edge_list(back) == text);
  }
  CHECK(serialize_edge_list(path_graph(3)) == "3 2\n0 1\n1 2\n");
}

TEST_CASE("edge list parse errors") {
  CHECK(parse_edge_list("# comment\n3 1\n# more\n0 2\n").edge_count() == 1);
  CHECK(parse_edge_list("4 0\n").n() == 4);
  for (const char* bad : {"3 2\n1 2\n0 1\n", "3 2\n0 1\n0 1\n", "3 1\n1 0\n", "3 1\n1 1\n", "3 2\n0 1\n",
                          "3 1\n0 1\n1 2\n", "3 1\n0 3\n", "3 1\n0 1", "3 1\r\n0 1\r\n", "3 1\n\n0 1\n",
                          "3 1\n0  1\n", "3 1\n0 1 2\n", "3 1\n-1 2\n", "0 0\n", "", "3\n", "3 1\n0 01\n"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_edge_list(bad), FormatError);
  }
}

TEST_CASE("json formats") {
  const auto rep = rank_width_exact(cycle_graph(5));
  const RankDecomposition back = decomposition_from_json(to_json(*rep.decomposition));
  CHECK(verify_decomposition(cycle_graph(5), back) == rep.value);
  CHECK_THROWS_AS(decomposition_from_json(Json::parse(R"({"nodes":1,"edges":[[0,1]],"leaf_map":[]})")), FormatError);

  const Coloring c(3, {1, 3, 2, 2});
  CHECK(to_json(c).dump() == R"({"palette_size":3,"colors":[1,3,2,2]})");
  CHECK(coloring_from_json(to_json(c)) == c);
  CHECK_THROWS_AS(coloring_from_json(Json::parse(R"({"colors":[1]})")), FormatError);

  const auto tc = twisted_chain(12);
  const auto part = random_balanced_partition(tc.layout, PartitionFamily::iid, 3);
  CHECK(partition_from_json(to_json(part), tc.graph.n()).x == part.x);
  const auto res = lower_bound_certificate(tc.graph, tc.layout, part);
  REQUIRE(res.certificate.has_value());
  const auto cert = certificate_from_json(to_json(*res.certificate), 12);
  CHECK(certificate_rank(tc.graph, cert) == res.certificate->order());

  CHECK(order_from_json(to_json(LinearOrder({2, 0, 1}))).order() == std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(order_from_json(Json::parse("[0,0]")), Error);
}

TEST_CASE("canned scenarios") {
  TempDir dir;
  SUBCASE("gen h golden") {
    const Run r = invoke({"gen", "h", "--n", "3", "--m", "3", "-o", dir / "h.el", "--labels", dir / "h.json"});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "h.el") == golden("h_3_3.el"));
    CHECK(slurp(dir / "h.json") == golden("h_3_3.json"));
    CHECK(oracle::same_edges(read_graph(dir / "h.el"), h_graph(3, 3).graph));
  }
  SUBCASE("lowrw then verify") {
    put(dir / "grid4.el", serialize_edge_list(grid_graph(4, 4)));
    const Run r = invoke({"color", "lowrw", "-r", "2", "-p", "2", "-i", dir / "grid4.el", "-o", dir / "col.json",
                       "--profile", dir / "prof.json", "--power-out", dir / "grid4pow.el"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(slurp(dir / "prof.json")).at("verified") == true);
    CHECK(oracle::same_edges(read_graph(dir / "grid4pow.el"), power(grid_graph(4, 4), 2)));
    const Run v = invoke({"verify", "coloring", "--mode", "lowrw", "-p", "2", "-i", dir / "grid4pow.el", "-c",
                       dir / "col.json"});
    CHECK(v.code == 0);
    // a single class on K_6 misses a zero budget
    put(dir / "k6.el", serialize_edge_list(complete_graph(6)));
    put(dir / "one.json", R"({"palette_size":1,"colors":[1,1,1,1,1,1],"budget":[0]})");
    CHECK(invoke({"verify", "coloring", "--mode", "lowrw", "-p", "1", "-i", dir / "k6.el", "-c", dir / "one.json"})
              .code == 1);
    CHECK(invoke({"verify", "coloring", "--mode", "proper", "-i", dir / "k6.el", "-c", dir / "one.json"}).code == 1);
  }
  SUBCASE("width rank exact on C5") {
    put(dir / "c5.el", serialize_edge_list(cycle_graph(5)));
    const Run r = invoke({"width", "rank", "--exact", "-i", dir / "c5.el"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"value\":2,\"method\":\"exact\"}\n");
  }
}

TEST_CASE("usage and format errors exit 2") {
  TempDir dir;
  CHECK(invoke({"gen", "nosuchfamily", "--n", "3"}).code == 2);
  CHECK(invoke({"gen", "path", "--n", "3", "--bogus"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"width", "rank", "--exact", "--upper", "-i", "x"}).code == 2);
  put(dir / "bad.el", "3 2\n1 2\n0 1\n");
  const Run r = invoke({"width", "treedepth", "-i", dir / "bad.el"});
  CHECK(r.code == 2);
  CHECK(r.err.find("sorted") != std::string::npos);
  CHECK(invoke({"power", "-i", dir / "missing.el", "-r", "2"}).code == 2);
  put(dir / "big.el", serialize_edge_list(path_graph(20)));
  CHECK(invoke({"width", "rank", "--exact", "--cap", "8", "-i", dir / "big.el"}).code == 2);
}

TEST_CASE("subcommand outputs") {
  TempDir dir;
  put(dir / "p5.el", serialize_edge_list(path_graph(5)));
  const Run w = invoke({"wcol", "-i", dir / "p5.el", "-r", "2", "--exact"});
  REQUIRE(w.code == 0);
  CHECK(Json::parse(w.out).at("value") == 3);
  CHECK(Json::parse(w.out).at("method") == "exact");

  CHECK(invoke({"width", "treedepth", "-i", dir / "p5.el"}).out == "{\"value\":3,\"method\":\"exact\"}\n");

  REQUIRE(invoke({"width", "rank", "-i", dir / "p5.el", "--decomposition", dir / "d.json"}).code == 0);
  const Run vd = invoke({"verify", "decomposition", "-i", dir / "p5.el", "-d", dir / "d.json"});
  CHECK(vd.code == 0);
  CHECK(Json::parse(vd.out).at("width") == 1);
  CHECK(invoke({"verify", "decomposition", "-i", dir / "p5.el", "-d", dir / "d.json", "--max-width", "0"}).code == 1);

  REQUIRE(invoke({"color", "td", "-i", dir / "p5.el", "-p", "2", "-o", dir / "td.json"}).code == 0);
  CHECK(invoke({"verify", "coloring", "--mode", "td", "-p", "2", "-i", dir / "p5.el", "-c", dir / "td.json"}).code == 0);

  REQUIRE(invoke({"lab", "certificate", "--order", "12", "--runs", "5", "-o", dir / "cert.csv"}).code == 0);
  const std::string csv = slurp(dir / "cert.csv");
  CHECK(csv.rfind("seed,achieved_order,verified\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  REQUIRE(invoke({"lab", "ramsey", "--k", "2", "--d", "2", "--runs", "3", "-o", dir / "ram.csv"}).code == 0);
  CHECK(slurp(dir / "ram.csv").find("false") == std::string::npos);

  put(dir / "c5.el", serialize_edge_list(cycle_graph(5)));
  put(dir / "c5col.json", R"({"palette_size":2,"colors":[1,1,2,2,1]})");
  REQUIRE(invoke({"chi", "product", "-i", dir / "c5.el", "-c", dir / "c5col.json", "-o", dir / "chi.json"}).code == 0);
  const Coloring chi = coloring_from_json(Json::parse(slurp(dir / "chi.json")));
  CHECK(is_proper(cycle_graph(5), chi));

  REQUIRE(invoke({"eh", "extract", "-i", dir / "c5.el", "-o", dir / "eh.json"}).code == 0);
  CHECK(Json::parse(slurp(dir / "eh.json")).contains("r1"));
}

TEST_CASE("sweep") {
  TempDir dir;
  put(dir / "empty.json", R"({"runs":[]})");
  REQUIRE(invoke({"report", "sweep", "--spec", dir / "empty.json", "-o", dir / "empty.csv"}).code == 0);
  CHECK(slurp(dir / "empty.csv") == cli::kSweepHeader);

  put(dir / "h.json", R"({"runs":[
    {"generator":"h","params":{"n":2,"m":3},"pipeline":"row","p":2},
    {"generator":"h","params":{"n":4,"m":3},"pipeline":"row","p":2},
    {"generator":"chain","params":{"n":12},"pipeline":"certificate","seeds":[0,1,2]},
    {"generator":"path","params":{"n":6},"pipeline":"nosuch"}]})");
  const Run r = invoke({"report", "sweep", "--spec", dir / "h.json", "-o", dir / "h.csv"});
  CHECK(r.code == 1);
  std::istringstream lines(slurp(dir / "h.csv"));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 1; i < 6; ++i) CHECK(rows[i].find(",true,") != std::string::npos);
  CHECK(rows[6].find("unknown pipeline") != std::string::npos);
  CHECK(rows[1].back() == ',');  // no timing column without --timing
}

TEST_CASE("manifest replay is byte identical") {
  TempDir dir;
  const std::vector<std::vector<std::string>> commands{
      {"gen", "degenerate", "--n", "40", "--d", "2", "--seed", "11", "-o", dir / "g.el"},
      {"lab", "certificate", "--order", "12", "--runs", "4", "--seed", "5", "-o", dir / "g.el"},
      {"lab", "extract", "--order", "6", "--runs", "3", "--seed", "2", "-o", dir / "g.el"},
      {"gen", "interval", "--n", "3", "-o", dir / "g.el", "--model", dir / "model.json"}};
  for (const auto& cmd : commands) {
    auto with_manifest = cmd;
    with_manifest.push_back("--manifest");
    with_manifest.push_back(dir / "manifest.json");
    REQUIRE(invoke(with_manifest).code == 0);
    const std::string first = slurp(dir / "g.el");
    const Json manifest = Json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("wall_clock_ms").is_null());
    CHECK_FALSE(manifest.at("seeds").empty());
    fs::remove(dir / "g.el");
    REQUIRE(invoke({"report", "replay", "--from", dir / "manifest.json"}).code == 0);
    CHECK(slurp(dir / "g.el") == first);
  }
}

TEST_CASE("output directory prefix") {
  TempDir dir;
  ::setenv("LRW_OUT_DIR", dir.path.c_str(), 1);
  const Run r = invoke({"gen", "path", "--n", "4", "-o", "p4.el"});
  ::unsetenv("LRW_OUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "p4.el") == "4 3\n0 1\n1 2\n2 3\n");
}

TEST_CASE("golden files are stable") {
  TempDir dir;
  for (int round = 0; round < 2; ++round) {
    REQUIRE(invoke({"gen", "chain", "--n", "2", "-o", dir / "c.el", "--labels", dir / "c.json"}).code == 0);
    CHECK(slurp(dir / "c.el") == golden("chain_2.el"));
    CHECK(slurp(dir / "c.json") == golden("chain_2.json"));
    REQUIRE(invoke({"gen", "degenerate", "--n", "12", "--d", "2", "--seed", "3", "-o", dir / "d.el"}).code == 0);
    CHECK(slurp(dir / "d.el") == golden("degenerate_12_2_s3.el"));
  }
}
