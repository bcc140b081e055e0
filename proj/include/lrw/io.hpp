#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lrw/coloring.hpp"
#include "lrw/decomposition.hpp"
#include "lrw/ehchi.hpp"
#include "lrw/error.hpp"
#include "lrw/generators.hpp"
#include "lrw/graph.hpp"
#include "lrw/lowerbound.hpp"
#include "lrw/lowrw.hpp"
#include "lrw/orderings.hpp"
#include "lrw/width.hpp"

namespace lrw {

using Json = nlohmann::ordered_json;

/// Malformed input files.
class FormatError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
    if (!out) throw FormatError("write failed for " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw FormatError("cannot move output into " + path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
}

// ---------------------------------------------------------------- edge lists

/// `n m` then m sorted lines `u v` with u < v; `#` lines are comments.
inline std::string serialize_edge_list(const Graph& g) {
  std::string out;
  const auto edges = g.edges();
  out += std::to_string(g.n()) + " " + std::to_string(edges.size()) + "\n";
  for (auto [u, v] : edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

namespace detail {

inline std::vector<long long> parse_ints(const std::string& line, std::size_t lineno) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') {
      if (i == 0 || line[i - 1] == ' ' || i + 1 == line.size())
        throw FormatError("line " + std::to_string(lineno) + ": malformed spacing");
      ++i;
      continue;
    }
    if (line[i] < '0' || line[i] > '9') throw FormatError("line " + std::to_string(lineno) + ": unexpected character");
    std::size_t j = i;
    long long v = 0;
    while (j < line.size() && line[j] >= '0' && line[j] <= '9') {
      v = v * 10 + (line[j] - '0');
      if (v > (1LL << 40)) throw FormatError("line " + std::to_string(lineno) + ": number too large");
      ++j;
    }
    if (j - i > 1 && line[i] == '0') throw FormatError("line " + std::to_string(lineno) + ": leading zero");
    out.push_back(v);
    i = j;
  }
  return out;
}

}  // namespace detail

inline Graph parse_edge_list(const std::string& text) {
  if (text.find('\r') != std::string::npos) throw FormatError("edge list must use LF line endings");
  std::vector<std::pair<std::size_t, std::string>> data;
  std::size_t start = 0, lineno = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) throw FormatError("line " + std::to_string(lineno + 1) + ": missing final newline");
    ++lineno;
    std::string line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) throw FormatError("line " + std::to_string(lineno) + ": empty line");
    data.emplace_back(lineno, std::move(line));
  }
  if (data.empty()) throw FormatError("edge list has no header line");
  const auto header = detail::parse_ints(data[0].second, data[0].first);
  if (header.size() != 2) throw FormatError("line " + std::to_string(data[0].first) + ": header must be `n m`");
  const long long n = header[0], m = header[1];
  if (n < 1 || n > kMaxVertices) throw FormatError("vertex count out of range");
  if (static_cast<long long>(data.size()) - 1 != m)
    throw FormatError("header announces " + std::to_string(m) + " edges, found " + std::to_string(data.size() - 1));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto uv = detail::parse_ints(data[i].second, data[i].first);
    const std::string where = "line " + std::to_string(data[i].first) + ": ";
    if (uv.size() != 2) throw FormatError(where + "edge must be `u v`");
    if (!(uv[0] < uv[1])) throw FormatError(where + "edge must satisfy u < v");
    if (uv[1] >= n) throw FormatError(where + "vertex out of range");
    Edge e{static_cast<int>(uv[0]), static_cast<int>(uv[1])};
    if (!edges.empty() && !(edges.back() < e)) throw FormatError(where + "edges must be strictly sorted");
    edges.push_back(e);
  }
  return Graph(static_cast<int>(n), edges);
}

inline Graph read_graph(const std::string& path) { return parse_edge_list(read_file(path)); }

// ---------------------------------------------------------------- labels

inline Json labels_to_json(const Graph& g) {
  Json arr = Json::array();
  if (g.labels())
    for (const auto& l : *g.labels()) arr.push_back(Json::parse(l));
  return arr;
}

/// Reads a label sidecar and attaches it to g.
inline Graph attach_labels(const Graph& g, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != g.n()) throw FormatError("labels must be an array with one entry per vertex");
  std::vector<std::string> text;
  for (const auto& e : j) text.push_back(e.dump());
  return g.with_labels(std::move(text));
}

inline TwistedChainLabel chain_label_from_json(const Json& j) {
  TwistedChainLabel l;
  const std::string role = j.at("role").get<std::string>();
  if (role.size() != 1 || std::string("ABC").find(role[0]) == std::string::npos) throw FormatError("bad role " + role);
  l.role = role[0];
  if (l.role == 'C') {
    l.i = j.at("i").get<int>();
    l.j = j.at("j").get<int>();
  } else {
    l.k = j.at("k").get<int>();
  }
  return l;
}

/// Order of a twisted chain whose labels match the canonical layout exactly.
inline ChainLayout chain_layout_of(const Graph& g) {
  int n = 1;
  while (3 * n * n < g.n()) ++n;
  if (3 * n * n != g.n()) throw FormatError("vertex count is not 3n^2");
  if (g.labels()) {
    const auto expected = chain_labels(n);
    for (int v = 0; v < g.n(); ++v)
      if (!(chain_label_from_json(Json::parse((*g.labels())[v])) == expected[v]))
        throw FormatError("vertex " + std::to_string(v) + " does not carry its canonical twisted-chain label");
  }
  return ChainLayout{n};
}

// ---------------------------------------------------------------- decompositions and widths

inline Json to_json(const RankDecomposition& d) {
  Json j;
  j["nodes"] = d.node_count;
  Json edges = Json::array();
  for (auto [a, b] : d.edges) edges.push_back({a, b});
  j["edges"] = edges;
  Json leaves = Json::array();
  for (std::size_t v = 0; v < d.leaf_of_vertex.size(); ++v)
    leaves.push_back({{"leaf", d.leaf_of_vertex[v]}, {"vertex", static_cast<int>(v)}});
  j["leaf_map"] = leaves;
  return j;
}

inline RankDecomposition decomposition_from_json(const Json& j) {
  try {
    RankDecomposition d;
    d.node_count = j.at("nodes").get<int>();
    if (d.node_count < 0) throw FormatError("negative node count");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("decomposition edge must be [a,b]");
      d.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    const auto& lm = j.at("leaf_map");
    d.leaf_of_vertex.assign(lm.size(), -1);
    for (const auto& e : lm) {
      const int v = e.at("vertex").get<int>();
      if (v < 0 || v >= static_cast<int>(lm.size())) throw FormatError("leaf_map vertex out of range");
      if (d.leaf_of_vertex[v] != -1) throw FormatError("leaf_map repeats vertex " + std::to_string(v));
      d.leaf_of_vertex[v] = e.at("leaf").get<int>();
    }
    for (auto [a, b] : d.edges)
      if (a < 0 || b < 0 || a >= d.node_count || b >= d.node_count) throw FormatError("decomposition edge out of range");
    for (int t : d.leaf_of_vertex)
      if (t < 0 || t >= d.node_count) throw FormatError("leaf_map node out of range");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("decomposition JSON: ") + e.what());
  }
}

inline Json to_json(const WidthReport& r, bool timing, bool with_decomposition) {
  Json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  if (with_decomposition && r.decomposition) j["decomposition"] = to_json(*r.decomposition);
  return j;
}

// ---------------------------------------------------------------- orders and colorings

inline Json to_json(const LinearOrder& L) { return Json(L.order()); }

inline LinearOrder order_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("order must be an array");
  try {
    return LinearOrder(j.get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("order JSON: ") + e.what());
  }
}

inline Json to_json(const Coloring& c) {
  Json j;
  j["palette_size"] = c.palette_size();
  j["colors"] = c.colors();
  return j;
}

inline Coloring coloring_from_json(const Json& j) {
  try {
    return Coloring(j.at("palette_size").get<int>(), j.at("colors").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("coloring JSON: ") + e.what());
  }
}

inline Json decode_to_json(const RefinementLevel& level) {
  Json d = Json::object();
  for (std::size_t q = 0; q < level.decode.size(); ++q) d[std::to_string(q + 1)] = level.decode[q];
  return d;
}

/// Top-level refined coloring plus decode and orders; every level is listed under "levels".
inline Json to_json(const RefinementColoring& R) {
  Json j = to_json(R.refined());
  j["decode"] = decode_to_json(R.levels.back());
  Json orders = Json::array();
  Json levels = Json::array();
  for (const auto& l : R.levels) {
    orders.push_back(to_json(l.order));
    Json lj;
    lj["radius"] = l.radius;
    lj["wcol"] = l.wcol;
    lj["base"] = to_json(l.base);
    lj["refined"] = to_json(l.refined);
    lj["decode"] = decode_to_json(l);
    levels.push_back(lj);
  }
  j["orders"] = orders;
  j["levels"] = levels;
  return j;
}

inline Json to_json(const ColoringProfile& p) {
  Json j;
  j["p"] = p.p;
  j["palette"] = p.palette;
  j["budget"] = p.budget;
  j["product_constant"] = p.product_constant;
  j["measured"] = p.measured;
  Json ex = Json::array();
  for (bool b : p.exact) ex.push_back(b);
  j["exact"] = ex;
  j["verified"] = p.verified;
  j["worst_union"] = p.worst_union;
  return j;
}

// ---------------------------------------------------------------- lower-bound artifacts

inline Json to_json(const MatchingCertificate& c) {
  Json j;
  j["side"] = c.side == ChainSide::A ? "A" : "B";
  j["direction"] = c.s_first ? Json::array({"S", "T"}) : Json::array({"T", "S"});
  j["order"] = c.order();
  j["host_order"] = c.host_order;
  Json pairs = Json::array();
  for (const auto& p : c.pairs) pairs.push_back({{"a", p.a}, {"b", p.b}, {"c", p.c}});
  j["pairs"] = pairs;
  return j;
}

inline MatchingCertificate certificate_from_json(const Json& j, int host_order) {
  try {
    MatchingCertificate c;
    const std::string side = j.at("side").get<std::string>();
    if (side != "A" && side != "B") throw FormatError("certificate side must be A or B");
    c.side = side == "A" ? ChainSide::A : ChainSide::B;
    const auto dir = j.at("direction").get<std::vector<std::string>>();
    if (dir == std::vector<std::string>{"S", "T"})
      c.s_first = true;
    else if (dir == std::vector<std::string>{"T", "S"})
      c.s_first = false;
    else
      throw FormatError("certificate direction must be [\"S\",\"T\"] or [\"T\",\"S\"]");
    c.host_order = j.contains("host_order") ? j.at("host_order").get<int>() : host_order;
    for (const auto& p : j.at("pairs")) c.pairs.push_back({p.at("a").get<int>(), p.at("b").get<int>(), p.at("c").get<int>()});
    if (j.contains("order") && j.at("order").get<int>() != c.order()) throw FormatError("certificate order does not match its pairs");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("certificate JSON: ") + e.what());
  }
}

inline Json to_json(const Bipartition& p) {
  Json j;
  j["S"] = p.x.to_vector();
  j["T"] = p.y.to_vector();
  return j;
}

inline Bipartition partition_from_json(const Json& j, int n) {
  try {
    Bipartition p{VertexSet(n), VertexSet(n)};
    for (int v : j.at("S").get<std::vector<int>>()) {
      if (v < 0 || v >= n) throw FormatError("partition vertex out of range");
      p.x.set(v);
    }
    for (int v : j.at("T").get<std::vector<int>>()) {
      if (v < 0 || v >= n) throw FormatError("partition vertex out of range");
      p.y.set(v);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("partition JSON: ") + e.what());
  }
}

inline Json to_json(const ImbalanceReport& r) {
  Json j;
  j["mixed_rows"] = r.mixed_rows;
  j["mixed_columns"] = r.mixed_columns;
  j["heavy_side"] = r.heavy_is_s ? "S" : "T";
  j["heavy_count"] = r.heavy_count;
  j["c_size"] = r.c_size;
  return j;
}

inline Json to_json(const SubstructureReport& r) {
  Json j;
  j["host_order"] = r.host_order;
  j["colors"] = r.colors;
  j["order"] = r.order;
  j["mode"] = r.staged ? "staged" : "best-effort";
  Json stages = Json::array();
  for (const auto& s : r.stages) stages.push_back({{"layer", s.layer}, {"size", s.size}, {"threshold_met", s.threshold_met}});
  j["stages"] = stages;
  j["X"] = r.xs;
  j["Y"] = r.ys;
  j["host_vertices"] = r.host_vertex;
  return j;
}

// ---------------------------------------------------------------- eh-chi artifacts

inline Json to_json(const Cotree& t, const std::vector<int>& vertex_names) {
  std::function<Json(int)> rec = [&](int id) {
    const auto& node = t.nodes[id];
    Json j;
    j["op"] = to_string(node.op);
    if (node.op == Cotree::Op::leaf) {
      j["vertex"] = vertex_names.empty() ? node.vertex : vertex_names[node.vertex];
    } else {
      Json kids = Json::array();
      for (int c : node.children) kids.push_back(rec(c));
      j["children"] = kids;
    }
    return j;
  };
  return rec(t.root);
}

inline Json to_json(const EHWitness& w) {
  Json j;
  j["kind"] = to_string(w.set.kind);
  j["vertices"] = w.set.vertices;
  j["epsilon"] = w.params.epsilon;
  j["n"] = w.n;
  return j;
}

// ---------------------------------------------------------------- models and rotation systems

inline Json to_json(const IntervalModel& m) {
  Json j;
  j["scale"] = m.scale;
  Json iv = Json::array();
  for (auto [lo, hi] : m.intervals) iv.push_back({lo, hi});
  j["intervals"] = iv;
  j["relabel"] = m.relabel;
  return j;
}

inline Json to_json(const SegmentModel& m) {
  Json j;
  j["scale"] = m.scale;
  Json sg = Json::array();
  for (auto [b, t] : m.segments) sg.push_back({b, t});
  j["segments"] = sg;
  j["relabel"] = m.relabel;
  return j;
}

inline std::vector<std::pair<long, long>> pairs_from_json(const Json& j, const char* key) {
  std::vector<std::pair<long, long>> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2) throw FormatError(std::string(key) + " entries must be [lo,hi]");
    out.emplace_back(e[0].get<long>(), e[1].get<long>());
  }
  return out;
}

inline std::vector<std::vector<int>> rotations_from_json(const Json& j) {
  try {
    return j.at("rotations").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("rotation system JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- run manifests

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::vector<std::string> argv;  // command line without the program name
  Json parameters = Json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<double> wall_clock_ms;

  Json to_json() const {
    Json j;
    j["command"] = argv;
    j["parameters"] = parameters;
    j["seeds"] = seeds;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["tool_version"] = kToolVersion;
    j["wall_clock_ms"] = wall_clock_ms ? Json(*wall_clock_ms) : Json(nullptr);
    return j;
  }

  static RunManifest from_json(const Json& j) {
    try {
      RunManifest m;
      m.argv = j.at("command").get<std::vector<std::string>>();
      m.parameters = j.value("parameters", Json::object());
      m.seeds = j.value("seeds", std::vector<std::uint64_t>{});
      m.inputs = j.value("inputs", std::vector<std::string>{});
      m.outputs = j.value("outputs", std::vector<std::string>{});
      return m;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("manifest JSON: ") + e.what());
    }
  }
};

}  // namespace lrw
