#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrw/lrw.hpp"

namespace lrw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool timing = false;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  RunManifest manifest;

  std::string output_path(const std::string& path) const {
    if (path.empty() || path == "-" || out_dir.empty() || path.front() == '/') return path;
    return out_dir + "/" + path;
  }

  /// Writes to a file, or to stdout when the path is empty or "-".
  void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out << text;
      return;
    }
    const std::string full = output_path(path);
    write_file(full, text);
    manifest.outputs.push_back(full);
  }

  Graph graph(const std::string& path) {
    manifest.inputs.push_back(path);
    return read_graph(path);
  }

  Json json(const std::string& path) {
    manifest.inputs.push_back(path);
    return parse_json(read_file(path), path);
  }
};

/// Verification failures map to exit code 1.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

inline std::string compact(const Json& j) { return j.dump() + "\n"; }

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------- generator dispatch

struct Generated {
  Graph graph = Graph(1, {});
  std::optional<Json> labels;
  std::optional<Json> model;
};

inline ChainVariant parse_variant(const std::string& s) {
  if (s == "bare") return ChainVariant::bare;
  if (s == "interval") return ChainVariant::interval;
  if (s == "permutation") return ChainVariant::permutation;
  throw CLI::ValidationError("--variant", "unknown variant " + s);
}

inline Json chain_labels_json(int n, const std::vector<int>& relabel) {
  const auto labels = chain_labels(n);
  Json arr = Json::array();
  for (std::size_t v = 0; v < labels.size(); ++v)
    arr.push_back(Json::parse(label_json(labels[relabel.empty() ? v : static_cast<std::size_t>(relabel[v])])));
  return arr;
}

/// Builds one of the named families from a parameter object.
inline Generated generate(const std::string& family, const Json& p, std::uint64_t seed,
                          const std::function<Graph(const std::string&)>& load_graph,
                          const std::function<Json(const std::string&)>& load_json) {
  auto num = [&](const char* key) {
    if (!p.contains(key)) throw CLI::ValidationError(std::string("--") + key, "required for family " + family);
    return p.at(key).get<int>();
  };
  Generated out;
  if (family == "h" || family == "htilde") {
    HGraph h = family == "h" ? h_graph(num("n"), num("m")) : h_tilde(num("n"), num("m"));
    out.graph = h.graph;
    out.labels = labels_to_json(h.graph);
  } else if (family == "chain") {
    TwistedChain tc = twisted_chain(num("n"), parse_variant(p.value("variant", std::string("bare"))));
    out.graph = tc.graph;
    out.labels = labels_to_json(tc.graph);
  } else if (family == "interval") {
    IntervalModel m = interval_model(num("n"));
    out.graph = intersection_graph(m);
    out.labels = chain_labels_json(m.order, m.relabel);
    out.model = to_json(m);
  } else if (family == "segment") {
    SegmentModel m = segment_model(num("n"));
    out.graph = intersection_graph(m);
    out.labels = chain_labels_json(m.order, m.relabel);
    out.model = to_json(m);
  } else if (family == "path") {
    out.graph = path_graph(num("n"));
  } else if (family == "cycle") {
    out.graph = cycle_graph(num("n"));
  } else if (family == "complete") {
    out.graph = complete_graph(num("n"));
  } else if (family == "star") {
    out.graph = star_graph(num("n"));
  } else if (family == "grid") {
    out.graph = grid_graph(num("a"), num("b"));
  } else if (family == "degenerate") {
    out.graph = random_degenerate(num("n"), num("d"), seed);
  } else if (family == "gnp") {
    out.graph = random_gnp(num("n"), p.value("p", 0.5), seed);
  } else if (family == "cograph") {
    out.graph = random_cograph(num("n"), seed);
  } else if (family == "map") {
    if (!p.contains("rotations")) throw CLI::ValidationError("--rotations", "required for family map");
    out.graph = radial_square_map_graph(rotations_from_json(load_json(p.at("rotations").get<std::string>())));
  } else if (family == "line") {
    if (!p.contains("input")) throw CLI::ValidationError("--input", "required for family line");
    out.graph = line_graph_via_subdivision(load_graph(p.at("input").get<std::string>()));
  } else {
    throw CLI::ValidationError("family", "unknown family " + family);
  }
  return out;
}

// ---------------------------------------------------------------- sweep runner

struct SweepRow {
  std::string instance;
  std::string generator;
  std::uint64_t seed = 0;
  int n = 0;
  int palette = 0;
  std::vector<std::int64_t> measured;
  std::vector<std::int64_t> budget;
  bool verified = false;
  std::optional<int> achieved_order;
  std::string error;
  double elapsed_ms = 0;
};

inline constexpr const char* kSweepHeader =
    "instance,generator,seed,n,palette,measured,budget,verified,achieved_order,error,elapsed_ms\n";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_row(const SweepRow& r, bool timing) {
  std::ostringstream ss;
  ss << csv_field(r.instance) << ',' << r.generator << ',' << r.seed << ',' << r.n << ',' << r.palette << ','
     << join(r.measured) << ',' << join(r.budget) << ',' << (r.verified ? "true" : "false") << ','
     << (r.achieved_order ? std::to_string(*r.achieved_order) : "") << ',' << csv_field(r.error) << ',';
  if (timing) ss << r.elapsed_ms;
  ss << '\n';
  return ss.str();
}

/// Runs one sweep row; failures are recorded in the row instead of thrown.
inline SweepRow run_sweep_row(const Json& spec, std::uint64_t seed) {
  SweepRow row;
  const auto start = std::chrono::steady_clock::now();
  row.generator = spec.value("generator", std::string());
  row.seed = seed;
  const Json params = spec.value("params", Json::object());
  row.instance = spec.value("instance", row.generator + params.dump());
  try {
    const std::string pipeline = spec.at("pipeline").get<std::string>();
    auto no_file = [](const std::string&) -> Graph { throw Error("sweep rows cannot read graph files"); };
    auto no_json = [](const std::string&) -> Json { throw Error("sweep rows cannot read JSON files"); };
    const Generated gen = generate(row.generator, params, seed, no_file, no_json);
    const Graph& g = gen.graph;
    row.n = g.n();
    const int p = spec.value("p", 1);
    WidthOptions wopts;
    wopts.threads = 1;
    wopts.exact_cap = spec.value("exact_cap", kDefaultRankWidthCap);
    if (pipeline == "row") {
      const HGraph h = row.generator == "h" ? h_graph(params.at("n"), params.at("m")) : h_tilde(params.at("n"), params.at("m"));
      const Coloring c = row_coloring(h.rows, h.cols, p);
      const auto prof = verify_low_rw_coloring(h.graph, c, p, [](int i) { return std::int64_t{3} * i; }, wopts);
      row.palette = prof.palette;
      row.measured.assign(prof.measured.begin(), prof.measured.end());
      row.budget = prof.budget;
      row.verified = prof.verified;
    } else if (pipeline == "lowrw") {
      const int r = spec.value("r", 2);
      const LowRwResult res = low_rankwidth_coloring_of_power(g, r, p);
      const Graph gr = power(g, r);
      const auto budget = res.profile.budget;
      const auto prof = verify_low_rw_coloring(
          gr, res.coloring, p, [&](int i) { return budget[static_cast<std::size_t>(i - 1)]; }, wopts);
      row.palette = prof.palette;
      row.measured.assign(prof.measured.begin(), prof.measured.end());
      row.budget = prof.budget;
      row.verified = prof.verified;
    } else if (pipeline == "td") {
      const Coloring c = treedepth_coloring(g, p);
      const auto check = verify_td_coloring(g, c, p);
      row.palette = c.used_count();
      row.verified = check.verified;
    } else if (pipeline == "certificate") {
      const ChainLayout L = chain_layout_of(g);
      const std::vector<PartitionFamily> families{PartitionFamily::iid, PartitionFamily::prefix_first,
                                                  PartitionFamily::prefix_second, PartitionFamily::rectangle};
      const Bipartition part = random_balanced_partition(L, families[seed % families.size()], seed);
      const LowerBoundOutcome res = lower_bound_certificate(g, L, part);
      if (res.certificate) {
        row.achieved_order = res.certificate->order();
        row.verified = certificate_rank(g, *res.certificate) == res.certificate->order() &&
                       res.certificate->order() >= res.target;
      } else {
        row.achieved_order = 0;
        row.error = "imbalance";
      }
    } else if (pipeline == "extract") {
      const ChainLayout L = chain_layout_of(g);
      const int d = spec.value("colors", 2);
      Rng rng(seed);
      std::vector<int> colors(static_cast<std::size_t>(g.n()));
      for (auto& c : colors) c = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(d)));
      const Coloring c(d, std::move(colors));
      const SubstructureReport rep = monochromatic_substructure(g, L, c, spec.value("target", L.order));
      const SubstructureCheck check = verify_substructure(rep);
      row.palette = check.colors_used;
      row.achieved_order = rep.order;
      row.verified = check.ok();
    } else {
      throw Error("unknown pipeline " + pipeline);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.verified = false;
  }
  row.elapsed_ms = detail::ms_since(start);
  return row;
}

// ---------------------------------------------------------------- entry point

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

namespace detail {

inline void require_one(const CLI::App* sub, const char* what) {
  if (sub->get_subcommands().empty()) throw CLI::RequiredError(std::string(what) + " needs a subcommand");
}

inline std::vector<std::int64_t> budget_from_json(const Json& j) {
  if (!j.contains("budget")) return {};
  return j.at("budget").get<std::vector<std::int64_t>>();
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colorings with small rank-width on unions of classes, plus verifiers and lower-bound tools", "lrw"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{out, err, false, 1, 0, {}, {}};
  ctx.manifest.argv = args;
  if (const char* dir = std::getenv("LRW_OUT_DIR")) ctx.out_dir = dir;
  std::string manifest_path;
  app.add_option("--seed", ctx.seed, "Seed for randomized steps")->default_val(0);
  app.add_option("--threads", ctx.threads, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);
  app.add_flag("--timing", ctx.timing, "Record elapsed times in outputs");
  app.add_option("--manifest", manifest_path, "Write a run manifest to this path");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph family");
  std::string family, out_path, labels_path, model_path, rotations_path, gen_input, variant = "bare";
  int n = 0, m = 0, a = 0, b = 0, d = 0;
  double prob = 0.5;
  gen->add_option("family", family,
                  "h | htilde | chain | interval | segment | path | cycle | complete | star | grid | degenerate | gnp "
                  "| cograph | map | line")
      ->required();
  gen->add_option("--n", n);
  gen->add_option("--m", m);
  gen->add_option("--a", a);
  gen->add_option("--b", b);
  gen->add_option("--d", d);
  gen->add_option("--p", prob);
  gen->add_option("--variant", variant);
  gen->add_option("--rotations", rotations_path);
  gen->add_option("-i,--input", gen_input);
  gen->add_option("-o,--output", out_path);
  gen->add_option("--labels", labels_path);
  gen->add_option("--model", model_path);

  // power
  auto* pw = app.add_subcommand("power", "Graph power G^r");
  std::string in_path;
  int radius = 2;
  pw->add_option("-i,--input", in_path)->required();
  pw->add_option("-r,--radius", radius)->required();
  pw->add_option("-o,--output", out_path);

  // wcol
  auto* wc = app.add_subcommand("wcol", "Weak r-coloring number of an order");
  bool exact = false;
  int cap = -1;
  std::string order_path;
  wc->add_option("-i,--input", in_path)->required();
  wc->add_option("-r,--radius", radius)->required();
  wc->add_flag("--exact", exact);
  wc->add_option("--cap", cap);
  wc->add_option("--order", order_path, "Evaluate this order instead of searching");
  wc->add_option("-o,--output", out_path, "Write the order");

  // color
  auto* color = app.add_subcommand("color", "Build colorings");
  auto* ctd = color->add_subcommand("td", "p-tree-depth coloring");
  auto* cref = color->add_subcommand("refine", "Good or excellent refinement");
  auto* clr = color->add_subcommand("lowrw", "Low rank-width coloring of G^r");
  int p = 1;
  std::string strategy = "auto", coloring_path, orders_path, profile_path, power_path, refine_mode = "excellent";
  ctd->add_option("-i,--input", in_path)->required();
  ctd->add_option("-p", p)->required();
  ctd->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "exact", "wcol"}));
  ctd->add_option("-o,--output", out_path);
  cref->add_option("-i,--input", in_path)->required();
  cref->add_option("-r,--radius", radius)->required();
  cref->add_option("-c,--coloring", coloring_path)->required();
  cref->add_option("--orders", orders_path);
  cref->add_option("--mode", refine_mode)->check(CLI::IsMember({"good", "excellent"}));
  cref->add_option("-o,--output", out_path);
  clr->add_option("-i,--input", in_path)->required();
  clr->add_option("-r,--radius", radius)->required();
  clr->add_option("-p", p)->required();
  clr->add_option("-o,--output", out_path);
  clr->add_option("--profile", profile_path);
  clr->add_option("--power-out", power_path);
  clr->add_option("--refinement", orders_path, "Write the full refinement");

  // verify
  auto* ver = app.add_subcommand("verify", "Check colorings and decompositions");
  auto* vcol = ver->add_subcommand("coloring", "Check a coloring");
  auto* vdec = ver->add_subcommand("decomposition", "Check a rank-decomposition");
  std::string vmode = "lowrw", dec_path;
  int linear_budget = 0, max_width = -1;
  vcol->add_option("--mode", vmode)->check(CLI::IsMember({"lowrw", "td", "proper"}));
  vcol->add_option("-p", p);
  vcol->add_option("-i,--input", in_path)->required();
  vcol->add_option("-c,--coloring", coloring_path)->required();
  vcol->add_option("--linear-budget", linear_budget, "Use Q(i) = K*i instead of the coloring's budget");
  vcol->add_option("--cap", cap);
  vcol->add_option("-o,--output", out_path, "Write the profile");
  vdec->add_option("-i,--input", in_path)->required();
  vdec->add_option("-d,--decomposition", dec_path)->required();
  vdec->add_option("--max-width", max_width);

  // width
  auto* width = app.add_subcommand("width", "Width measures");
  auto* wrank = width->add_subcommand("rank", "Rank-width");
  auto* wtd = width->add_subcommand("treedepth", "Tree-depth");
  bool upper = false;
  wrank->add_option("-i,--input", in_path)->required();
  auto* exact_flag = wrank->add_flag("--exact", exact);
  wrank->add_flag("--upper", upper)->excludes(exact_flag);
  wrank->add_option("--cap", cap);
  wrank->add_option("--decomposition", dec_path);
  wtd->add_option("-i,--input", in_path)->required();
  wtd->add_option("--cap", cap);

  // lab
  auto* lab = app.add_subcommand("lab", "Lower-bound experiments");
  auto* lcert = lab->add_subcommand("certificate", "Ordered-matching certificate for a bipartition");
  auto* lram = lab->add_subcommand("ramsey", "Monochromatic block of a product coloring");
  auto* lext = lab->add_subcommand("extract", "Monochromatic twisted-chain substructure");
  std::string partition_path, pfamily = "iid", function = "random";
  int order = 0, runs = 0, k = 2, size = 0, target = 0;
  lcert->add_option("-i,--input", in_path);
  lcert->add_option("--order", order);
  lcert->add_option("--partition", partition_path);
  lcert->add_option("--family", pfamily)->check(CLI::IsMember({"iid", "prefix-rows", "prefix-columns", "rectangle", "mixed"}));
  lcert->add_option("--runs", runs);
  lcert->add_option("-o,--output", out_path);
  lram->add_option("--k", k);
  lram->add_option("--d", d);
  lram->add_option("--size", size);
  lram->add_option("--function", function)->check(CLI::IsMember({"random", "parity"}));
  lram->add_option("--runs", runs);
  lram->add_option("-o,--output", out_path);
  lext->add_option("-i,--input", in_path);
  lext->add_option("-c,--coloring", coloring_path);
  lext->add_option("--order", order);
  lext->add_option("--colors", d);
  lext->add_option("--target", target);
  lext->add_option("--runs", runs);
  lext->add_option("--subgraph", power_path);
  lext->add_option("-o,--output", out_path);

  // eh / chi
  auto* eh = app.add_subcommand("eh", "Erdos-Hajnal witnesses");
  auto* ehx = eh->add_subcommand("extract", "Clique or independent set via cograph extraction");
  int r1 = -1;
  ehx->add_option("-i,--input", in_path)->required();
  ehx->add_option("-c,--coloring", coloring_path);
  ehx->add_option("--r1", r1);
  ehx->add_option("--cap", cap);
  ehx->add_option("-o,--output", out_path);
  auto* chi = app.add_subcommand("chi", "Chromatic bounds");
  auto* chip = chi->add_subcommand("product", "Product coloring from a p = 1 coloring");
  chip->add_option("-i,--input", in_path)->required();
  chip->add_option("-c,--coloring", coloring_path)->required();
  chip->add_option("-o,--output", out_path);

  // report
  auto* rep = app.add_subcommand("report", "Experiment runner");
  auto* rsweep = rep->add_subcommand("sweep", "Run a sweep spec into CSV");
  auto* rreplay = rep->add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string spec_path;
  rsweep->add_option("--spec", spec_path)->required();
  rsweep->add_option("-o,--output", out_path);
  rreplay->add_option("--from", spec_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    auto load_graph = [&](const std::string& path) { return ctx.graph(path); };
    auto load_json = [&](const std::string& path) { return ctx.json(path); };
    if (*gen) {
      Json params{{"n", n}, {"m", m}, {"a", a}, {"b", b}, {"d", d}, {"p", prob}, {"variant", variant}};
      if (!rotations_path.empty()) params["rotations"] = rotations_path;
      if (!gen_input.empty()) params["input"] = gen_input;
      for (const char* key : {"n", "m", "a", "b", "d"})
        if (gen->count(std::string("--") + key) == 0) params.erase(key);
      ctx.manifest.parameters = params;
      ctx.manifest.seeds.push_back(ctx.seed);
      const Generated g = generate(family, params, ctx.seed, load_graph, load_json);
      ctx.emit(out_path, serialize_edge_list(g.graph));
      if (!labels_path.empty()) {
        if (!g.labels) throw CLI::ValidationError("--labels", "family " + family + " has no labels");
        ctx.emit(labels_path, dump(*g.labels));
      }
      if (!model_path.empty()) {
        if (!g.model) throw CLI::ValidationError("--model", "family " + family + " has no intersection model");
        ctx.emit(model_path, dump(*g.model));
      }
    } else if (*pw) {
      ctx.emit(out_path, serialize_edge_list(power(ctx.graph(in_path), radius)));
    } else if (*wc) {
      const Graph g = ctx.graph(in_path);
      Json j;
      if (!order_path.empty()) {
        const LinearOrder L = order_from_json(ctx.json(order_path));
        if (L.size() != g.n()) throw FormatError("order does not match the graph");
        j["value"] = wcol_of_order(g, L, radius);
        j["method"] = "given";
      } else {
        const WcolResult res = exact ? wcol_exact(g, radius, cap > 0 ? cap : kWcolExactCap) : wcol_heuristic(g, radius);
        j["value"] = res.value;
        j["method"] = exact ? "exact" : "upper-bound";
        if (!out_path.empty()) ctx.emit(out_path, dump(to_json(res.order)));
        else j["order"] = res.order.order();
      }
      out << compact(j);
    } else if (*color) {
      detail::require_one(color, "color");
      const Graph g = ctx.graph(in_path);
      if (*ctd) {
        TdColoringOptions opts;
        opts.strategy = strategy == "exact" ? TdStrategy::exact_small
                        : strategy == "wcol" ? TdStrategy::wcol_greedy
                                             : TdStrategy::automatic;
        ctx.emit(out_path, dump(to_json(treedepth_coloring(g, p, opts))));
      } else if (*cref) {
        const Coloring base = coloring_from_json(ctx.json(coloring_path));
        std::vector<LinearOrder> orders;
        if (!orders_path.empty()) {
          for (const auto& o : ctx.json(orders_path)) orders.push_back(order_from_json(o));
        } else {
          for (int rad = refine_mode == "good" ? radius : 2; rad <= radius; ++rad)
            orders.push_back(wcol_heuristic(g, rad).order);
        }
        RefinementColoring R;
        if (refine_mode == "good") {
          if (orders.empty()) throw FormatError("no order supplied");
          R = good_refinement(g, base, radius, orders.back());
        } else {
          R = excellent_refinement(g, base, radius, orders);
        }
        ctx.emit(out_path, dump(to_json(R)));
      } else if (*clr) {
        const LowRwResult res = low_rankwidth_coloring_of_power(g, radius, p);
        Json cj = to_json(res.coloring);
        cj["budget"] = res.profile.budget;
        ctx.emit(out_path, dump(cj));
        if (!orders_path.empty()) ctx.emit(orders_path, dump(to_json(res.refinement)));
        const Graph gr = power(g, radius);
        if (!power_path.empty()) ctx.emit(power_path, serialize_edge_list(gr));
        if (!profile_path.empty()) {
          WidthOptions wopts;
          wopts.threads = ctx.threads;
          const auto budget = res.profile.budget;
          ColoringProfile prof = verify_low_rw_coloring(
              gr, res.coloring, p, [&](int i) { return budget[static_cast<std::size_t>(i - 1)]; }, wopts);
          prof.product_constant = res.profile.product_constant;
          Json pj = to_json(prof);
          pj["wcol"] = res.wcol_per_radius;
          pj["treedepth_palette"] = res.treedepth.used_count();
          ctx.emit(profile_path, dump(pj));
          if (!prof.verified) throw VerificationFailure("coloring misses its budget");
        }
      }
    } else if (*ver) {
      detail::require_one(ver, "verify");
      const Graph g = ctx.graph(in_path);
      if (*vcol) {
        const Json cj = ctx.json(coloring_path);
        const Coloring c = coloring_from_json(cj);
        c.check_fits(g);
        if (vmode == "proper") {
          const bool ok = is_proper(g, c);
          out << compact({{"mode", "proper"}, {"verified", ok}});
          if (!ok) throw VerificationFailure("coloring is not proper");
        } else if (vmode == "td") {
          const TdVerification res = verify_td_coloring(g, c, p, cap > 0 ? cap : kDefaultTreeDepthCap);
          out << compact({{"mode", "td"}, {"verified", res.verified}, {"checked", res.checked},
                          {"violating_colors", res.violating_colors}});
          if (!res.verified) throw VerificationFailure("a union of classes exceeds its tree-depth budget");
        } else {
          std::vector<std::int64_t> budget = detail::budget_from_json(cj);
          if (linear_budget > 0) {
            budget.clear();
            for (int i = 1; i <= p; ++i) budget.push_back(static_cast<std::int64_t>(linear_budget) * i);
          }
          if (static_cast<int>(budget.size()) < p)
            throw CLI::ValidationError("--linear-budget", "coloring carries no budget for i <= p");
          WidthOptions wopts;
          wopts.threads = ctx.threads;
          if (cap > 0) wopts.exact_cap = cap;
          const ColoringProfile prof =
              verify_low_rw_coloring(g, c, p, [&](int i) { return budget[static_cast<std::size_t>(i - 1)]; }, wopts);
          ctx.emit(out_path, dump(to_json(prof)));
          if (!prof.verified) throw VerificationFailure("coloring misses its budget");
        }
      } else if (*vdec) {
        const RankDecomposition dec = decomposition_from_json(ctx.json(dec_path));
        int w = 0;
        try {
          w = verify_decomposition(g, dec);
        } catch (const DecompositionError& e) {
          out << compact({{"valid", false}, {"error", e.what()}});
          throw VerificationFailure(e.what());
        }
        out << compact({{"valid", true}, {"width", w}});
        if (max_width >= 0 && w > max_width) throw VerificationFailure("decomposition is wider than --max-width");
      }
    } else if (*width) {
      detail::require_one(width, "width");
      const Graph g = ctx.graph(in_path);
      if (*wrank) {
        const int use_cap = cap > 0 ? cap : kDefaultRankWidthCap;
        const WidthReport r = exact ? rank_width_exact(g, use_cap) : upper ? rank_width_upper(g) : rank_width_best(g, use_cap);
        out << compact(to_json(r, ctx.timing, false));
        if (!dec_path.empty()) {
          if (!r.decomposition) throw Error("graph has no rank-decomposition (single vertex)");
          ctx.emit(dec_path, dump(to_json(*r.decomposition)));
        }
      } else {
        const auto t0 = std::chrono::steady_clock::now();
        Json j{{"value", tree_depth_exact(g, cap > 0 ? cap : kDefaultTreeDepthCap)}, {"method", "exact"}};
        if (ctx.timing) j["elapsed_ms"] = lrw::detail::ms_since(t0);
        out << compact(j);
      }
    } else if (*lab) {
      detail::require_one(lab, "lab");
      if (*lcert) {
        const Graph g = in_path.empty() ? twisted_chain(order).graph : ctx.graph(in_path);
        const ChainLayout L = chain_layout_of(g);
        auto family_of = [&](std::uint64_t seed) {
          const std::vector<PartitionFamily> all{PartitionFamily::iid, PartitionFamily::prefix_first,
                                                 PartitionFamily::prefix_second, PartitionFamily::rectangle};
          if (pfamily == "mixed") return all[seed % all.size()];
          for (auto f : all)
            if (pfamily == to_string(f)) return f;
          return PartitionFamily::iid;
        };
        if (runs > 0) {
          std::vector<std::string> lines(static_cast<std::size_t>(runs));
          std::vector<char> ok(static_cast<std::size_t>(runs), 0);
          parallel_for(static_cast<std::size_t>(runs), ctx.threads, [&](std::size_t i, std::size_t) {
            const std::uint64_t s = ctx.seed + i;
            const LowerBoundOutcome res = lower_bound_certificate(g, L, random_balanced_partition(L, family_of(s), s));
            const int ord = res.certificate ? res.certificate->order() : 0;
            const bool verified = res.certificate && certificate_rank(g, *res.certificate) == ord && ord >= res.target;
            ok[i] = verified;
            lines[i] = std::to_string(s) + "," + std::to_string(ord) + "," + (verified ? "true" : "false") + "\n";
          });
          std::string csv = "seed,achieved_order,verified\n";
          for (std::size_t i = 0; i < lines.size(); ++i) {
            csv += lines[i];
            ctx.manifest.seeds.push_back(ctx.seed + i);
          }
          ctx.emit(out_path, csv);
          if (std::find(ok.begin(), ok.end(), 0) != ok.end()) throw VerificationFailure("some runs produced no certificate");
        } else {
          const Bipartition part = partition_path.empty() ? random_balanced_partition(L, family_of(ctx.seed), ctx.seed)
                                                          : partition_from_json(ctx.json(partition_path), g.n());
          ctx.manifest.seeds.push_back(ctx.seed);
          const LowerBoundOutcome res = lower_bound_certificate(g, L, part);
          if (res.certificate) {
            Json j = to_json(*res.certificate);
            j["rank"] = certificate_rank(g, *res.certificate);
            ctx.emit(out_path, dump(j));
          } else {
            ctx.emit(out_path, dump(Json{{"imbalance", to_json(*res.imbalance)}}));
            throw VerificationFailure("partition is not balanced on C");
          }
        }
      } else if (*lram) {
        const int dd = d > 0 ? d : 2;
        const int sz = size > 0 ? size : static_cast<int>(std::min<std::int64_t>(ramsey_bound(k, dd), 1 << 14));
        const int total = std::max(runs, 1);
        std::string csv = "seed,found,guaranteed,color,verified\n";
        bool all = true;
        for (int i = 0; i < total; ++i) {
          const std::uint64_t s = ctx.seed + static_cast<std::uint64_t>(i);
          ctx.manifest.seeds.push_back(s);
          Rng rng(s);
          std::vector<int> table(static_cast<std::size_t>(sz) * sz);
          for (int x = 0; x < sz; ++x)
            for (int y = 0; y < sz; ++y)
              table[static_cast<std::size_t>(x) * sz + y] =
                  function == "parity" ? (x + y) % dd + 1 : 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(dd)));
          auto f = [&](int x, int y) { return table[static_cast<std::size_t>(x) * sz + y]; };
          const RamseyResult res = ramsey_bireduce(sz, sz, dd, k, f);
          all = all && res.found;
          csv += std::to_string(s) + "," + (res.found ? "true" : "false") + "," + (res.guaranteed ? "true" : "false") +
                 "," + std::to_string(res.color) + "," + (res.found ? "true" : "false") + "\n";
        }
        ctx.emit(out_path, csv);
        if (!all) throw VerificationFailure("no monochromatic block found in some run");
      } else if (*lext) {
        if (runs > 0) {
          const Graph g = in_path.empty() ? twisted_chain(order).graph : ctx.graph(in_path);
          const ChainLayout L = chain_layout_of(g);
          const int dd = d > 0 ? d : 2;
          std::vector<std::string> lines(static_cast<std::size_t>(runs));
          std::vector<char> ok(static_cast<std::size_t>(runs), 0);
          parallel_for(static_cast<std::size_t>(runs), ctx.threads, [&](std::size_t i, std::size_t) {
            const std::uint64_t s = ctx.seed + i;
            Rng rng(s);
            std::vector<int> colors(static_cast<std::size_t>(g.n()));
            for (auto& c : colors) c = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(dd)));
            const SubstructureReport res =
                monochromatic_substructure(g, L, Coloring(dd, std::move(colors)), target > 0 ? target : L.order);
            const SubstructureCheck check = verify_substructure(res);
            ok[i] = check.ok();
            lines[i] = std::to_string(s) + "," + std::to_string(res.order) + "," + std::to_string(check.colors_used) +
                       "," + (check.ok() ? "true" : "false") + "\n";
          });
          std::string csv = "seed,achieved_order,colors_used,verified\n";
          for (std::size_t i = 0; i < lines.size(); ++i) {
            csv += lines[i];
            ctx.manifest.seeds.push_back(ctx.seed + i);
          }
          ctx.emit(out_path, csv);
          if (std::find(ok.begin(), ok.end(), 0) != ok.end()) throw VerificationFailure("a substructure failed verification");
        } else {
          if (in_path.empty() || coloring_path.empty())
            throw CLI::ValidationError("lab extract", "needs -i and -c, or --order with --runs");
          const Graph g = ctx.graph(in_path);
          const ChainLayout L = chain_layout_of(g);
          const Coloring c = coloring_from_json(ctx.json(coloring_path));
          const SubstructureReport res = monochromatic_substructure(g, L, c, target > 0 ? target : L.order);
          const SubstructureCheck check = verify_substructure(res);
          Json j = to_json(res);
          j["verified"] = check.ok();
          j["colors_used"] = check.colors_used;
          ctx.emit(out_path, dump(j));
          if (!power_path.empty()) ctx.emit(power_path, serialize_edge_list(res.graph));
          if (!check.ok()) throw VerificationFailure("substructure failed verification");
        }
      }
    } else if (*eh) {
      detail::require_one(eh, "eh");
      const Graph g = ctx.graph(in_path);
      const Coloring c = coloring_path.empty() ? Coloring::constant(g.n()) : coloring_from_json(ctx.json(coloring_path));
      c.check_fits(g);
      int bound = r1;
      const int use_cap = cap > 0 ? cap : 16;
      if (bound < 0) {
        bound = 0;
        for (int col : c.colors_of(g.all())) {
          const auto h = induced_subgraph(g, c.color_class(col));
          bound = std::max(bound, rank_width_best(h.graph, use_cap).value);
        }
      }
      const EHWitness w = eh_witness(g, c, bound, use_cap);
      Json j = to_json(w);
      j["r1"] = bound;
      j["n1"] = w.params.n1;
      ctx.emit(out_path, dump(j));
    } else if (*chi) {
      detail::require_one(chi, "chi");
      const Graph g = ctx.graph(in_path);
      const ProductColoring pc = chi_product_coloring(g, coloring_from_json(ctx.json(coloring_path)));
      Json j = to_json(pc.coloring);
      j["classes"] = pc.classes;
      j["max_class_palette"] = pc.max_class_palette;
      j["bound"] = pc.bound();
      ctx.emit(out_path, dump(j));
      if (pc.coloring.palette_size() > pc.bound()) throw VerificationFailure("product palette exceeds N(1) times the class palette");
    } else if (*rep) {
      detail::require_one(rep, "report");
      if (*rsweep) {
        const Json spec = ctx.json(spec_path);
        std::vector<std::pair<Json, std::uint64_t>> jobs;
        for (const auto& r : spec.value("runs", Json::array())) {
          const auto seeds = r.value("seeds", std::vector<std::uint64_t>{ctx.seed});
          for (auto s : seeds) {
            jobs.emplace_back(r, s);
            ctx.manifest.seeds.push_back(s);
          }
        }
        std::vector<SweepRow> rows(jobs.size());
        parallel_for(jobs.size(), ctx.threads,
                     [&](std::size_t i, std::size_t) { rows[i] = run_sweep_row(jobs[i].first, jobs[i].second); });
        std::string csv = kSweepHeader;
        bool all = true;
        for (const auto& r : rows) {
          csv += csv_row(r, ctx.timing);
          all = all && r.verified;
        }
        ctx.emit(out_path, csv);
        if (!all) code = kExitFailed;
      } else if (*rreplay) {
        const RunManifest m = RunManifest::from_json(ctx.json(spec_path));
        return run(m.argv, out, err);
      }
    }
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    code = kExitFailed;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!manifest_path.empty()) {
    if (ctx.timing) ctx.manifest.wall_clock_ms = lrw::detail::ms_since(start);
    std::vector<std::string> recorded;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      recorded.push_back(args[i]);
    }
    ctx.manifest.argv = recorded;
    write_file(ctx.output_path(manifest_path), dump(ctx.manifest.to_json()));
  }
  return code;
}

}  // namespace lrw::cli
