#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrw/bitset.hpp"
#include "lrw/coloring.hpp"
#include "lrw/error.hpp"
#include "lrw/generators.hpp"
#include "lrw/gf2.hpp"
#include "lrw/graph.hpp"
#include "lrw/random.hpp"
#include "lrw/width.hpp"

namespace lrw {

// Partitions of a twisted chain use Bipartition with x = S and y = T.

inline void check_partition(const Graph& g, const Bipartition& p) {
  if (p.x.universe() != g.n() || p.y.universe() != g.n()) throw Error("partition universe does not match the graph");
  if (p.x.intersects(p.y)) throw Error("partition sides overlap at vertex " + std::to_string((p.x & p.y).first()));
  const VertexSet missing = VertexSet::full(g.n()) - (p.x | p.y);
  if (missing.any()) throw Error("partition misses vertex " + std::to_string(missing.first()));
}

inline Bipartition partition_from_s(const VertexSet& s) { return {s, s.complement()}; }

/// Vertex set of C in the canonical layout.
inline VertexSet chain_c_block(const ChainLayout& L) {
  VertexSet c(L.size());
  for (int i = 1; i <= L.order; ++i)
    for (int j = 1; j <= L.order; ++j) c.set(L.c(i, j));
  return c;
}

/// 3|S ∩ C| >= |C| and 3|T ∩ C| >= |C|.
inline bool balanced_on_c(const ChainLayout& L, const Bipartition& p) {
  const VertexSet c = chain_c_block(L);
  const int cs = c.count();
  return 3 * (p.x & c).count() >= cs && 3 * (p.y & c).count() >= cs;
}

// ---------------------------------------------------------------- certificates

enum class ChainSide { A, B };

struct MatchingPair {
  int a = 1;  // index of v_a (A side) or w_a (B side)
  int b = 1;  // z_(b,c)
  int c = 1;
  friend bool operator==(const MatchingPair&, const MatchingPair&) = default;
};

struct MatchingCertificate {
  ChainSide side = ChainSide::A;
  bool s_first = true;  // direction (S,T) when true, (T,S) otherwise
  int host_order = 1;   // m
  std::vector<MatchingPair> pairs;

  int order() const { return static_cast<int>(pairs.size()); }
  int scalar(const MatchingPair& p) const {
    return side == ChainSide::A ? (p.b - 1) * host_order + p.c : (p.c - 1) * host_order + p.b;
  }
  int a_vertex(const ChainLayout& L, const MatchingPair& p) const { return side == ChainSide::A ? L.a(p.a) : L.b(p.a); }
  friend bool operator==(const MatchingCertificate&, const MatchingCertificate&) = default;
};

/// Checks a_1 <= s_1 < a_2 <= s_2 < ... and index ranges; throws naming the failing index.
inline void check_chain_condition(const MatchingCertificate& cert) {
  const int m = cert.host_order;
  if (m < 1) throw Error("certificate host order must be >= 1");
  if (cert.pairs.empty()) throw Error("certificate has no pairs");
  for (int i = 0; i < cert.order(); ++i) {
    const auto& p = cert.pairs[i];
    if (p.a < 1 || p.a > m * m || p.b < 1 || p.b > m || p.c < 1 || p.c > m)
      throw Error("certificate pair " + std::to_string(i + 1) + " has an index out of range");
    if (p.a > cert.scalar(p))
      throw Error("chain condition fails at index " + std::to_string(i + 1) + ": a exceeds its z position");
    if (i > 0 && cert.scalar(cert.pairs[i - 1]) >= p.a)
      throw Error("chain condition fails at index " + std::to_string(i + 1) + ": a does not exceed the previous z position");
  }
}

/// a-vertices on the first direction side, z-vertices on the second.
inline void check_certificate_sides(const MatchingCertificate& cert, const Bipartition& p) {
  const ChainLayout L{cert.host_order};
  const VertexSet& first = cert.s_first ? p.x : p.y;
  const VertexSet& second = cert.s_first ? p.y : p.x;
  for (int i = 0; i < cert.order(); ++i) {
    const auto& q = cert.pairs[i];
    if (!first.test(cert.a_vertex(L, q)))
      throw Error("certificate pair " + std::to_string(i + 1) + ": a-vertex on the wrong side");
    if (!second.test(L.c(q.b, q.c)))
      throw Error("certificate pair " + std::to_string(i + 1) + ": z-vertex on the wrong side");
  }
}

/// GF(2) rank of the k x k cut submatrix (rows a-vertices, columns z-vertices).
inline int certificate_rank(const Graph& g, const MatchingCertificate& cert) {
  check_chain_condition(cert);
  const ChainLayout L{cert.host_order};
  if (g.n() != L.size())
    throw Error("certificate expects a twisted chain of order " + std::to_string(cert.host_order));
  const int k = cert.order();
  std::vector<VertexSet> rows(static_cast<std::size_t>(k), VertexSet(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (g.adjacent(cert.a_vertex(L, cert.pairs[i]), L.c(cert.pairs[j].b, cert.pairs[j].c))) rows[i].set(j);
  return gf2_rank(std::move(rows));
}

// ---------------------------------------------------------------- alternating sequences

enum class LexOrder { first, second };  // leading coordinate is the first (rows) or the second (columns)

struct GridPoint {
  int x = 1;
  int y = 1;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Lines (rows for `first`, columns for `second`) holding elements of both S and T.
inline std::vector<int> mixed_lines(const ChainLayout& L, const Bipartition& p, LexOrder lex) {
  std::vector<int> out;
  for (int line = 1; line <= L.order; ++line) {
    bool s = false, t = false;
    for (int pos = 1; pos <= L.order; ++pos) {
      const int v = lex == LexOrder::first ? L.c(line, pos) : L.c(pos, line);
      (p.x.test(v) ? s : t) = true;
    }
    if (s && t) out.push_back(line);
  }
  return out;
}

/// One element per mixed line in increasing line order: an S-element on odd
/// positions, a T-element on even ones (the first such element of the line).
inline std::vector<GridPoint> alternating_sequence(const ChainLayout& L, const Bipartition& p, LexOrder lex) {
  std::vector<GridPoint> seq;
  for (int line : mixed_lines(L, p, lex)) {
    const bool want_s = seq.size() % 2 == 0;
    for (int pos = 1; pos <= L.order; ++pos) {
      const GridPoint pt = lex == LexOrder::first ? GridPoint{line, pos} : GridPoint{pos, line};
      if (p.x.test(L.c(pt.x, pt.y)) == want_s) {
        seq.push_back(pt);
        break;
      }
    }
  }
  return seq;
}

/// Pairs positions (2i-1, 2i): a_i is the scalar of the odd element and the z of the pair on the
/// side opposite to its a-vertex is matched with it; the majority direction's first k = len/4 pairs are kept.
inline MatchingCertificate matching_from_alternation(const ChainLayout& L, const Bipartition& p,
                                                     const std::vector<GridPoint>& seq, ChainSide side) {
  if (seq.size() < 4) throw Error("alternating sequence needs length >= 4, got " + std::to_string(seq.size()));
  const int m = L.order;
  auto scalar = [&](const GridPoint& q) { return side == ChainSide::A ? (q.x - 1) * m + q.y : (q.y - 1) * m + q.x; };
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const bool in_s = p.x.test(L.c(seq[j].x, seq[j].y));
    if (in_s != (j % 2 == 0))
      throw Error("sequence is not alternating at position " + std::to_string(j + 1));
    if (j > 0 && scalar(seq[j - 1]) >= scalar(seq[j]))
      throw Error("sequence is not increasing at position " + std::to_string(j + 1));
  }
  const int k = static_cast<int>(seq.size() / 4);
  std::vector<MatchingPair> st, ts;
  for (int i = 0; i < 2 * k; ++i) {
    const GridPoint& odd = seq[2 * i];
    const GridPoint& even = seq[2 * i + 1];
    const int a = scalar(odd);
    const int av = side == ChainSide::A ? L.a(a) : L.b(a);
    if (p.x.test(av))
      st.push_back({a, even.x, even.y});
    else
      ts.push_back({a, odd.x, odd.y});
  }
  MatchingCertificate cert;
  cert.side = side;
  cert.host_order = m;
  cert.s_first = st.size() >= ts.size();
  cert.pairs = cert.s_first ? st : ts;
  cert.pairs.resize(static_cast<std::size_t>(k));
  check_chain_condition(cert);
  check_certificate_sides(cert, p);
  return cert;
}

struct ImbalanceReport {
  int mixed_rows = 0;
  int mixed_columns = 0;
  bool heavy_is_s = true;  // side holding every non-mixed row
  int heavy_count = 0;     // |heavy side ∩ C|
  int c_size = 0;
};

struct LowerBoundOutcome {
  std::optional<MatchingCertificate> certificate;
  std::optional<ImbalanceReport> imbalance;
  int target = 0;  // floor(m/12)
};

/// Certificate of order >= floor(m/12) across (S,T), or a report showing (S,T) is not C-balanced.
inline LowerBoundOutcome lower_bound_certificate(const Graph& g, const ChainLayout& L, const Bipartition& p) {
  if (L.order < 12) throw Error("lower_bound_certificate needs order >= 12");
  if (g.n() != L.size()) throw Error("graph is not a twisted chain of order " + std::to_string(L.order));
  check_partition(g, p);
  LowerBoundOutcome out;
  out.target = L.order / 12;
  const int need = 4 * out.target;
  const auto rows = mixed_lines(L, p, LexOrder::first);
  const auto cols = mixed_lines(L, p, LexOrder::second);
  if (static_cast<int>(rows.size()) >= need) {
    out.certificate = matching_from_alternation(L, p, alternating_sequence(L, p, LexOrder::first), ChainSide::A);
  } else if (static_cast<int>(cols.size()) >= need) {
    out.certificate = matching_from_alternation(L, p, alternating_sequence(L, p, LexOrder::second), ChainSide::B);
  } else {
    ImbalanceReport rep;
    rep.mixed_rows = static_cast<int>(rows.size());
    rep.mixed_columns = static_cast<int>(cols.size());
    rep.c_size = L.order * L.order;
    // some row is non-mixed since fewer than m rows are mixed; all non-mixed rows share a side,
    // otherwise every column would be mixed
    for (int i = 1; i <= L.order; ++i)
      if (!std::binary_search(rows.begin(), rows.end(), i)) {
        rep.heavy_is_s = p.x.test(L.c(i, 1));
        break;
      }
    rep.heavy_count = ((rep.heavy_is_s ? p.x : p.y) & chain_c_block(L)).count();
    out.imbalance = rep;
  }
  return out;
}

// ---------------------------------------------------------------- harness partitions

enum class PartitionFamily { iid, prefix_first, prefix_second, rectangle };

inline const char* to_string(PartitionFamily f) {
  switch (f) {
    case PartitionFamily::iid:
      return "iid";
    case PartitionFamily::prefix_first:
      return "prefix-rows";
    case PartitionFamily::prefix_second:
      return "prefix-columns";
    case PartitionFamily::rectangle:
      return "rectangle";
  }
  return "?";
}

/// Seeded C-balanced bipartition of a twisted chain. A and B vertices are placed by fair coins;
/// the C part follows `family`, then a few random flips are applied when balance survives them.
inline Bipartition random_balanced_partition(const ChainLayout& L, PartitionFamily family, std::uint64_t seed) {
  Rng rng(seed);
  const int m = L.order;
  const int cs = m * m;
  VertexSet s(L.size());
  for (int k = 1; k <= cs; ++k) {
    if (rng() & 1U) s.set(L.a(k));
    if (rng() & 1U) s.set(L.b(k));
  }
  auto balanced_count = [&](int cnt) { return 3 * cnt >= cs && 3 * (cs - cnt) >= cs; };
  const int lo = (cs + 2) / 3;
  const int hi = cs - lo;
  const int threshold = lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
  switch (family) {
    case PartitionFamily::iid: {
      std::vector<int> cells(static_cast<std::size_t>(cs));
      for (int i = 0; i < cs; ++i) cells[i] = i;
      shuffle(rng, cells);
      for (int i = 0; i < threshold; ++i) s.set(2 * cs + cells[i]);
      break;
    }
    case PartitionFamily::prefix_first:
      for (int i = 0; i < threshold; ++i) s.set(2 * cs + i);
      break;
    case PartitionFamily::prefix_second:
      for (int i = 0; i < threshold; ++i) s.set(L.c(i % m + 1, i / m + 1));
      break;
    case PartitionFamily::rectangle: {
      for (int attempt = 0;; ++attempt) {
        const int x1 = 1 + static_cast<int>(uniform_below(rng, m)), x2 = 1 + static_cast<int>(uniform_below(rng, m));
        const int y1 = 1 + static_cast<int>(uniform_below(rng, m)), y2 = 1 + static_cast<int>(uniform_below(rng, m));
        const int area = (std::abs(x1 - x2) + 1) * (std::abs(y1 - y2) + 1);
        if (!balanced_count(area) && attempt < 10000) continue;
        if (!balanced_count(area)) {
          for (int i = 0; i < threshold; ++i) s.set(2 * cs + i);
          break;
        }
        for (int x = std::min(x1, x2); x <= std::max(x1, x2); ++x)
          for (int y = std::min(y1, y2); y <= std::max(y1, y2); ++y) s.set(L.c(x, y));
        break;
      }
      break;
    }
  }
  VertexSet flipped = s;
  const int flips = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(m) + 1));
  for (int f = 0; f < flips; ++f) flipped.flip(2 * cs + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cs))));
  Bipartition out = partition_from_s(flipped);
  if (!balanced_on_c(L, out)) out = partition_from_s(s);
  return out;
}

// ---------------------------------------------------------------- Ramsey extraction

inline std::int64_t ramsey_bound(std::int64_t k, std::int64_t d) {
  std::int64_t out = k;
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t e = 0; e < d * k; ++e) {
    if (out > limit / std::max<std::int64_t>(d, 1)) return limit;
    out *= d;
  }
  return out;
}

struct RamseyResult {
  bool found = false;
  bool guaranteed = false;
  std::vector<int> x;  // positions into the X index range
  std::vector<int> y;
  int color = 0;
};

/// f on {0..nx-1} x {0..ny-1} with values 1..d. Types every y by its restriction to the
/// first dk elements of X, then picks a popular type and a color it hits k times.
inline RamseyResult ramsey_bireduce(int nx, int ny, int d, int k, const std::function<int(int, int)>& f) {
  if (k < 1 || d < 1) throw Error("ramsey_bireduce needs k, d >= 1");
  RamseyResult out;
  const std::int64_t bound = ramsey_bound(k, d);
  out.guaranteed = nx >= bound && ny >= bound;
  auto attempt = [&](int x0_size) -> bool {
    std::map<std::vector<int>, std::vector<int>> types;
    std::vector<std::vector<int>> first_seen;
    for (int y = 0; y < ny; ++y) {
      std::vector<int> type(static_cast<std::size_t>(x0_size));
      for (int x = 0; x < x0_size; ++x) type[x] = f(x, y);
      auto [it, fresh] = types.try_emplace(type);
      if (fresh) first_seen.push_back(type);
      it->second.push_back(y);
    }
    for (const auto& type : first_seen) {
      const auto& ys = types[type];
      if (static_cast<int>(ys.size()) < k) continue;
      for (int color = 1; color <= d; ++color) {
        std::vector<int> xs;
        for (int x = 0; x < x0_size && static_cast<int>(xs.size()) < k; ++x)
          if (type[x] == color) xs.push_back(x);
        if (static_cast<int>(xs.size()) < k) continue;
        out.x = xs;
        out.y.assign(ys.begin(), ys.begin() + k);
        out.color = color;
        return true;
      }
    }
    return false;
  };
  const int x0 = static_cast<int>(std::min<std::int64_t>(static_cast<std::int64_t>(d) * k, nx));
  out.found = attempt(x0) || (!out.guaranteed && x0 < nx && attempt(nx));
  if (out.found) {
    for (int x : out.x)
      for (int y : out.y)
        if (f(x, y) != out.color) throw ContractError("ramsey_bireduce produced a non-constant block");
  } else if (out.guaranteed) {
    throw ContractError("ramsey_bireduce failed above its size threshold");
  }
  return out;
}

// ---------------------------------------------------------------- monochromatic substructure

struct SubstructureStage {
  std::string layer;  // "C", "A" or "B"
  int size = 0;
  bool threshold_met = false;
};

struct SubstructureReport {
  int host_order = 0;
  int colors = 0;  // distinct colors on the host
  int order = 0;   // achieved t
  bool staged = false;  // proof pipeline with all thresholds met
  std::vector<SubstructureStage> stages;
  std::vector<int> xs;  // X_3, 1-based host indices, increasing
  std::vector<int> ys;
  std::vector<int> host_vertex;  // new-layout vertex -> host vertex
  Graph graph = Graph(1, {});    // induced subgraph in the new layout of order t
  Coloring coloring;             // restriction of the host coloring
  std::uint64_t search_nodes = 0;
};

inline constexpr std::uint64_t kSubstructureNodeBudget = 4'000'000;

namespace detail {

/// Host vertices of the three layers at grid cell (x, y), 1-based.
struct LayerCells {
  const ChainLayout& L;
  int z(int x, int y) const { return L.c(x, y); }
  int v(int x, int y) const { return L.a((x - 1) * L.order + y); }
  int w(int x, int y) const { return L.b((y - 1) * L.order + x); }
};

/// Largest t' <= t with X, Y of size t' where each layer is monochromatic on X x Y.
class CombinedBlockSearch {
 public:
  CombinedBlockSearch(const ChainLayout& L, const std::vector<int>& color, int d, std::uint64_t budget)
      : m_(L.order), d_(d), budget_(budget) {
    const LayerCells cells{L};
    const int triples = d * d * d;
    cell_.assign(static_cast<std::size_t>(m_) * triples, VertexSet(m_));
    for (int y = 1; y <= m_; ++y)
      for (int x = 1; x <= m_; ++x) {
        const int t = ((color[cells.z(x, y)] - 1) * d + color[cells.v(x, y)] - 1) * d +
                      color[cells.w(x, y)] - 1;
        cell_[static_cast<std::size_t>(y - 1) * triples + t].set(x - 1);
      }
  }

  std::optional<std::pair<std::vector<int>, std::vector<int>>> find(int t) {
    target_ = t;
    chosen_.clear();
    result_.reset();
    const int triples = d_ * d_ * d_;
    std::vector<VertexSet> masks(static_cast<std::size_t>(triples), VertexSet::full(m_));
    descend(0, masks);
    return result_;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return nodes_ >= budget_; }

 private:
  bool descend(int next_y, const std::vector<VertexSet>& masks) {
    if (++nodes_ >= budget_) return false;
    if (static_cast<int>(chosen_.size()) == target_) {
      for (const auto& mk : masks)
        if (mk.count() >= target_) {
          std::vector<int> xs;
          for (int x = mk.first(); x != -1 && static_cast<int>(xs.size()) < target_; x = mk.next(x + 1))
            xs.push_back(x + 1);
          result_ = std::make_pair(std::move(xs), chosen_);
          return true;
        }
      return false;
    }
    const int triples = d_ * d_ * d_;
    const int remaining = target_ - static_cast<int>(chosen_.size());
    for (int y = next_y; y + remaining <= m_; ++y) {
      std::vector<VertexSet> narrowed(static_cast<std::size_t>(triples), VertexSet(m_));
      bool alive = false;
      for (int t = 0; t < triples; ++t) {
        narrowed[t] = masks[t] & cell_[static_cast<std::size_t>(y) * triples + t];
        if (narrowed[t].count() >= target_) alive = true;
      }
      if (!alive) continue;
      chosen_.push_back(y + 1);
      if (descend(y + 1, narrowed)) return true;
      chosen_.pop_back();
      if (nodes_ >= budget_) return false;
    }
    return false;
  }

  int m_;
  int d_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  int target_ = 0;
  std::vector<VertexSet> cell_;  // [y][triple] -> x-set
  std::vector<int> chosen_;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> result_;
};

}  // namespace detail

/// Induced subgraph on v, w, z indexed by xs x ys, laid out as a twisted chain of order |xs|.
inline void build_substructure(const Graph& g, const ChainLayout& host, const Coloring& c, SubstructureReport& rep) {
  const int t = static_cast<int>(rep.xs.size());
  const ChainLayout sub{t};
  const detail::LayerCells cells{host};
  rep.host_vertex.assign(static_cast<std::size_t>(sub.size()), -1);
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) {
      const int x = rep.xs[a - 1], y = rep.ys[b - 1];
      rep.host_vertex[sub.a(t * (a - 1) + b)] = cells.v(x, y);
      rep.host_vertex[sub.b(t * (b - 1) + a)] = cells.w(x, y);
      rep.host_vertex[sub.c(a, b)] = cells.z(x, y);
    }
  std::vector<VertexSet> rows(static_cast<std::size_t>(sub.size()), VertexSet(sub.size()));
  std::vector<int> colors(static_cast<std::size_t>(sub.size()));
  for (int i = 0; i < sub.size(); ++i) {
    colors[i] = c[rep.host_vertex[i]];
    for (int j = 0; j < sub.size(); ++j)
      if (g.adjacent(rep.host_vertex[i], rep.host_vertex[j])) rows[i].set(j);
  }
  std::vector<std::string> text;
  for (const auto& l : chain_labels(t)) text.push_back(label_json(l));
  rep.graph = Graph::from_rows(std::move(rows)).with_labels(std::move(text));
  rep.coloring = Coloring(c.palette_size(), std::move(colors));
  rep.order = t;
}

/// Twisted chain of order <= target inside G_tc whose three layers are each monochromatic.
///
/// The proof's three Ramsey stages run when the host order reaches M(M(M(t,d),d),d); otherwise a
/// bounded search for the largest block that is simultaneously monochromatic on all layers is used.
inline SubstructureReport monochromatic_substructure(const Graph& g, const ChainLayout& L, const Coloring& c, int target,
                                                     std::uint64_t node_budget = kSubstructureNodeBudget) {
  if (g.n() != L.size()) throw Error("graph is not a twisted chain of order " + std::to_string(L.order));
  c.check_fits(g);
  const int m = L.order;
  target = std::clamp(target, 1, m);
  // compress colors to 1..d
  std::map<int, int> dense;
  for (int v = 0; v < g.n(); ++v) dense.emplace(c[v], 0);
  int d = 0;
  for (auto& [col, id] : dense) id = ++d;
  std::vector<int> color(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) color[v] = dense[c[v]];

  SubstructureReport rep;
  rep.host_order = m;
  rep.colors = d;
  const detail::LayerCells cells{L};
  const std::int64_t m1 = ramsey_bound(target, d);
  const std::int64_t m2 = ramsey_bound(m1, d);
  const std::int64_t m3 = ramsey_bound(m2, d);
  if (m >= m3) {
    rep.staged = true;
    std::vector<int> xs(static_cast<std::size_t>(m)), ys(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) xs[i] = ys[i] = i + 1;
    auto stage = [&](const char* layer, std::int64_t k, auto cell) {
      const int nx = static_cast<int>(xs.size());
      const auto res = ramsey_bireduce(nx, nx, d, static_cast<int>(k),
                                       [&](int i, int j) { return color[cell(xs[i], ys[j])]; });
      std::vector<int> nxs, nys;
      for (int i : res.x) nxs.push_back(xs[i]);
      for (int j : res.y) nys.push_back(ys[j]);
      std::sort(nxs.begin(), nxs.end());
      std::sort(nys.begin(), nys.end());
      xs = std::move(nxs);
      ys = std::move(nys);
      rep.stages.push_back({layer, static_cast<int>(xs.size()), res.guaranteed});
    };
    stage("C", m2, [&](int x, int y) { return cells.z(x, y); });
    stage("A", m1, [&](int x, int y) { return cells.v(x, y); });
    stage("B", target, [&](int x, int y) { return cells.w(x, y); });
    rep.xs = std::move(xs);
    rep.ys = std::move(ys);
  } else {
    detail::CombinedBlockSearch search(L, color, d, node_budget);
    std::pair<std::vector<int>, std::vector<int>> best{{1}, {1}};
    for (int t = 1; t <= target; ++t) {
      auto found = search.find(t);
      if (!found) break;
      best = std::move(*found);
    }
    rep.search_nodes = search.nodes();
    rep.xs = std::move(best.first);
    rep.ys = std::move(best.second);
    for (const char* layer : {"C", "A", "B"}) rep.stages.push_back({layer, static_cast<int>(rep.xs.size()), false});
  }
  build_substructure(g, L, c, rep);
  return rep;
}

struct SubstructureCheck {
  bool adjacency_ok = true;
  int colors_used = 0;
  bool ok() const { return adjacency_ok && colors_used <= 3; }
};

/// Both A-C and B-C adjacency rules on the new layout, and the number of colors received.
inline SubstructureCheck verify_substructure(const SubstructureReport& rep) {
  SubstructureCheck out;
  const int t = rep.order;
  const ChainLayout L{t};
  if (rep.graph.n() != L.size()) {
    out.adjacency_ok = false;
    return out;
  }
  for (int k = 1; k <= t * t; ++k)
    for (int i = 1; i <= t; ++i)
      for (int j = 1; j <= t; ++j) {
        if (rep.graph.adjacent(L.a(k), L.c(i, j)) != chain_a_adjacent(t, k, i, j)) out.adjacency_ok = false;
        if (rep.graph.adjacent(L.b(k), L.c(i, j)) != chain_b_adjacent(t, k, i, j)) out.adjacency_ok = false;
      }
  out.colors_used = rep.coloring.used_count();
  return out;
}

}  // namespace lrw
