#include "polylat/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "polylat/io.hpp"
#include "polylat/knot.hpp"
#include "polylat/oracle.hpp"
#include "polylat/statmech.hpp"

namespace polylat {

namespace {

using Clock = std::chrono::steady_clock;

EnsembleSpec make_spec(PolymerClass cls, int d, int n, Boundary b = Boundary::penetrable,
                       Convention c = Convention::contains_origin) {
  return {cls, d, n, b, c};
}

EnumerateOptions options(const ReproOptions& o) {
  EnumerateOptions e;
  e.threads = o.threads;
  e.budget.max_size = 64;  // the table picks its own sizes
  return e;
}

// Tables are shared between criteria within one run.
class TableStore {
 public:
  explicit TableStore(const ReproOptions& o) : opts_(options(o)) {}
  const TopologyTable& get(const EnsembleSpec& s) {
    auto it = tables_.find(s.str());
    if (it == tables_.end()) it = tables_.emplace(s.str(), count_by_topology(s, opts_)).first;
    return it->second;
  }
  const EnumerateOptions& opts() const { return opts_; }

 private:
  EnumerateOptions opts_;
  std::map<std::string, TopologyTable> tables_;
};

TableStore& store(const ReproOptions& o) {
  static TableStore s(o);
  return s;
}

int max_key(const VisitHistogram& h) { return h.empty() ? -1 : h.rbegin()->first; }

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Hashing of comb pieces --------------------------------------------------------

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 29;
  return h;
}

std::uint64_t point_key(const LatticePoint& p, const LatticePoint& origin) {
  std::uint64_t k = 0;
  for (int i = 0; i < p.dim(); ++i) k = k << 8 | static_cast<std::uint8_t>(p[i] - origin[i] + 128);
  return k;
}

// Translation-invariant hash of a labelled piece given by its edges and labels.
std::uint64_t piece_hash(const std::vector<std::pair<LatticePoint, LatticePoint>>& edges,
                         const LatticePoint& a, const LatticePoint& b, std::uint64_t seed) {
  LatticePoint lo = std::min(a, b);
  for (const auto& [x, y] : edges) lo = std::min({lo, x, y});
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  keys.reserve(edges.size());
  for (const auto& [x, y] : edges) {
    auto kx = point_key(x, lo), ky = point_key(y, lo);
    keys.emplace_back(std::min(kx, ky), std::max(kx, ky));
  }
  std::sort(keys.begin(), keys.end());
  std::uint64_t h = mix(seed, keys.size());
  for (auto [x, y] : keys) h = mix(mix(h, x), y);
  return mix(mix(h, point_key(a, lo)), point_key(b, lo));
}

constexpr std::uint64_t kPieceSeed[3] = {0x1234567ULL, 0x89abcdefULL, 0x2468aceULL};

}  // namespace

std::uint64_t decomposition_hash(const std::vector<LatticePoint>& sites, const CombStructure& cs, int n) {
  const auto plan = plan_comb_decompose(cs, n);
  std::uint64_t h = 0;
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  for (int k = 0; k < 3; ++k) {
    const auto& p = plan.pieces[k];
    edges.clear();
    for (auto [x, y] : p.edges) edges.emplace_back(sites[x], sites[y]);
    h = mix(h, piece_hash(edges, sites[p.a], sites[p.b], kPieceSeed[k]));
  }
  return h;
}

std::uint64_t decomposition_hash(const Configuration& comb, const CombStructure& cs, int n) {
  std::vector<LatticePoint> sites;
  for (int i = 0; i < comb.num_sites(); ++i) sites.push_back(comb.site(i));
  return decomposition_hash(sites, cs, n);
}

std::uint64_t decomposition_hash(const Decomposition& d) {
  const LatticePolymer* pieces[3] = {&d.first, &d.second, &d.walk};
  std::uint64_t h = 0;
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = *pieces[k]->label_points();
    h = mix(h, piece_hash(pieces[k]->edge_points(), a, b, kPieceSeed[k]));
  }
  return h;
}

namespace {

// Criteria ------------------------------------------------------------------------

using Results = std::vector<CriterionResult>;

CriterionResult result(std::string id, std::string title, bool pass, std::string detail) {
  return {std::move(id), std::move(title), pass, false, std::move(detail), 0};
}

AdjacencyList path_graph(int n) {
  AdjacencyList adj(n);
  for (int i = 0; i + 1 < n; ++i) adj[i].push_back(i + 1), adj[i + 1].push_back(i);
  return adj;
}

AdjacencyList star_graph(int leaves) {
  AdjacencyList adj(leaves + 1);
  for (int i = 1; i <= leaves; ++i) adj[0].push_back(i), adj[i].push_back(0);
  return adj;
}

Results criterion1(const ReproOptions& o) {
  const auto& t = store(o).get(make_spec(PolymerClass::tree, 3, 5));
  std::vector<BigCount> counts;
  BigCount path = 0, star = 0;
  for (const auto& c : t.classes) {
    counts.push_back(c.count);
    if (c.key == tree_code(path_graph(5))) path = c.count;
    if (c.key == tree_code(star_graph(4))) star = c.count;
  }
  std::sort(counts.begin(), counts.end());
  const bool ok = counts == std::vector<BigCount>{75, 1500, 1815} && t.total() == 3390 &&
                  path == 1815 && star == 75;
  std::ostringstream os;
  os << "classes " << counts.size() << ": path " << path << ", star " << star << ", total " << t.total();
  return {result("1", "tree census d=3 N=5", ok, os.str())};
}

Results criterion2(const ReproOptions& o) {
  auto s = summarize(make_spec(PolymerClass::walk, 3, 4, Boundary::penetrable, Convention::from_origin),
                     store(o).opts());
  return {result("2", "4-step walks from the origin, d=3", s.total == 726, "count " + s.total.str())};
}

// Largest sizes at which criterion 3 enumerates combs outright.
constexpr int kCombCensusEnumerated[2] = {11, 8};  // d = 2, 3

Results criterion3(const ReproOptions& o) {
  bool ok = true;
  std::vector<std::string> notes;
  for (int d : {2, 3}) {
    const int enumerated = kCombCensusEnumerated[d - 2];
    std::vector<std::string> bad;
    for (int n = 2; n <= 12; ++n) {
      const std::size_t expect = std::size_t{1} << (n - 2);
      // every signature is realised by an explicit, validated comb
      const auto sigs = CombSignature::all(n);
      std::set<TopologyKey> witnessed;
      bool wit_ok = sigs.size() == expect;
      for (const auto& sig : sigs) {
        auto w = straight_comb_witness(sig, d);
        wit_ok = wit_ok && validate(w) && static_cast<int>(w.num_edges()) == n &&
                 comb_signature(w) == sig;
        witnessed.insert(signature_key(comb_signature(w)));
      }
      wit_ok = wit_ok && witnessed.size() == expect;
      bool enum_ok = true;
      if (n <= enumerated) {
        const auto& t = store(o).get(make_spec(PolymerClass::comb, d, n));
        std::set<TopologyKey> seen;
        for (const auto& c : t.classes)
          if (c.count > 0) seen.insert(c.key);
        enum_ok = seen == witnessed;
      }
      if (!wit_ok || !enum_ok) bad.push_back(std::to_string(n));
    }
    ok = ok && bad.empty();
    notes.push_back("d=" + std::to_string(d) + ": enumerated N<=" + std::to_string(enumerated) +
                    ", witnesses N<=12" + (bad.empty() ? "" : ", mismatch at N=" + join(bad, "/")));
  }
  return {result("3", "comb classes = 2^(N-2), 2<=N<=12", ok, join(notes, "; "))};
}

Results criterion4(const ReproOptions& o) {
  bool ok = true;
  std::vector<std::string> notes;
  for (int d : {2, 3}) {
    const int top = d == 2 ? 13 : 9;
    for (int n = 2; n <= top; ++n) {
      if (n != 2 && n % 2 == 0) continue;
      auto s = summarize(make_spec(PolymerClass::polygon, d, n, Boundary::penetrable,
                                   Convention::translation_classes),
                         store(o).opts());
      if (s.total != 0) ok = false, notes.push_back("r_" + std::to_string(n) + "!=0");
    }
  }
  notes.push_back("r_N=0 for N=2 and odd N<=13 (d=2), <=9 (d=3)");
  for (int n = 4; n <= 14; n += 2)
    for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
      const auto& t = store(o).get(make_spec(PolymerClass::polygon, 2, n, b));
      const auto h = t.marginal();
      const bool good = max_key(h) == n / 2 && h.at(n / 2) > 0;
      if (!good) ok = false, notes.push_back("max sigma wrong at N=" + std::to_string(n));
    }
  notes.push_back("d=2 max sigma = N/2 for even 4<=N<=14, both boundaries");
  return {result("4", "polygon parity and max visits", ok, join(notes, "; "))};
}

Results criterion5(const ReproOptions& o) {
  Results out;
  bool ok = true;
  std::vector<std::string> notes;
  for (auto [d, top] : {std::pair{2, 8}, std::pair{3, 6}})
    for (int n = 1; n <= top; ++n) {
      auto s = summarize(make_spec(PolymerClass::tree, d, n, Boundary::penetrable,
                                   Convention::translation_classes),
                         store(o).opts());
      const auto want = oracle::tree_count(d, n);
      if (s.total != want) {
        ok = false;
        notes.push_back("d=" + std::to_string(d) + " N=" + std::to_string(n) + ": " + s.total.str() +
                        " vs " + std::to_string(want));
      }
    }
  notes.push_back("t_N vs site-set/Kirchhoff oracle, d=2 N<=8, d=3 N<=6");
  out.push_back(result("5", "tree counts vs naive oracle", ok, join(notes, "; ")));

  bool aok = true;
  std::string worst;
  for (int n = 1; n <= 6; ++n) {
    auto s = summarize(make_spec(PolymerClass::animal, 2, n, Boundary::penetrable,
                                 Convention::translation_classes),
                       store(o).opts());
    if (s.total != oracle::animal_count(2, n)) aok = false, worst = "mismatch at N=" + std::to_string(n);
  }
  auto sup = result("5.1", "animal counts vs subset oracle, d=2 N<=6", aok,
                    aok ? "all equal" : worst);
  sup.supplementary = true;
  out.push_back(sup);

  if (o.extended) {
    auto t15 = summarize(make_spec(PolymerClass::tree, 2, 15, Boundary::penetrable,
                                   Convention::translation_classes),
                         store(o).opts());
    auto t11 = summarize(make_spec(PolymerClass::tree, 3, 11, Boundary::penetrable,
                                   Convention::translation_classes),
                         store(o).opts());
    out.push_back(result("5x", "extended t_15(d=2), t_11(d=3)",
                         t15.total == 338158676 && t11.total == 248160162,
                         t15.total.str() + ", " + t11.total.str()));
  }
  return out;
}

Results criterion6(const ReproOptions&) {
  const Real b2 = growth_lower_bound_madras(2, 15, BigCount(338158676));
  const Real b3 = growth_lower_bound_madras(3, 11, BigCount(248160162));
  // truncated to four decimals, compared as integers
  auto digits = [](Real x) { return static_cast<long>(std::floor(x * 10000.0L)); };
  const bool ok = digits(b2) == 43442 && digits(b3) == 77248;
  return {result("6", "growth lower bounds from t_15, t_11", ok,
                 "d=2 " + format_real(b2) + ", d=3 " + format_real(b3))};
}

std::vector<EnsembleSpec> default_thermo_specs() {
  struct Range {
    PolymerClass cls;
    int d, lo, hi, step;
  };
  const Range ranges[] = {
      {PolymerClass::tree, 2, 1, 9, 1},    {PolymerClass::tree, 3, 1, 6, 1},
      {PolymerClass::animal, 2, 1, 7, 1},  {PolymerClass::animal, 3, 1, 5, 1},
      {PolymerClass::walk, 2, 1, 10, 1},   {PolymerClass::walk, 3, 1, 7, 1},
      {PolymerClass::polygon, 2, 4, 14, 2}, {PolymerClass::polygon, 3, 4, 10, 2},
      {PolymerClass::comb, 2, 1, 9, 1},    {PolymerClass::comb, 3, 1, 7, 1},
  };
  std::vector<EnsembleSpec> out;
  for (const auto& r : ranges)
    for (int n = r.lo; n <= r.hi; n += r.step) {
      out.push_back(make_spec(r.cls, r.d, n, Boundary::penetrable, Convention::translation_classes));
      for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
        out.push_back(make_spec(r.cls, r.d, n, b, Convention::contains_origin));
        if (r.cls == PolymerClass::walk) out.push_back(make_spec(r.cls, r.d, n, b, Convention::from_origin));
      }
    }
  return out;
}

Results criterion7(const ReproOptions& o) {
  const auto grid = BetaGrid::range(-2, 4, 0.25);
  int ensembles = 0;
  std::vector<std::string> bad;
  Real worst_convex = 0, worst_fd = 0, worst_jensen = 0;
  for (const auto& s : default_thermo_specs()) {
    const auto& t = store(o).get(s);
    if (t.total() == 0) continue;
    ++ensembles;
    const auto h = t.marginal();
    const bool z0 = cardinality(h) == t.total() &&
                    partition_function(t, 0) == static_cast<Real>(t.total());
    const auto cv = check_convexity(t, grid);
    const auto fd = check_finite_difference(t, grid);
    const auto jn = check_jensen(t, grid);
    worst_convex = std::min(worst_convex, cv.worst);
    worst_fd = std::min(worst_fd, fd.worst);
    worst_jensen = std::min(worst_jensen, jn.worst);
    if (!(z0 && cv.ok && fd.ok && jn.ok)) bad.push_back(s.str());
  }
  std::ostringstream os;
  os << ensembles << " ensembles; worst margins: convexity " << static_cast<double>(worst_convex)
     << ", finite difference " << static_cast<double>(worst_fd) << ", Jensen "
     << static_cast<double>(worst_jensen);
  if (!bad.empty()) os << "; failing: " << join(bad, " | ");
  return {result("7", "thermodynamic identities on beta in [-2,4]", bad.empty(), os.str())};
}

Results criterion8(const ReproOptions& o) {
  const auto grid = BetaGrid::range(-2, 0, 0.25);
  Real worst = std::numeric_limits<Real>::infinity();
  std::string where;
  for (auto [d, top] : {std::pair{2, 8}, std::pair{3, 6}})
    for (int n = 1; n <= top; ++n) {
      const auto& t = store(o).get(make_spec(PolymerClass::animal, d, n));
      for (double beta : grid.values) {
        auto r = relative_quenched(t, beta);
        if (!r.margin) return {result("8", "negative-beta quenched animal bound", false, "bound missing")};
        if (*r.margin < worst) {
          worst = *r.margin;
          where = "d=" + std::to_string(d) + " N=" + std::to_string(n) + " beta=" + format_real(beta);
        }
      }
    }
  return {result("8", "negative-beta quenched animal bound", worst >= -tolerance::animal_bound,
                 "animals d=2 N<=8, d=3 N<=6; min margin " + format_real(worst) + " at " + where)};
}

Results criterion9(const ReproOptions&) {
  std::vector<std::string> notes;
  const auto phi = build_phi30();
  std::array<int, 3> lo{99, 99, 99}, hi{-99, -99, -99};
  for (const auto& p : phi.sites())
    for (int i = 0; i < 3; ++i) lo[i] = std::min(lo[i], p[i]), hi[i] = std::max(hi[i], p[i]);
  const bool box = lo == std::array<int, 3>{0, -2, 0} && hi == std::array<int, 3>{3, 1, 4};
  const auto inv = knot_invariant(phi);
  bool ok = validate(phi) && phi.num_edges() == 30 && box && inv.determinant == 3;
  notes.push_back("phi: 30 edges, box " + std::string(box ? "ok" : "wrong") + ", det " +
                  inv.determinant.str());
  int bad_t = 0;
  for (int t = 1; t <= 50; ++t) {
    const auto c = build_phi_chain(t);
    if (!validate(c) || static_cast<int>(c.num_edges()) != 28 * t || visits(c) != 4 * t) ++bad_t;
  }
  ok = ok && bad_t == 0;
  notes.push_back("chains t<=50: " + std::to_string(bad_t) + " bad");
  std::vector<std::string> dets;
  BigInt want = 1;
  for (int t = 1; t <= 5; ++t) {
    want *= 3;
    const auto det = knot_invariant(build_phi_chain(t)).determinant;
    ok = ok && det == want;
    dets.push_back(det.str());
  }
  notes.push_back("det t=1..5: " + join(dets, " "));
  return {result("9", "trefoil polygon and chains", ok, join(notes, "; "))};
}

Results criterion10(const ReproOptions& o) {
  Results out;
  // (a) comb_plus_map on impenetrable contains-origin combs
  {
    std::uint64_t inputs = 0, bad_image = 0, unsound = 0, normal_inputs = 0, normal_collide = 0;
    std::map<int, std::uint64_t> fiber_inputs;  // fiber size -> inputs
    std::string example;
    bool distinct_ok = true;
    for (int n = 1; n <= 10; ++n) {
      const auto spec = make_spec(PolymerClass::comb, 2, n, Boundary::impenetrable);
      // pass 1: image checks and a hash per input, in enumeration order
      std::vector<std::uint64_t> order;
      enumerate(spec, [&](const Configuration& c) {
        for (int m = 0; m < c.num_members(); ++m) {
          const auto y = comb_plus_map(c.member(m));
          if (!validate(y) || static_cast<int>(y.num_edges()) != n + 2 || visits(y) > 2) ++bad_image;
          order.push_back(fnv1a64(to_text(y)));
        }
      }, store(o).opts());
      inputs += order.size();
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      // pass 2: exact preimages wherever a hash repeats (everywhere for small n)
      const bool exhaustive = n <= 8;
      std::map<int, std::uint64_t> local;
      std::size_t index = 0;
      enumerate(spec, [&](const Configuration& c) {
        for (int m = 0; m < c.num_members(); ++m) {
          const auto h = order[index++];
          const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), h);
          const auto repeats = static_cast<int>(hi - lo);
          const auto x = c.member(m);
          const bool normal = lex_min_site(x).is_origin();
          normal_inputs += normal;
          if (repeats == 1 && !exhaustive) {
            ++local[1];
            continue;
          }
          const auto y = comb_plus_map(x);
          const auto pre = comb_plus_preimages(y);
          if (std::find(pre.begin(), pre.end(), x) == pre.end()) ++unsound;
          const int fiber = static_cast<int>(pre.size());
          ++local[fiber];
          if (fiber != repeats) distinct_ok = false;
          if (fiber > 1 && example.empty())
            example = to_text(pre[0]) + " and " + to_text(pre[1]) + " -> " + to_text(y);
          if (normal) {
            int k = 0;
            for (const auto& q : pre) k += lex_min_site(q).is_origin();
            if (k != 1) ++normal_collide;
          }
        }
      }, store(o).opts());
      for (auto [f, k] : local) fiber_inputs[f] += k;
    }
    int max_fiber = fiber_inputs.empty() ? 0 : fiber_inputs.rbegin()->first;
    const std::uint64_t colliding = inputs - fiber_inputs[1];
    std::ostringstream os;
    os << inputs << " inputs, N<=10; outputs valid with sigma<=2: " << (bad_image ? "no" : "yes")
       << "; inputs sharing an image: " << colliding;
    if (!example.empty()) os << " (e.g. " << example << ")";
    out.push_back(result("10a", "comb_plus_map injective on C_N^+ with sigma<=2",
                         bad_image == 0 && colliding == 0, os.str()));
    auto s1 = result("10a.1", "comb_plus_map injective on lex-normalised combs",
                     normal_collide == 0 && bad_image == 0,
                     std::to_string(normal_inputs) + " translation classes, " +
                         std::to_string(normal_collide) + " collisions");
    auto s2 = result("10a.2", "comb_plus_map fibres on C_N^+ have size <= 2",
                     max_fiber <= 2 && unsound == 0 && distinct_ok,
                     "max fibre " + std::to_string(max_fiber) + "; exact preimages contain the input (all N<=8, repeated images beyond): " +
                         (unsound ? "no" : "yes") + "; hash multiplicities match exact fibres: " +
                         (distinct_ok ? "yes" : "no"));
    s1.supplementary = s2.supplementary = true;
    out.push_back(s1);
    out.push_back(s2);
  }
  // (b) comb_decompose fibres over translation classes, N+M <= 11
  {
    bool ok = true;
    std::string worst;
    int worst_slack = 1 << 30;
    std::uint64_t decompositions = 0;
    constexpr std::size_t kHashBudget = 96u << 20;  // hashes held at once
    double previous = 1;  // c_{total-1}; the square-lattice comb ratio stays below 6
    for (int total = 2; total <= 11; ++total) {
      const auto spec = make_spec(PolymerClass::comb, 2, total, Boundary::penetrable,
                                  Convention::translation_classes);
      const double count = 6 * previous;
      const int per_pass = std::max(1, static_cast<int>(kHashBudget / count));
      for (int n0 = 1; n0 < total; n0 += per_pass) {
        const int n1 = std::min(total - 1, n0 + per_pass - 1);
        std::vector<std::vector<std::uint64_t>> hashes(n1 - n0 + 1);
        std::vector<LatticePoint> sites;
        enumerate(spec, [&](const Configuration& c) {
          const auto cs = analyze_comb(c.adjacency(), c.label_a(), c.label_b());
          sites.clear();
          for (int i = 0; i < c.num_sites(); ++i) sites.push_back(c.site(i));
          for (int n = n0; n <= n1; ++n) hashes[n - n0].push_back(decomposition_hash(sites, cs, n));
        }, store(o).opts());
        previous = static_cast<double>(hashes[0].size());
        for (int n = n0; n <= n1; ++n) {
          auto& h = hashes[n - n0];
          decompositions += h.size();
          std::sort(h.begin(), h.end());
          int fiber = 0;
          for (std::size_t i = 0; i < h.size();) {
            std::size_t j = i;
            while (j < h.size() && h[j] == h[i]) ++j;
            fiber = std::max(fiber, static_cast<int>(j - i));
            i = j;
          }
          const int m = total - n, slack = 2 * m + 2 - fiber;
          if (slack < 0) ok = false;
          if (slack < worst_slack)
            worst_slack = slack,
            worst = "N=" + std::to_string(n) + " M=" + std::to_string(m) + " fibre " + std::to_string(fiber);
          h.clear();
          h.shrink_to_fit();
        }
      }
    }
    out.push_back(result("10b", "comb_decompose fibres <= 2M+2, d=2, N+M<=11", ok,
                         std::to_string(decompositions) + " decompositions; tightest " + worst +
                             " (slack " + std::to_string(worst_slack) + ")"));
  }
  return out;
}

BigCount topology_bound(int n, int d) {
  BigCount b = BigCount(n) * 2 * d;
  for (int i = 0; i < n - 2; ++i) b *= 2 * d - 1;
  return b;
}

Results criterion11(const ReproOptions& o) {
  bool ok = true;
  std::vector<std::string> notes;
  for (auto [d, top] : {std::pair{2, 11}, std::pair{3, 8}}) {
    std::string tight;
    for (int n = 2; n <= top; ++n) {
      const auto [key, count] = max_topology_class(store(o).get(make_spec(PolymerClass::tree, d, n)));
      const auto bound = topology_bound(n, d);
      if (count > bound) ok = false, notes.push_back("violated at d=" + std::to_string(d) + " N=" + std::to_string(n));
      if (n == top) tight = "M_" + std::to_string(n) + "=" + count.str() + " <= " + bound.str();
    }
    notes.push_back("trees d=" + std::to_string(d) + " N<=" + std::to_string(top) + ", " + tight);
  }
  return {result("11", "M_N(T) <= N 2d (2d-1)^(N-2)", ok, join(notes, "; "))};
}

// Largest d=2 comb size checked for the per-class visit bound.
constexpr int kCombVisitBoundTop = 10;

Results criterion12(const ReproOptions& o) {
  bool ok = true;
  std::vector<std::string> notes;
  Real worst = std::numeric_limits<Real>::infinity();
  int classes = 0;
  for (int n = 1; n <= 9; ++n)
    for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
      const auto& t = store(o).get(make_spec(PolymerClass::comb, 3, n, b));
      for (const auto& c : t.classes) {
        ++classes;
        auto it = c.histogram.find(n + 1);
        if (it == c.histogram.end() || it->second < 1) ok = false;  // exact witness of sigma = N+1
        for (Real beta : {0.0L, 1.0L, 2.0L})
          worst = std::min(worst, log_partition_function(c.histogram, beta) - beta * (n + 1));
      }
    }
  ok = ok && worst >= -tolerance::expectation;
  notes.push_back("d=3 N<=9: " + std::to_string(classes) + " class tables, each with sigma=N+1; min log Z - beta(N+1) = " +
                  format_real(worst));
  int checked = 0;
  for (int n = 1; n <= kCombVisitBoundTop; ++n)
    for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
      const auto& t = store(o).get(make_spec(PolymerClass::comb, 2, n, b));
      for (const auto& c : t.classes) {
        ++checked;
        const int branches = CombSignature::parse(c.key.payload).b;
        if (2 * max_key(c.histogram) > 2 * (n + 1) - branches) {
          ok = false;
          notes.push_back("d=2 bound fails for " + c.key.payload);
        }
      }
    }
  notes.push_back("d=2 N<=" + std::to_string(kCombVisitBoundTop) + ": " + std::to_string(checked) +
                  " class tables with 2 max sigma <= 2(N+1) - b");
  return {result("12", "quenched comb surface bounds", ok, join(notes, "; "))};
}

}  // namespace

const std::set<std::string>& known_deviations() {
  static const std::set<std::string> s = {"10a"};
  return s;
}

std::vector<CriterionResult> run_criterion(int id, const ReproOptions& opts) {
  using Fn = Results (*)(const ReproOptions&);
  static const Fn table[] = {criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
                             criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  if (id < 1 || id > kCriterionCount) throw ValidationError("no criterion " + std::to_string(id));
  const auto t0 = Clock::now();
  auto out = table[id - 1](opts);
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  for (auto& r : out) r.seconds = dt;
  return out;
}

std::vector<CriterionResult> run_acceptance(const ReproOptions& opts, std::vector<int> ids) {
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  std::vector<CriterionResult> all;
  for (int id : ids) {
    for (auto& r : run_criterion(id, opts)) {
      if (opts.report) opts.report(r);
      all.push_back(std::move(r));
    }
  }
  return all;
}

int acceptance_status(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass && !known_deviations().count(r.id)) return 1;
  return 0;
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %-6s", r.pass ? "PASS" : "FAIL", r.id.c_str());
  std::ostringstream os;
  os << head << (r.supplementary ? "  + " : "") << r.title << " | " << r.detail;
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.2f s)", r.seconds);
  os << tail;
  if (!r.pass && known_deviations().count(r.id)) os << " [known deviation, see README]";
  return os.str();
}

}  // namespace polylat
