// polylat: command-line front end for the enumeration engine.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polylat/constructs.hpp"
#include "polylat/io.hpp"
#include "polylat/knot.hpp"
#include "polylat/repro.hpp"
#include "polylat/statmech.hpp"

using namespace polylat;

namespace {

enum Exit { kOk = 0, kValidation = 2, kBudget = 3, kInternal = 4 };

struct Common {
  std::string cls = "tree";
  int dim = 2;
  int size = 1;
  std::string boundary = "penetrable";
  std::string convention = "contains-origin";
  int threads = 1;
  int max_size = -1;
  std::uint64_t node_cap = 0;
  std::string format;
  std::string out;
  bool timing = false;
  bool no_cache = false;

  EnsembleSpec spec() const {
    EnsembleSpec s{parse_polymer_class(cls), dim, size, parse_boundary(boundary),
                   parse_convention(convention)};
    s.check();
    return s;
  }
  EnumerateOptions options() const {
    if (threads < 1) throw ValidationError("--threads must be positive");
    EnumerateOptions o;
    o.threads = threads;
    o.budget.max_size = max_size;
    o.budget.node_cap = node_cap;
    return o;
  }
};

void add_spec_flags(CLI::App* app, Common& c) {
  app->add_option("--class", c.cls, "animal|tree|walk|polygon|comb")->required();
  app->add_option("--dim", c.dim, "lattice dimension")->required();
  app->add_option("--size", c.size, "N: sites (animal/tree) or edges");
  app->add_option("--boundary", c.boundary, "penetrable|impenetrable");
  app->add_option("--convention", c.convention, "translation-classes|contains-origin|from-origin");
}

void add_run_flags(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "worker threads");
  app->add_option("--max-size", c.max_size, "largest N accepted without complaint");
  app->add_option("--node-cap", c.node_cap, "abort after this many search nodes");
  app->add_option("--format", c.format, "csv|json");
  app->add_option("--out", c.out, "write here instead of stdout");
  app->add_flag("--timing", c.timing, "include wall-clock time in results");
  app->add_flag("--no-cache", c.no_cache, "bypass the result cache");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    atomic_write(c.out, text);
  }
}

std::string format_or(const Common& c, const char* fallback) {
  std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json" && f != "text") throw ValidationError("unknown format " + f);
  return f;
}

EnsembleResult load_ensemble(const Common& c, const EnsembleSpec& spec) {
  std::optional<ResultCache> cache;
  if (!c.no_cache) cache.emplace(ResultCache::default_dir());
  bool hit = false;
  auto r = compute_ensemble(spec, c.options(), cache ? &*cache : nullptr, &hit);
  if (cache) std::cerr << "cache: " << (hit ? "hit" : "miss") << " " << ResultCache::key(spec) << "\n";
  return r;
}

const TopologyTable& require_table(const EnsembleResult& r) {
  if (!r.table) throw ValidationError("no topology table for " + r.summary.spec.str());
  return *r.table;
}

LatticePolymer read_polymer(const std::string& path) {
  std::string line;
  if (path.empty() || path == "-") {
    std::getline(std::cin, line);
  } else {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::getline(in, line);
  }
  return from_text(line);
}

json polymer_json(const LatticePolymer& p) {
  json sites = json::array(), edges = json::array();
  for (const auto& s : p.sites()) sites.push_back(s.coords());
  for (auto [a, b] : p.edges()) edges.push_back({a, b});
  json j = {{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "polymer"},
            {"class", to_string(p.polymer_class())}, {"d", p.dim()}, {"sites", sites},
            {"edges", edges}};
  j["labels"] = p.labels() ? json{p.labels()->first, p.labels()->second} : json(nullptr);
  j["visits"] = visits(p);
  j["text"] = to_text(p);
  return j;
}

std::string emit_polymer(const Common& c, const LatticePolymer& p) {
  return format_or(c, "text") == "json" ? polymer_json(p).dump(1) + "\n" : to_text(p) + "\n";
}

// enumerate ---------------------------------------------------------------------

int cmd_enumerate(const Common& c, const std::string& pattern) {
  const auto spec = c.spec();
  auto r = load_ensemble(c, spec);
  const auto fmt = format_or(c, "json");
  if (fmt == "json") {
    auto j = to_json(r, c.timing);
    if (!pattern.empty()) {
      auto stats = pattern_stats(spec, parse_pattern(pattern), c.options());
      json h = json::object();
      for (const auto& [k, v] : stats) h[std::to_string(k)] = v.str();
      j["pattern"] = {{"name", pattern}, {"histogram", h}};
    }
    emit(c, j.dump(1) + "\n");
  } else {
    std::ostringstream os;
    os << "class,d,N,boundary,convention,k,count\n";
    for (const auto& [k, v] : r.summary.histogram)
      os << to_string(spec.cls) << ',' << spec.dim << ',' << spec.size << ',' << to_string(spec.boundary)
         << ',' << to_string(spec.convention) << ',' << k << ',' << v << '\n';
    emit(c, os.str());
  }
  return kOk;
}

// thermo / quenched ---------------------------------------------------------------

json checks_json(const TopologyTable& t, const BetaGrid& g) {
  auto one = [](const CheckResult& r) {
    return json{{"ok", r.ok}, {"worst", static_cast<double>(r.worst)}};
  };
  return {{"convexity", one(check_convexity(t, g))},
          {"jensen", one(check_jensen(t, g))},
          {"finite_difference", one(check_finite_difference(t, g))},
          {"expectation_bounds", one(check_expectation_bounds(t, g))}};
}

// Second difference of log Z at each grid point (NaN at the ends).
std::vector<Real> second_differences(const ThermoResult& r) {
  std::vector<Real> out(r.records.size(), NAN);
  for (std::size_t i = 1; i + 1 < r.records.size(); ++i) {
    const auto &a = r.records[i - 1], &b = r.records[i], &c = r.records[i + 1];
    const Real h1 = b.beta - a.beta, h2 = c.beta - b.beta;
    out[i] = ((c.logZ - b.logZ) / h2 - (b.logZ - a.logZ) / h1) * 2 / (h1 + h2);
  }
  return out;
}

json comb_surface_flag(const TopologyTable& t, const BetaGrid& g) {
  // every nonempty comb class carries Z >= e^{beta (N+1)} for beta >= 0 (d >= 3)
  bool ok = true;
  for (const auto& c : t.classes)
    for (double beta : g.values)
      if (beta >= 0 && log_partition_function(c.histogram, beta) < beta * (t.spec.size + 1) - tolerance::expectation)
        ok = false;
  return ok;
}

int cmd_thermo(const Common& c, const std::string& grid_text, bool quenched, bool checks,
               const std::string& sizes, double theta) {
  const auto grid = BetaGrid::parse(grid_text);
  const auto fmt = format_or(c, "csv");
  if (!sizes.empty()) {
    // pseudo-critical sequence over a size range
    int lo = 0, hi = 0;
    if (std::sscanf(sizes.c_str(), "%d:%d", &lo, &hi) != 2 || lo > hi)
      throw ValidationError("--sizes wants lo:hi");
    std::vector<TopologyTable> curves;
    for (int n = lo; n <= hi; ++n) {
      Common cc = c;
      cc.size = n;
      auto r = load_ensemble(cc, cc.spec());
      if (r.summary.total == 0) continue;
      curves.push_back(require_table(r));
    }
    auto pc = pseudo_critical(curves, grid, theta, quenched);
    if (fmt == "json") {
      json rows = json::array();
      for (const auto& p : pc) rows.push_back({{"N", p.n}, {"beta", p.beta ? json(*p.beta) : json(nullptr)}});
      auto spec = c.spec();
      emit(c, json{{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "pseudo_critical"},
                   {"spec", to_json(spec)}, {"theta", theta}, {"quenched", quenched}, {"crossings", rows}}
                      .dump(1) + "\n");
    } else {
      std::ostringstream os;
      os << "N,beta\n";
      for (const auto& p : pc) os << p.n << ',' << (p.beta ? format_real(*p.beta) : "none") << '\n';
      emit(c, os.str());
    }
    return kOk;
  }

  const auto r = load_ensemble(c, c.spec());
  const auto& t = require_table(r);
  const auto th = thermo(t, grid);
  if (fmt == "json") {
    auto j = to_json(th);
    if (checks) j["checks"] = checks_json(t, grid);
    if (quenched) {
      json classes = json::array();
      for (const auto& cl : t.classes) {
        json row = {{"key", cl.key.str()}, {"count", cl.count.str()}};
        json fq = json::array();
        for (double beta : grid.values)
          fq.push_back(static_cast<double>(log_partition_function(cl.histogram, beta) / t.spec.size));
        row["F"] = fq;
        classes.push_back(row);
      }
      j["topology"] = classes;
      json rel = json::array();
      for (double beta : grid.values) {
        auto q = relative_quenched(t, beta);
        json e = {{"beta", beta}, {"dFQ", static_cast<double>(q.dFQ)}};
        if (q.bound) e["bound"] = static_cast<double>(*q.bound), e["margin"] = static_cast<double>(*q.margin);
        rel.push_back(e);
      }
      j["relative_quenched"] = rel;
      if (t.spec.cls == PolymerClass::comb && t.spec.dim >= 3 && t.spec.convention != Convention::translation_classes)
        j["comb_surface_bound_ok"] = comb_surface_flag(t, grid);
    }
    emit(c, j.dump(1) + "\n");
  } else {
    std::ostringstream os;
    os << kThermoCsvHeader << (checks ? ",jensen_margin,convexity" : "") << '\n';
    const auto d2 = second_differences(th);
    for (std::size_t i = 0; i < th.records.size(); ++i) {
      os << thermo_csv_row(th, th.records[i]);
      if (checks) os << ',' << format_real(th.records[i].dF - th.records[i].dFQ) << ',' << format_real(d2[i]);
      os << '\n';
    }
    emit(c, os.str());
  }
  return kOk;
}

// bounds --------------------------------------------------------------------------

int cmd_bounds(const Common& c, bool madras, int n, const std::string& count, bool submult,
               int max_n, double g_const) {
  json j = {{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "bound"}};
  if (madras == submult) throw ValidationError("choose one of --madras or --submult");
  if (madras) {
    if (count.empty() || n < 1) throw ValidationError("--madras needs --n and --count");
    const BigCount t(count);
    if (t <= 0) throw ValidationError("--count must be positive");
    const Real v = growth_lower_bound_madras(c.dim, n, t);
    j["bound"] = {{"type", "lower-madras"}, {"d", c.dim}, {"N", n}, {"count", t.str()},
                  {"value", format_real(v)}};
  } else {
    if (max_n < 1) throw ValidationError("--submult needs --max-n");
    if (!(g_const > 0)) throw ValidationError("--g must be positive");
    std::vector<BigCount> a;
    json seq = json::array();
    for (int k = 1; k <= max_n; ++k) {
      Common cc = c;
      cc.size = k;
      cc.convention = "translation-classes";
      auto r = load_ensemble(cc, cc.spec());
      a.push_back(r.summary.total);
      seq.push_back(r.summary.total.str());
    }
    const Real v = submultiplicative_upper_bound(a, [g_const](int) { return static_cast<Real>(g_const); });
    j["bound"] = {{"type", "upper-submultiplicative"}, {"class", c.cls}, {"d", c.dim}, {"g", g_const},
                  {"counts", seq}, {"value", format_real(v)}};
  }
  emit(c, j.dump(1) + "\n");
  return kOk;
}

// knot / decompose ------------------------------------------------------------------

int cmd_knot(const Common& c, const std::string& file) {
  const auto p = read_polymer(file);
  if (p.polymer_class() != PolymerClass::polygon || !validate(p))
    throw ValidationError("knot needs a valid polygon");
  if (p.dim() != 3) throw ValidationError("knot needs a polygon in d=3");
  auto j = to_json(knot_invariant(p));
  j["crossings"] = knot_diagram(p).crossings.size();
  emit(c, j.dump(1) + "\n");
  return kOk;
}

int cmd_decompose(const Common& c, const std::string& file, int split) {
  const auto p = read_polymer(file);
  const auto d = comb_decompose(p, split);
  const auto norm = d.normalized();
  const auto anchors = d.anchors();
  const char* names[3] = {"first", "second", "walk"};
  json pieces = json::array();
  for (int k = 0; k < 3; ++k)
    pieces.push_back({{"role", names[k]}, {"text", to_text(norm[k])}, {"anchor", anchors[k].coords()}});
  json j = {{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "decomposition"},
            {"case", to_string(d.which)}, {"N", split}, {"M", static_cast<int>(p.num_edges()) - split},
            {"pieces", pieces}};
  if (format_or(c, "json") == "text") {
    std::string out;
    for (const auto& piece : norm) out += to_text(piece) + "\n";
    emit(c, out);
  } else {
    emit(c, j.dump(1) + "\n");
  }
  return kOk;
}

// error reporting -------------------------------------------------------------------

int fail(Exit code, const char* kind, const std::string& message, std::optional<double> estimate = {}) {
  json e = {{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "error"},
            {"error", kind}, {"message", message}};
  if (estimate) e["estimate"] = *estimate;
  std::cerr << e.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration of lattice polymers at an adsorbing surface"};
  app.require_subcommand(1);
  Common c;

  auto* en = app.add_subcommand("enumerate", "count an ensemble with its visit histogram");
  std::string pattern;
  add_spec_flags(en, c);
  add_run_flags(en, c);
  en->add_option("--pattern", pattern, "also histogram star-H|saw-PQ|side-chain-count occurrences");

  std::string grid = "-2:4:0.25", sizes;
  bool checks = false;
  double theta = kDefaultTheta;
  auto* th = app.add_subcommand("thermo", "annealed and quenched free energies on a beta grid");
  auto* qu = app.add_subcommand("quenched", "thermo plus the per-topology table");
  for (auto* sub : {th, qu}) {
    add_spec_flags(sub, c);
    add_run_flags(sub, c);
    sub->add_option("--beta", grid, "lo:hi:step or a comma list");
    sub->add_flag("--checks", checks, "add property-check columns");
    sub->add_option("--sizes", sizes, "lo:hi, report pseudo-critical points instead");
    sub->add_option("--theta", theta, "pseudo-critical threshold");
  }

  bool madras = false, submult = false;
  int bound_n = 0, max_n = 0;
  std::string count;
  double g_const = 1;
  auto* bo = app.add_subcommand("bounds", "rigorous growth-constant bounds");
  bo->add_flag("--madras", madras, "lower bound from one tree count");
  bo->add_flag("--submult", submult, "upper bound inf (g a_n)^(1/n) from enumerated counts");
  bo->add_option("--dim", c.dim);
  bo->add_option("--n", bound_n);
  bo->add_option("--count", count);
  bo->add_option("--class", c.cls);
  bo->add_option("--max-n", max_n);
  bo->add_option("--g", g_const, "constant overhead g");
  add_run_flags(bo, c);

  auto* co = app.add_subcommand("construct", "build an explicit polymer");
  co->require_subcommand(1);
  add_run_flags(co, c);
  auto* c_phi = co->add_subcommand("phi30", "30-edge trefoil polygon");
  int chain_t = 1;
  auto* c_chain = co->add_subcommand("phi_chain", "t trefoils in series");
  c_chain->add_option("--t", chain_t)->required();
  std::string signature;
  int comb_dim = 3;
  auto* c_comb = co->add_subcommand("straight_comb", "comb witness for a signature");
  c_comb->add_option("--signature", signature, "b;n0,...;s1,...")->required();
  c_comb->add_option("--dim", comb_dim);
  std::string in_file;
  auto* c_map = co->add_subcommand("comb_plus_map", "apply the visit-reducing comb map");
  c_map->add_option("--in", in_file, "polymer file, - for stdin");
  for (auto* sub : {c_phi, c_chain, c_comb, c_map}) sub->fallthrough();  // run flags may follow

  std::string poly_file;
  auto* kn = app.add_subcommand("knot", "determinant and Alexander polynomial of a polygon");
  kn->add_option("file", poly_file, "polymer file (default stdin)");
  add_run_flags(kn, c);

  int split = 1;
  auto* de = app.add_subcommand("decompose", "split a comb into two combs and a walk");
  de->add_option("file", poly_file, "polymer file (default stdin)");
  de->add_option("--split", split, "edges in the first comb")->required();
  add_run_flags(de, c);

  std::vector<int> criteria;
  bool extended = false;
  auto* re = app.add_subcommand("repro", "run the acceptance table");
  re->add_option("--criteria", criteria, "subset of 1..12");
  re->add_flag("--extended", extended, "include the multi-hour tree counts");
  re->add_option("--threads", c.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kValidation, "validation", e.what());
  }

  try {
    if (*en) return cmd_enumerate(c, pattern);
    if (*th) return cmd_thermo(c, grid, false, checks, sizes, theta);
    if (*qu) return cmd_thermo(c, grid, true, checks, sizes, theta);
    if (*bo) return cmd_bounds(c, madras, bound_n, count, submult, max_n, g_const);
    if (*co) {
      LatticePolymer p;
      if (*c_phi) p = build_phi30();
      else if (*c_chain) p = build_phi_chain(chain_t);
      else if (*c_comb) p = straight_comb_witness(CombSignature::parse(signature), comb_dim);
      else p = comb_plus_map(read_polymer(in_file));
      emit(c, emit_polymer(c, p));
      return kOk;
    }
    if (*kn) return cmd_knot(c, poly_file);
    if (*de) return cmd_decompose(c, poly_file, split);
    if (*re) {
      ReproOptions o;
      o.threads = std::max(1, c.threads);
      o.extended = extended;
      o.report = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
      return acceptance_status(run_acceptance(o, criteria));
    }
  } catch (const ValidationError& e) {
    return fail(kValidation, "validation", e.what());
  } catch (const BudgetExceeded& e) {
    return fail(kBudget, "budget", e.what(), e.estimate);
  } catch (const std::exception& e) {
    return fail(kInternal, "internal", e.what());
  }
  return kInternal;
}
