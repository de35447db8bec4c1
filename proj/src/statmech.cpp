#include "polylat/statmech.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

namespace polylat {

BetaGrid BetaGrid::range(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw ValidationError("beta range needs lo <= hi and step > 0");
  BetaGrid g;
  const long n = std::lround((hi - lo) / step);
  for (long i = 0; i <= n; ++i) g.values.push_back(lo + static_cast<double>(i) * step);
  return g;
}

BetaGrid BetaGrid::parse(std::string_view text) {
  std::string s(text);
  try {
    if (std::count(s.begin(), s.end(), ':') == 2) {
      auto a = s.find(':'), b = s.find(':', a + 1);
      return range(std::stod(s.substr(0, a)), std::stod(s.substr(a + 1, b - a - 1)),
                   std::stod(s.substr(b + 1)));
    }
    BetaGrid g;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) g.values.push_back(std::stod(tok));
    g.check();
    return g;
  } catch (const std::logic_error&) {
    throw ValidationError("bad beta grid '" + s + "'");
  }
}

void BetaGrid::check() const {
  if (values.empty()) throw ValidationError("beta grid is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ValidationError("beta grid has a non-finite value");
    if (i && !(values[i] > values[i - 1])) throw ValidationError("beta grid must be strictly ascending");
  }
}

// Sums over histograms ------------------------------------------------------

BigCount cardinality(const VisitHistogram& h) {
  BigCount t = 0;
  for (const auto& [k, v] : h) t += v;
  return t;
}

namespace {

// Neumaier-compensated accumulator.
struct Sum {
  Real s = 0, c = 0;
  void add(Real x) {
    Real t = s + x;
    c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  Real value() const { return s + c; }
};

Real to_real(const BigCount& c) { return c.convert_to<Real>(); }

// Returns (shift m, sum of c_k e^{beta k - m}, sum of k c_k e^{beta k - m}).
struct Moments {
  Real shift = 0, z = 0, kz = 0;
};

Moments moments(const VisitHistogram& h, Real beta) {
  if (h.empty()) throw ValidationError("empty ensemble");
  Real m = -std::numeric_limits<Real>::infinity();
  for (const auto& [k, v] : h) m = std::max(m, std::log(to_real(v)) + beta * k);
  Sum z, kz;
  for (const auto& [k, v] : h) {
    Real w = std::exp(std::log(to_real(v)) + beta * k - m);
    z.add(w);
    kz.add(w * k);
  }
  return {m, z.value(), kz.value()};
}

int size_of(const TopologyTable& t) {
  if (t.spec.size <= 0) throw ValidationError("free energy needs N >= 1");
  return t.spec.size;
}

}  // namespace

Real log_partition_function(const VisitHistogram& h, Real beta) {
  auto m = moments(h, beta);
  return m.shift + std::log(m.z);
}

Real partition_function(const VisitHistogram& h, Real beta) {
  if (beta == 0) return to_real(cardinality(h));
  Real lz = log_partition_function(h, beta);
  if (lz >= static_cast<Real>(LDBL_MAX_EXP) * std::log(2.0L))
    throw ValidationError("partition function overflows the extended format");
  return std::exp(lz);
}

Real expected_visits(const VisitHistogram& h, Real beta) {
  auto m = moments(h, beta);
  return m.kz / m.z;
}

Real free_energy(const VisitHistogram& h, int n, Real beta) {
  if (n <= 0) throw ValidationError("free energy needs N >= 1");
  return log_partition_function(h, beta) / n;
}

Real partition_function(const TopologyTable& t, Real beta) {
  return partition_function(t.marginal(), beta);
}
Real free_energy(const TopologyTable& t, Real beta) {
  return free_energy(t.marginal(), size_of(t), beta);
}
Real expected_visits(const TopologyTable& t, Real beta) { return expected_visits(t.marginal(), beta); }

Real quenched_free_energy(const TopologyTable& t, Real beta) {
  const Real total = to_real(t.total());
  const int n = size_of(t);
  Sum f;
  for (const auto& c : t.classes) {
    if (c.count == 0) throw ValidationError("quenched average over an empty class");
    f.add(to_real(c.count) / total * log_partition_function(c.histogram, beta) / n);
  }
  return f.value();
}

Real quenched_expected_visits(const TopologyTable& t, Real beta) {
  const Real total = to_real(t.total());
  Sum e;
  for (const auto& c : t.classes) e.add(to_real(c.count) / total * expected_visits(c.histogram, beta));
  return e.value();
}

Real animal_quenched_bound(int d, int n, Real beta) {
  return -std::log(static_cast<Real>(d) * n) / n + beta * std::pow(static_cast<Real>(n), -1.0L / d);
}

RelativeQuenched relative_quenched(const TopologyTable& t, Real beta) {
  RelativeQuenched r;
  r.dFQ = quenched_free_energy(t, beta) - quenched_free_energy(t, 0);
  if (beta <= 0 && t.spec.cls == PolymerClass::animal && t.spec.boundary == Boundary::penetrable &&
      t.spec.convention == Convention::contains_origin) {
    r.bound = animal_quenched_bound(t.spec.dim, t.spec.size, beta);
    r.margin = r.dFQ - *r.bound;
  }
  return r;
}

ThermoResult thermo(const TopologyTable& t, const BetaGrid& grid) {
  grid.check();
  const auto h = t.marginal();
  const int n = size_of(t);
  const Real f0 = free_energy(h, n, 0), fq0 = quenched_free_energy(t, 0);
  ThermoResult out{t.spec, {}};
  for (double b : grid.values) {
    ThermoRecord r;
    r.beta = b;
    r.logZ = log_partition_function(h, b);
    r.Z = partition_function(h, b);
    r.F = r.logZ / n;
    r.FQ = quenched_free_energy(t, b);
    r.E_sigma = expected_visits(h, b);
    r.EQ_sigma = quenched_expected_visits(t, b);
    r.dF = r.F - f0;
    r.dFQ = r.FQ - fq0;
    out.records.push_back(r);
  }
  return out;
}

// Checks ----------------------------------------------------------------------

namespace {
void note(CheckResult& c, Real margin, Real tol) {
  c.worst = std::min(c.worst, margin);
  if (margin < -tol) c.ok = false;
}
}  // namespace

CheckResult check_convexity(const TopologyTable& t, const BetaGrid& grid) {
  CheckResult c;
  const auto h = t.marginal();
  const auto& b = grid.values;
  for (std::size_t i = 1; i + 1 < b.size(); ++i) {
    // second divided difference scaled to the local spacing
    const Real h1 = b[i] - b[i - 1], h2 = b[i + 1] - b[i];
    const Real l0 = log_partition_function(h, b[i - 1]), l1 = log_partition_function(h, b[i]),
               l2 = log_partition_function(h, b[i + 1]);
    const Real dd = ((l2 - l1) / h2 - (l1 - l0) / h1) * std::min(h1, h2);
    note(c, dd, tolerance::convexity);
  }
  return c;
}

CheckResult check_jensen(const TopologyTable& t, const BetaGrid& grid) {
  CheckResult c;
  const auto h = t.marginal();
  const int n = size_of(t);
  const Real f0 = free_energy(h, n, 0), fq0 = quenched_free_energy(t, 0);
  for (double b : grid.values)
    note(c, (free_energy(h, n, b) - f0) - (quenched_free_energy(t, b) - fq0), tolerance::jensen);
  return c;
}

CheckResult check_finite_difference(const TopologyTable& t, const BetaGrid& grid) {
  // five-point stencil for d log Z / d beta = N dF/dbeta
  CheckResult c;
  const auto h = t.marginal();
  const Real e = tolerance::fd_step;
  for (double b : grid.values) {
    auto l = [&](Real x) { return log_partition_function(h, b + x); };
    const Real deriv = (8 * (l(e) - l(-e)) - (l(2 * e) - l(-2 * e))) / (12 * e);
    note(c, -std::fabs(deriv - expected_visits(h, b)), tolerance::finite_difference);
  }
  return c;
}

CheckResult check_expectation_bounds(const TopologyTable& t, const BetaGrid& grid) {
  CheckResult c;
  const auto h = t.marginal();
  const Real max_sites = h.empty() ? 0 : h.rbegin()->first;
  const Real lo = h.empty() ? 0 : h.begin()->first;
  Real prev = -1;
  for (double b : grid.values) {
    const Real e = expected_visits(h, b);
    note(c, e - lo, tolerance::expectation);
    note(c, max_sites - e, tolerance::expectation);
    if (prev >= 0) note(c, e - prev, tolerance::expectation);
    prev = e;
  }
  return c;
}

// Pseudo-critical estimator -------------------------------------------------

std::vector<PseudoCritical> pseudo_critical(const std::vector<TopologyTable>& curves,
                                            const BetaGrid& grid, double theta, bool quenched) {
  if (curves.size() < 2) throw ValidationError("pseudo_critical needs at least two sizes");
  grid.check();
  std::vector<PseudoCritical> out;
  for (const auto& t : curves) {
    auto f = [&](Real b) {
      return quenched ? quenched_free_energy(t, b) - quenched_free_energy(t, 0)
                      : free_energy(t, b) - free_energy(t, 0);
    };
    PseudoCritical pc{t.spec.size, std::nullopt};
    const auto& g = grid.values;
    for (std::size_t i = 0; i < g.size() && std::isfinite(theta); ++i) {
      if (f(g[i]) <= theta) continue;
      if (i == 0) {
        pc.beta = g[0];
        break;
      }
      Real lo = g[i - 1], hi = g[i];
      for (int it = 0; it < 80; ++it) {
        Real mid = (lo + hi) / 2;
        (f(mid) > theta ? hi : lo) = mid;
      }
      pc.beta = static_cast<double>(hi);
      break;
    }
    out.push_back(pc);
  }
  return out;
}

// Growth-constant bounds ----------------------------------------------------

Real growth_lower_bound_madras(int d, int n, const BigCount& t_n) {
  if (n <= 0 || t_n <= 0 || d < 1) throw ValidationError("madras bound needs d, N, t_N positive");
  const Real log_v = std::log(static_cast<Real>(d)) +
                     static_cast<Real>(d - 1) / d * std::log(2.0L * n) + std::log(to_real(t_n));
  return std::exp(log_v / n);
}

Real submultiplicative_upper_bound(const std::vector<BigCount>& a, const std::function<Real(int)>& g) {
  if (a.empty()) throw ValidationError("empty sequence");
  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    const Real gn = g ? g(n) : 1.0L;
    if (a[i] <= 0 || !(gn > 0)) throw ValidationError("submultiplicative bound needs positive terms");
    best = std::min(best, std::exp((std::log(gn) + std::log(to_real(a[i]))) / n));
  }
  return best;
}

// Pattern statistics ----------------------------------------------------------

Pattern parse_pattern(std::string_view s) {
  if (s == "star-H") return Pattern::star_h;
  if (s == "saw-PQ") return Pattern::saw_pq;
  if (s == "side-chain-count") return Pattern::side_chain_count;
  throw ValidationError("unknown pattern '" + std::string(s) + "'");
}

namespace {

void require(bool ok) {
  if (!ok) throw ValidationError("pattern is incompatible with the polymer class");
}

int saw_pq(const std::vector<LatticePoint>& w) {
  const int n = static_cast<int>(w.size()) - 1;
  int count = 0;
  for (int j = 2; j <= n - 2; ++j) {
    bool straight = true;
    for (int k = -2; k <= 2 && straight; ++k) {
      auto diff = w[j + k] - w[j];
      straight = diff[0] == k && diff.l1_norm() == std::abs(k);
    }
    if (!straight) continue;
    int inside = 0;
    for (const auto& s : w) {
      auto diff = s - w[j];
      bool in_box = true;
      for (int a = 0; a < diff.dim(); ++a) in_box = in_box && std::abs(diff[a]) <= 2;
      inside += in_box;
    }
    if (inside == 5) ++count;
  }
  return count;
}

int max_degree_count(const AdjacencyList& adj, int full) {
  int c = 0;
  for (const auto& nb : adj) c += static_cast<int>(nb.size()) == full;
  return c;
}

}  // namespace

int pattern_occurrences(const Configuration& c, Pattern p) {
  switch (p) {
    case Pattern::star_h:
      require(c.polymer_class() == PolymerClass::tree || c.polymer_class() == PolymerClass::animal);
      return max_degree_count(c.adjacency(), 2 * c.dim());
    case Pattern::saw_pq: {
      require(c.polymer_class() == PolymerClass::walk);
      std::vector<LatticePoint> w;  // walk sites are stored in walk order
      for (int i = 0; i < c.num_sites(); ++i) w.push_back(c.site(i));
      return saw_pq(w);
    }
    case Pattern::side_chain_count:
      require(c.polymer_class() == PolymerClass::comb);
      return comb_signature(c.adjacency(), c.label_a(), c.label_b()).b;
  }
  return 0;
}

int pattern_occurrences(const LatticePolymer& p, Pattern pat) {
  switch (pat) {
    case Pattern::star_h:
      require(p.polymer_class() == PolymerClass::tree || p.polymer_class() == PolymerClass::animal);
      return max_degree_count(p.adjacency(), 2 * p.dim());
    case Pattern::saw_pq: {
      require(p.polymer_class() == PolymerClass::walk);
      auto cs = analyze_comb(p);
      std::vector<LatticePoint> w;
      for (int i : cs.backbone) w.push_back(p.sites()[i]);
      return saw_pq(w);
    }
    case Pattern::side_chain_count:
      require(p.polymer_class() == PolymerClass::comb);
      return comb_signature(p).b;
  }
  return 0;
}

std::map<int, BigCount> pattern_stats(const EnsembleSpec& spec, Pattern p, const EnumerateOptions& opts) {
  using Acc = std::map<int, std::uint64_t>;
  auto acc = enumerate_reduce<Acc>(
      spec, opts,
      [p](Acc& a, const Configuration& c) { a[pattern_occurrences(c, p)] += c.num_members(); },
      [](Acc& a, const Acc& b) {
        for (const auto& [k, v] : b) a[k] += v;
      });
  std::map<int, BigCount> out;
  for (const auto& [k, v] : acc) out[k] = v;
  return out;
}

}  // namespace polylat
