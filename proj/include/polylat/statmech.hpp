// Finite-N thermodynamics over visit histograms and topology tables.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "polylat/enumerate.hpp"

namespace polylat {

using Real = long double;

namespace tolerance {
inline constexpr Real convexity = 1e-10L;
inline constexpr Real expectation = 1e-12L;
inline constexpr Real finite_difference = 1e-8L;
inline constexpr Real jensen = 1e-12L;
inline constexpr Real animal_bound = 1e-12L;
inline constexpr Real fd_step = 1e-4L;
}  // namespace tolerance

inline constexpr double kDefaultTheta = 0.02;

struct BetaGrid {
  std::vector<double> values;
  static BetaGrid range(double lo, double hi, double step);
  static BetaGrid parse(std::string_view text);  // "lo:hi:step" or "a,b,c"
  void check() const;
};

BigCount cardinality(const VisitHistogram& h);
Real log_partition_function(const VisitHistogram& h, Real beta);
Real partition_function(const VisitHistogram& h, Real beta);  // throws on overflow
Real expected_visits(const VisitHistogram& h, Real beta);
Real free_energy(const VisitHistogram& h, int n, Real beta);

Real partition_function(const TopologyTable& t, Real beta);
Real free_energy(const TopologyTable& t, Real beta);
Real expected_visits(const TopologyTable& t, Real beta);
Real quenched_free_energy(const TopologyTable& t, Real beta);
Real quenched_expected_visits(const TopologyTable& t, Real beta);

struct RelativeQuenched {
  Real dFQ = 0;
  std::optional<Real> bound;   // finite-N animal bound, penetrable animals at beta <= 0
  std::optional<Real> margin;  // dFQ - bound
};
RelativeQuenched relative_quenched(const TopologyTable& t, Real beta);
Real animal_quenched_bound(int d, int n, Real beta);

struct ThermoRecord {
  Real beta = 0, Z = 0, logZ = 0, F = 0, FQ = 0, E_sigma = 0, EQ_sigma = 0, dF = 0, dFQ = 0;
};
struct ThermoResult {
  EnsembleSpec spec;
  std::vector<ThermoRecord> records;
};
ThermoResult thermo(const TopologyTable& t, const BetaGrid& grid);

// Property checks; `worst` is the most negative margin seen.
struct CheckResult {
  bool ok = true;
  Real worst = 0;
};
CheckResult check_convexity(const TopologyTable& t, const BetaGrid& grid);
CheckResult check_jensen(const TopologyTable& t, const BetaGrid& grid);
CheckResult check_finite_difference(const TopologyTable& t, const BetaGrid& grid);
CheckResult check_expectation_bounds(const TopologyTable& t, const BetaGrid& grid);

// Pseudo-critical estimator: first beta where dF (or dFQ) exceeds theta.
struct PseudoCritical {
  int n = 0;
  std::optional<double> beta;  // empty: no crossing on the grid
};
std::vector<PseudoCritical> pseudo_critical(const std::vector<TopologyTable>& curves,
                                            const BetaGrid& grid, double theta = kDefaultTheta,
                                            bool quenched = false);

Real growth_lower_bound_madras(int d, int n, const BigCount& t_n);
// min over n of (g(n) a_n)^{1/n}; a[0] is a_1.
Real submultiplicative_upper_bound(const std::vector<BigCount>& a,
                                   const std::function<Real(int)>& g);

enum class Pattern { star_h, saw_pq, side_chain_count };
Pattern parse_pattern(std::string_view s);
int pattern_occurrences(const Configuration& c, Pattern p);
int pattern_occurrences(const LatticePolymer& p, Pattern pat);
std::map<int, BigCount> pattern_stats(const EnsembleSpec& spec, Pattern p,
                                      const EnumerateOptions& opts = {});

}  // namespace polylat
