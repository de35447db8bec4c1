#include <doctest.h>

#include <cmath>
#include <limits>

#include "polylat/statmech.hpp"

using namespace polylat;

namespace {

EnsembleSpec spec(PolymerClass cls, int d, int n, Boundary b = Boundary::penetrable,
                  Convention c = Convention::contains_origin) {
  return {cls, d, n, b, c};
}

double to_d(const BigCount& x) { return x.convert_to<double>(); }

// Plain double-precision sums, no log-sum-exp.
double naive_logZ(const VisitHistogram& h, double beta) {
  double z = 0;
  for (const auto& [k, v] : h) z += to_d(v) * std::exp(beta * k);
  return std::log(z);
}

double naive_E(const VisitHistogram& h, double beta) {
  double z = 0, e = 0;
  for (const auto& [k, v] : h) z += to_d(v) * std::exp(beta * k), e += k * to_d(v) * std::exp(beta * k);
  return e / z;
}

double naive_FQ(const TopologyTable& t, double beta) {
  const double total = to_d(t.total());
  double s = 0;
  for (const auto& c : t.classes) s += to_d(c.count) / total * naive_logZ(c.histogram, beta);
  return s / t.spec.size;
}

LatticePolymer straight_walk(int d, int n) {
  std::vector<LatticePoint> s{LatticePoint(d)};
  std::vector<std::pair<LatticePoint, LatticePoint>> e;
  for (int i = 0; i < n; ++i) {
    s.push_back(s.back() + LatticePoint::unit(d, 0));
    e.emplace_back(s[i], s[i + 1]);
  }
  return LatticePolymer::make(PolymerClass::walk, d, s, e, std::make_pair(s.front(), s.back()));
}

}  // namespace

TEST_CASE("free energies of the 5-site trees in three dimensions") {
  auto t = count_by_topology(spec(PolymerClass::tree, 3, 5));
  CHECK(t.total() == 3390);
  CHECK(static_cast<double>(free_energy(t, 0)) == doctest::Approx(std::log(3390.0) / 5).epsilon(1e-14));
  // the quoted 1.46980018 is truncated, not rounded (exact 1.4698001855...)
  CHECK(static_cast<long long>(std::floor(quenched_free_energy(t, 0) * 1e8L)) == 146980018);
  for (double b : {-2.0, -0.5, 0.0, 1.0, 3.5}) {
    CAPTURE(b);
    CHECK(static_cast<double>(quenched_free_energy(t, b)) == doctest::Approx(naive_FQ(t, b)).epsilon(1e-12));
    CHECK(static_cast<double>(free_energy(t, b)) ==
          doctest::Approx(naive_logZ(t.marginal(), b) / 5).epsilon(1e-12));
    CHECK(static_cast<double>(expected_visits(t, b)) == doctest::Approx(naive_E(t.marginal(), b)).epsilon(1e-12));
  }
}

TEST_CASE("histogram primitives") {
  const VisitHistogram h{{1, 2}, {3, 1}};
  CHECK(cardinality(h) == 3);
  CHECK(static_cast<double>(partition_function(h, 0)) == doctest::Approx(3.0));
  CHECK(static_cast<double>(log_partition_function(h, 0.7)) ==
        doctest::Approx(std::log(2 * std::exp(0.7) + std::exp(2.1))));
  CHECK(static_cast<double>(expected_visits(h, 0)) == doctest::Approx(5.0 / 3));
  CHECK(static_cast<double>(free_energy(h, 2, 0)) == doctest::Approx(std::log(3.0) / 2));

  // log-space stays finite where the plain sum overflows
  const VisitHistogram big{{0, 1}, {20000, 1}};
  CHECK(static_cast<double>(log_partition_function(big, 1)) == doctest::Approx(20000.0));
  CHECK_THROWS(partition_function(big, 1));
  CHECK(static_cast<double>(expected_visits(big, 1)) == doctest::Approx(20000.0));
  CHECK(static_cast<double>(expected_visits(big, -1)) == doctest::Approx(0.0));
}

TEST_CASE("expected visits is the derivative of the free energy") {
  for (auto cls : {PolymerClass::walk, PolymerClass::comb, PolymerClass::tree})
    for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
      auto t = count_by_topology(spec(cls, 2, 7, b));
      const Real h = tolerance::fd_step;
      for (Real beta : {-1.5L, 0.0L, 0.6L, 2.0L}) {
        const Real fd = (free_energy(t, beta + h) - free_energy(t, beta - h)) / (2 * h);
        CHECK(static_cast<double>(std::abs(fd - expected_visits(t, beta) / 7)) < 1e-8);
      }
    }
}

TEST_CASE("convexity, Jensen and expectation bounds") {
  const auto grid = BetaGrid::range(-2, 4, 0.25);
  for (auto cls : {PolymerClass::tree, PolymerClass::animal, PolymerClass::walk, PolymerClass::comb})
    for (int d : {2, 3}) {
      auto t = count_by_topology(spec(cls, d, d == 2 ? 6 : 5));
      CHECK(check_convexity(t, grid).ok);
      CHECK(check_jensen(t, grid).ok);
      CHECK(check_finite_difference(t, grid).ok);
      CHECK(check_expectation_bounds(t, grid).ok);
      for (double b : grid.values) CHECK(quenched_free_energy(t, b) <= free_energy(t, b) + tolerance::jensen);
    }
  // a histogram that is not log-concave still gives a convex F
  auto t = count_by_topology(spec(PolymerClass::polygon, 2, 8, Boundary::impenetrable));
  CHECK(check_convexity(t, grid).ok);
}

TEST_CASE("thermo records") {
  auto t = count_by_topology(spec(PolymerClass::comb, 2, 5, Boundary::impenetrable));
  auto r = thermo(t, BetaGrid::parse("-1:1:0.5"));
  REQUIRE(r.records.size() == 5);
  CHECK(r.records[2].beta == 0);
  CHECK(r.records[2].dF == 0);
  CHECK(static_cast<double>(r.records[2].Z) == doctest::Approx(to_d(t.total())));
  for (const auto& x : r.records) {
    CHECK(x.E_sigma >= 1);  // impenetrable combs always touch
    CHECK(std::abs(static_cast<double>(x.logZ - std::log(x.Z))) < 1e-12);
  }
  CHECK(BetaGrid::parse("0,0.5,2").values == std::vector<double>{0, 0.5, 2});
  CHECK_THROWS_AS(BetaGrid::parse("1:0:0.5"), ValidationError);
  CHECK_THROWS_AS(BetaGrid::parse("0:1:0"), ValidationError);
}

TEST_CASE("strong attraction pulls trees onto the surface") {
  // in d = 2 the most visits is all N sites on the line, the fewest is the origin alone
  for (int n = 3; n <= 7; ++n) {
    auto t = count_by_topology(spec(PolymerClass::tree, 2, n));
    CHECK(static_cast<double>(expected_visits(t, 40)) == doctest::Approx(n).epsilon(1e-9));
    CHECK(static_cast<double>(expected_visits(t, -40)) == doctest::Approx(1).epsilon(1e-9));
  }
}

TEST_CASE("relative quenched free energy of animals stays above the bound") {
  for (int d : {2, 3})
    for (int n = 2; n <= (d == 2 ? 6 : 5); ++n) {
      auto t = count_by_topology(spec(PolymerClass::animal, d, n));
      for (double b = -2; b <= 0; b += 0.25) {
        auto r = relative_quenched(t, b);
        REQUIRE(r.bound.has_value());
        CHECK(static_cast<double>(*r.bound) ==
              doctest::Approx(-std::log(double(d) * n) / n + b * std::pow(n, -1.0 / d)));
        CHECK(*r.margin >= -tolerance::animal_bound);
      }
      CHECK_FALSE(relative_quenched(t, 0.5).bound.has_value());
    }
  auto walks = count_by_topology(spec(PolymerClass::walk, 2, 5));
  CHECK_FALSE(relative_quenched(walks, -1).bound.has_value());
}

TEST_CASE("growth constant bounds") {
  // d (2N)^{(d-1)/d} t_N, to the power 1/N
  CHECK(static_cast<double>(growth_lower_bound_madras(1, 1, 1)) == doctest::Approx(1.0));
  CHECK(static_cast<double>(growth_lower_bound_madras(2, 1, 1)) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(static_cast<double>(growth_lower_bound_madras(3, 2, 9)) ==
        doctest::Approx(std::sqrt(3 * std::pow(4.0, 2.0 / 3) * 9)));
  CHECK(std::abs(static_cast<double>(growth_lower_bound_madras(2, 15, 338158676)) - 4.34424267) < 5e-9);
  CHECK(std::abs(static_cast<double>(growth_lower_bound_madras(3, 11, 248160162)) - 7.72486806) < 5e-9);
  CHECK_THROWS_AS(growth_lower_bound_madras(2, 0, 1), ValidationError);

  std::vector<BigCount> geometric;
  for (int n = 1; n <= 10; ++n) geometric.push_back(BigCount(1) << (2 * n));  // 4^n
  CHECK(static_cast<double>(submultiplicative_upper_bound(geometric, nullptr)) == doctest::Approx(4.0));

  std::vector<BigCount> walks;
  for (int n = 1; n <= 12; ++n)
    walks.push_back(summarize(spec(PolymerClass::walk, 2, n, Boundary::penetrable, Convention::from_origin)).total);
  const auto mu = submultiplicative_upper_bound(walks, nullptr);
  CHECK(mu > 2.638);
  CHECK(mu < 4);
  CHECK(static_cast<double>(mu) == doctest::Approx(std::pow(to_d(walks.back()), 1.0 / 12)));
  CHECK_THROWS_AS(submultiplicative_upper_bound({}, nullptr), ValidationError);
}

TEST_CASE("pseudo-critical points") {
  std::vector<TopologyTable> curves;
  for (int n = 6; n <= 9; ++n) curves.push_back(count_by_topology(spec(PolymerClass::walk, 2, n, Boundary::impenetrable)));
  const auto grid = BetaGrid::range(0, 4, 0.25);
  for (const auto& pc : pseudo_critical(curves, grid, std::numeric_limits<double>::infinity()))
    CHECK_FALSE(pc.beta.has_value());
  const auto pcs = pseudo_critical(curves, grid, 0.02);
  REQUIRE(pcs.size() == curves.size());
  for (std::size_t i = 0; i < pcs.size(); ++i) {
    REQUIRE(pcs[i].beta.has_value());
    const auto& t = curves[i];
    const Real b = *pcs[i].beta;
    CHECK(pcs[i].n == t.spec.size);
    CHECK(static_cast<double>(free_energy(t, b) - free_energy(t, 0)) == doctest::Approx(0.02).epsilon(1e-6));
    CHECK(free_energy(t, b - 0.01L) - free_energy(t, 0) < 0.02L);
  }
  CHECK_THROWS_AS(pseudo_critical({curves[0]}, grid), ValidationError);
}

TEST_CASE("pattern statistics") {
  // the plus sign is the only 5-site tree with a full-degree vertex
  auto star = pattern_stats(spec(PolymerClass::tree, 2, 5), Pattern::star_h);
  CHECK(star[1] == 5);
  CHECK(star[0] + star[1] == summarize(spec(PolymerClass::tree, 2, 5)).total);
  CHECK(pattern_stats(spec(PolymerClass::tree, 2, 4), Pattern::star_h).size() == 1);

  for (int n = 0; n <= 9; ++n) CHECK(pattern_occurrences(straight_walk(2, n), Pattern::saw_pq) == std::max(0, n - 3));
  for (int n = 2; n <= 9; ++n)
    for (const auto& [k, v] : pattern_stats(spec(PolymerClass::comb, 2, n), Pattern::side_chain_count))
      CHECK(k <= (n - 1) / 2);
  CHECK(parse_pattern("saw-PQ") == Pattern::saw_pq);
  CHECK_THROWS_AS(parse_pattern("nope"), ValidationError);
  CHECK_THROWS_AS(pattern_stats(spec(PolymerClass::walk, 2, 4), Pattern::star_h), ValidationError);
}

TEST_CASE("sandwich between surface-bound and free ensembles") {
  // every (d-1)-dimensional member lies in the surface and visits at every
  // site; nothing visits more than its N' sites
  auto sites = [](PolymerClass cls, int n) {
    return cls == PolymerClass::tree || cls == PolymerClass::animal || cls == PolymerClass::polygon ? n : n + 1;
  };
  auto line_count = [](PolymerClass cls, int n) -> BigCount {  // contains-origin members in Z^1
    switch (cls) {
      case PolymerClass::tree:
      case PolymerClass::animal: return n;
      case PolymerClass::walk:
      case PolymerClass::comb: return n == 0 ? 1 : 2 * (n + 1);
      case PolymerClass::polygon: return 0;
    }
    return 0;
  };
  for (auto cls : {PolymerClass::tree, PolymerClass::animal, PolymerClass::walk, PolymerClass::comb,
                   PolymerClass::polygon})
    for (int d : {2, 3})
      for (int n = 1; n <= (d == 2 ? 7 : 5); ++n)
        for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
          if (cls == PolymerClass::polygon && n % 2) continue;
          CAPTURE(to_string(cls));
          CAPTURE(d);
          CAPTURE(n);
          const auto h = summarize(spec(cls, d, n, b)).histogram;
          const BigCount surface = d == 2 ? line_count(cls, n) : summarize(spec(cls, d - 1, n)).total;
          const int np = sites(cls, n);
          if (h.empty()) {
            CHECK(surface == 0);
            continue;
          }
          CHECK(h.rbegin()->first <= np);
          if (surface > 0) CHECK(h.count(np) == 1);
          if (surface > 0) CHECK(h.at(np) == surface);
          for (Real beta : {0.0L, 0.5L, 1.0L, 3.0L}) {
            const Real logZ = log_partition_function(h, beta);
            if (surface > 0) CHECK(std::log(to_d(surface)) + beta * np <= logZ + 1e-12L);
            CHECK(logZ <= std::log(to_d(cardinality(h))) + beta * np + 1e-12L);
          }
        }
}
