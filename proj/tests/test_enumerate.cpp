#include <doctest.h>

#include <set>

#include "polylat/enumerate.hpp"
#include "polylat/oracle.hpp"

using namespace polylat;

namespace {

EnsembleSpec spec(PolymerClass cls, int d, int n, Boundary b = Boundary::penetrable,
                  Convention c = Convention::contains_origin) {
  return {cls, d, n, b, c};
}

BigCount total(const EnsembleSpec& s) { return summarize(s).total; }

// Plain recursive self-avoiding walk count from the origin.
std::uint64_t naive_walks(int d, int n, std::vector<LatticePoint>& path) {
  if (static_cast<int>(path.size()) == n + 1) return 1;
  std::uint64_t c = 0;
  for (int a = 0; a < d; ++a)
    for (int s : {-1, 1}) {
      auto q = path.back() + LatticePoint::unit(d, a, s);
      if (std::find(path.begin(), path.end(), q) != path.end()) continue;
      path.push_back(q);
      c += naive_walks(d, n, path);
      path.pop_back();
    }
  return c;
}

std::uint64_t naive_walks(int d, int n) {
  std::vector<LatticePoint> path{LatticePoint(d)};
  return naive_walks(d, n, path);
}

// Rooted oriented polygons: (n-1)-step walks ending next to the origin. Each
// unrooted unoriented polygon is counted 2n times.
std::uint64_t naive_rooted_polygons(int d, int n, std::vector<LatticePoint>& path) {
  if (static_cast<int>(path.size()) == n) return path.back().adjacent(LatticePoint(d)) ? 1 : 0;
  std::uint64_t c = 0;
  for (int a = 0; a < d; ++a)
    for (int s : {-1, 1}) {
      auto q = path.back() + LatticePoint::unit(d, a, s);
      if (std::find(path.begin(), path.end(), q) != path.end()) continue;
      path.push_back(q);
      c += naive_rooted_polygons(d, n, path);
      path.pop_back();
    }
  return c;
}

// Combs with n edges up to translation: every spanning tree of every site set
// of size n+1, every ordered pair of leaves, filtered by validate().
std::uint64_t naive_combs(int d, int n) {
  if (n == 0) return 1;
  std::uint64_t count = 0;
  for (const auto& s : oracle::site_sets(d, n + 1)) {
    const auto e = oracle::induced_edges(s);
    const int m = static_cast<int>(e.size());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != n) continue;
      std::vector<std::pair<LatticePoint, LatticePoint>> edges;
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1) edges.emplace_back(s[e[i].first], s[e[i].second]);
      for (const auto& a : s)
        for (const auto& b : s) {
          if (a == b) continue;
          auto p = LatticePolymer::make(PolymerClass::comb, d, s, edges, std::make_pair(a, b));
          if (validate(p)) ++count;
        }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("worked counts") {
  CHECK(total(spec(PolymerClass::tree, 3, 5)) == 3390);
  CHECK(total(spec(PolymerClass::walk, 3, 4, Boundary::penetrable, Convention::from_origin)) == 726);
  for (auto c : {Convention::translation_classes, Convention::contains_origin})
    for (auto b : {Boundary::penetrable, Boundary::impenetrable})
      CHECK(total(spec(PolymerClass::polygon, 3, 7, b, c)) == 0);
}

TEST_CASE("trees and animals agree with the site-set oracle") {
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    CHECK(total(spec(PolymerClass::tree, 2, n, Boundary::penetrable, Convention::translation_classes)) ==
          oracle::tree_count(2, n));
  }
  for (int n = 1; n <= 5; ++n)
    CHECK(total(spec(PolymerClass::tree, 3, n, Boundary::penetrable, Convention::translation_classes)) ==
          oracle::tree_count(3, n));
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(total(spec(PolymerClass::animal, 2, n, Boundary::penetrable, Convention::translation_classes)) ==
          oracle::animal_count(2, n));
  }
  for (int n = 1; n <= 4; ++n)
    CHECK(total(spec(PolymerClass::animal, 3, n, Boundary::penetrable, Convention::translation_classes)) ==
          oracle::animal_count(3, n));
}

TEST_CASE("walks and polygons agree with naive walk search") {
  for (int d : {2, 3})
    for (int n = 0; n <= (d == 2 ? 9 : 6); ++n) {
      CAPTURE(d);
      CAPTURE(n);
      CHECK(total(spec(PolymerClass::walk, d, n, Boundary::penetrable, Convention::from_origin)) ==
            naive_walks(d, n));
    }
  for (int d : {2, 3})
    for (int n = 4; n <= (d == 2 ? 12 : 8); n += 2) {
      std::vector<LatticePoint> path{LatticePoint(d)};
      const auto rooted = naive_rooted_polygons(d, n, path);
      CHECK(rooted % (2 * n) == 0);
      CHECK(total(spec(PolymerClass::polygon, d, n, Boundary::penetrable,
                       Convention::translation_classes)) == rooted / (2 * n));
    }
}

TEST_CASE("combs agree with brute-force spanning trees") {
  for (int n = 0; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(total(spec(PolymerClass::comb, 2, n, Boundary::penetrable, Convention::translation_classes)) ==
          naive_combs(2, n));
  }
  for (int n = 0; n <= 3; ++n)
    CHECK(total(spec(PolymerClass::comb, 3, n, Boundary::penetrable, Convention::translation_classes)) ==
          naive_combs(3, n));
}

TEST_CASE("convention identities and containment") {
  const std::pair<PolymerClass, int> cases[] = {
      {PolymerClass::animal, 6}, {PolymerClass::tree, 7}, {PolymerClass::walk, 7},
      {PolymerClass::polygon, 10}, {PolymerClass::comb, 7}};
  for (int d : {2, 3})
    for (auto [cls, top] : cases)
      for (int n = 1; n <= top - (d == 3 ? 2 : 0); ++n) {
        CAPTURE(to_string(cls));
        CAPTURE(n);
        const auto bar = total(spec(cls, d, n, Boundary::penetrable, Convention::translation_classes));
        const auto oo = total(spec(cls, d, n, Boundary::penetrable));
        const auto plus = total(spec(cls, d, n, Boundary::impenetrable));
        const int factor = has_labels(cls) ? n + 1 : n;
        CHECK(oo == bar * factor);
        CHECK(bar <= plus);
        CHECK(plus <= oo);
      }
}

TEST_CASE("histograms sum to totals and impenetrable ensembles always visit") {
  for (auto cls : {PolymerClass::tree, PolymerClass::walk, PolymerClass::comb, PolymerClass::polygon})
    for (auto b : {Boundary::penetrable, Boundary::impenetrable}) {
      auto s = summarize(spec(cls, 2, 8, b));
      BigCount sum = 0;
      for (const auto& [k, v] : s.histogram) sum += v;
      CHECK(sum == s.total);
      if (b == Boundary::impenetrable) CHECK(s.histogram.count(0) == 0);
    }
}

TEST_CASE("enumeration is deterministic and thread-count independent") {
  auto s = spec(PolymerClass::comb, 2, 6);
  std::vector<std::string> first, second;
  enumerate(s, [&](const Configuration& c) { first.push_back(to_text(c.representative())); });
  enumerate(s, [&](const Configuration& c) { second.push_back(to_text(c.representative())); });
  CHECK(first == second);
  CHECK(std::set<std::string>(first.begin(), first.end()).size() == first.size());

  for (auto cls : {PolymerClass::tree, PolymerClass::animal, PolymerClass::walk, PolymerClass::polygon,
                   PolymerClass::comb}) {
    auto sp = spec(cls, 2, cls == PolymerClass::polygon ? 12 : 7);
    EnumerateOptions one, three;
    three.threads = 3;
    auto a = count_by_topology(sp, one), b = count_by_topology(sp, three);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
      CHECK(a.classes[i].key == b.classes[i].key);
      CHECK(a.classes[i].count == b.classes[i].count);
      CHECK(a.classes[i].histogram == b.classes[i].histogram);
    }
    auto sum1 = summarize(sp, one), sum3 = summarize(sp, three);
    CHECK(sum1.total == sum3.total);
    CHECK(sum1.histogram == sum3.histogram);
    CHECK(a.total() == sum1.total);
    CHECK(a.marginal() == sum1.histogram);
  }
}

TEST_CASE("topology tables and the commonest class") {
  auto [key, count] = max_topology_class(spec(PolymerClass::tree, 3, 5));
  CHECK(count == 1815);
  // three sites only form a path: every contains-origin tree shares one class
  auto [k3, c3] = max_topology_class(spec(PolymerClass::tree, 2, 3));
  CHECK(c3 == 3 * oracle::tree_count(2, 3));
  CHECK_THROWS_AS(max_topology_class(spec(PolymerClass::tree, 2, 3, Boundary::impenetrable)),
                  ValidationError);

  // trees d=2 N=4: class sums against the oracle
  auto t = count_by_topology(spec(PolymerClass::tree, 2, 4));
  CHECK(t.classes.size() == 2);  // path and the T
  CHECK(t.total() == 4 * oracle::tree_count(2, 4));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(summarize(spec(PolymerClass::tree, 2, 4, Boundary::penetrable, Convention::from_origin)),
                  ValidationError);
  CHECK_THROWS_AS(summarize(spec(PolymerClass::tree, 1, 4)), ValidationError);
  CHECK_THROWS_AS(summarize(spec(PolymerClass::tree, 2, 40)), BudgetExceeded);
  EnumerateOptions capped;
  capped.budget.node_cap = 100;
  CHECK_THROWS_AS(summarize(spec(PolymerClass::walk, 2, 12), capped), BudgetExceeded);
  EnumerateOptions roomy;
  roomy.budget.max_size = 4;
  CHECK_THROWS_AS(summarize(spec(PolymerClass::walk, 2, 5), roomy), BudgetExceeded);
  CHECK_NOTHROW(summarize(spec(PolymerClass::walk, 2, 4), roomy));
}

TEST_CASE("parallel parts cover the ensemble exactly once") {
  auto s = spec(PolymerClass::tree, 2, 8, Boundary::penetrable, Convention::translation_classes);
  std::multiset<std::string> all;
  for (int w = 0; w < 4; ++w)
    enumerate_part(s, w, 4, [&](const Configuration& c) { all.insert(to_text(c.representative())); });
  CHECK(all.size() == oracle::tree_count(2, 8));
  CHECK(std::set<std::string>(all.begin(), all.end()).size() == all.size());
}
