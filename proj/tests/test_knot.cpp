#include <doctest.h>

#include <numeric>

#include "polylat/constructs.hpp"
#include "polylat/enumerate.hpp"
#include "polylat/knot.hpp"

using namespace polylat;

namespace {

// (1 - x + x^2)^t by repeated convolution.
std::vector<BigInt> trefoil_power(int t) {
  std::vector<BigInt> p{1};
  for (int i = 0; i < t; ++i) {
    std::vector<BigInt> q(p.size() + 2, 0);
    for (std::size_t k = 0; k < p.size(); ++k) q[k] += p[k], q[k + 1] -= p[k], q[k + 2] += p[k];
    p = q;
  }
  return p;
}

BigInt at_minus_one(const std::vector<BigInt>& c) {
  BigInt s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += (k % 2 ? -c[k] : c[k]);
  return abs(s);
}

std::vector<LatticePoint> mapped(const std::vector<LatticePoint>& cyc, const std::vector<int>& perm,
                                 const std::vector<int>& sign, const LatticePoint& shift) {
  std::vector<LatticePoint> out;
  for (const auto& x : cyc) {
    LatticePoint y(3);
    for (int i = 0; i < 3; ++i) y[perm[i]] = sign[i] * x[i];
    out.push_back(y + shift);
  }
  return out;
}

}  // namespace

TEST_CASE("the unit square is unknotted") {
  const LatticePoint o(3), x{1, 0, 0}, y{0, 1, 0}, xy{1, 1, 0};
  auto sq = polygon_from_cycle({o, x, xy, y});
  auto k = knot_invariant(sq);
  CHECK(k.determinant == 1);
  CHECK(k == unknot_invariant());
  CHECK(polygon_cycle(sq).size() == 4);
  CHECK(polygon_cycle(sq).front() == o);
}

TEST_CASE("the 30-edge trefoil") {
  auto phi = build_phi30();
  REQUIRE(validate(phi));
  CHECK(phi.num_edges() == 30);
  auto k = knot_invariant(phi);
  CHECK(k.determinant == 3);
  CHECK(k.alexander == trefoil_power(1));
  CHECK_FALSE(k.key() == unknot_invariant().key());
  auto d = knot_diagram(phi);
  CHECK(d.crossings.size() >= 3);
  CHECK(d.gauss_code.size() == 2 * d.crossings.size());
  CHECK(diagram_determinant(d) == 3);
}

TEST_CASE("the trefoil invariant survives symmetries, translation and reversal") {
  const auto& cyc = phi30_cycle();
  const auto ref = knot_invariant(build_phi30());
  std::vector<int> perm{0, 1, 2};
  do {
    for (int m = 0; m < 8; ++m) {
      std::vector<int> sign{m & 1 ? -1 : 1, m & 2 ? -1 : 1, m & 4 ? -1 : 1};
      auto c = mapped(cyc, perm, sign, LatticePoint{m, -2 * m, 5});
      CHECK(knot_invariant(polygon_from_cycle(c)) == ref);
      std::reverse(c.begin(), c.end());
      std::rotate(c.begin(), c.begin() + 7, c.end());
      CHECK(knot_invariant(polygon_from_cycle(c)) == ref);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("chains of trefoils") {
  for (int t = 1; t <= 5; ++t) {
    CAPTURE(t);
    auto chain = build_phi_chain(t);
    REQUIRE(validate(chain));
    CHECK(static_cast<int>(chain.num_edges()) == 28 * t);
    auto k = knot_invariant(chain);
    BigInt p = 1;
    for (int i = 0; i < t; ++i) p *= 3;
    CHECK(k.determinant == p);
    const auto d = knot_diagram(chain);
    if (static_cast<int>(d.crossings.size()) <= kAlexanderCrossingCap) {
      CHECK(k.alexander == trefoil_power(t));
      CHECK(at_minus_one(k.alexander) == k.determinant);
    } else {
      CHECK(k.alexander.empty());
    }
  }
  CHECK(knot_invariant(build_phi_chain(3)).alexander ==
        std::vector<BigInt>{1, -3, 6, -7, 6, -3, 1});
  CHECK_THROWS_AS(build_phi_chain(0), ValidationError);
}

TEST_CASE("short cubic lattice polygons are all unknots") {
  // the shortest knotted cubic lattice polygon has 24 edges
  for (int n = 4; n <= 12; n += 2) {
    std::size_t seen = 0;
    enumerate({PolymerClass::polygon, 3, n, Boundary::penetrable, Convention::translation_classes},
              [&](const Configuration& c) {
                if (seen++ % 7) return;
                auto k = knot_invariant(c.representative());
                CHECK(k.determinant == 1);
                CHECK(k.alexander == std::vector<BigInt>{1});
              });
    CHECK(seen > 0);
  }
}

TEST_CASE("projections") {
  const auto& dirs = projection_schedule();
  CHECK(dirs.size() >= 10);
  auto d = knot_diagram(build_phi30());
  CHECK(std::find(dirs.begin(), dirs.end(), d.direction) != dirs.end());
  // looking straight down an edge collapses it
  CHECK_FALSE(project(phi30_cycle(), Direction{1, 0, 0}).has_value());
  CHECK_FALSE(project(phi30_cycle(), Direction{0, 0, 1}).has_value());
  // every crossing appears once over and once under
  std::vector<int> over(d.crossings.size()), under(d.crossings.size());
  for (int g : d.gauss_code) (g > 0 ? over : under)[std::abs(g) - 1]++;
  for (std::size_t i = 0; i < over.size(); ++i) CHECK((over[i] == 1 && under[i] == 1));
  for (const auto& c : d.crossings) CHECK(std::abs(c.sign) == 1);

  const LatticePoint o(3), x{1, 0, 0};
  CHECK_THROWS_AS(polygon_cycle(LatticePolymer::make(PolymerClass::animal, 3, {o, x}, {{o, x}})),
                  ValidationError);
}
