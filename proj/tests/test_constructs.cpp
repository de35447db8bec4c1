#include <doctest.h>

#include <map>
#include <set>

#include "polylat/constructs.hpp"
#include "polylat/enumerate.hpp"
#include "polylat/repro.hpp"

using namespace polylat;

namespace {

using PointPair = std::pair<LatticePoint, LatticePoint>;

LatticePolymer walk_through(const std::vector<LatticePoint>& pts) {
  std::vector<PointPair> e;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) e.emplace_back(pts[i], pts[i + 1]);
  return LatticePolymer::make(PolymerClass::comb, pts.front().dim(), pts, e, std::make_pair(pts.front(), pts.back()));
}

std::set<PointPair> edge_set(const LatticePolymer& p) {
  std::set<PointPair> out;
  for (auto [a, b] : p.edge_points()) out.emplace(std::min(a, b), std::max(a, b));
  return out;
}

}  // namespace

TEST_CASE("the trefoil polygon and its chains") {
  const auto& cyc = phi30_cycle();
  CHECK(cyc.size() == 30);
  CHECK(cyc.front() == LatticePoint{0, 0, 0});
  CHECK(cyc[1] == LatticePoint{1, 0, 0});
  for (const auto& anchor : {LatticePoint{0, 0, 3}, LatticePoint{0, 0, 4}, LatticePoint{1, 0, 4},
                             LatticePoint{1, 0, 3}, LatticePoint{3, 1, 0}, LatticePoint{3, 1, 1}})
    CHECK(std::find(cyc.begin(), cyc.end(), anchor) != cyc.end());
  auto phi = build_phi30();
  CHECK(spans(phi) == std::vector<int>{4, 4, 5});
  CHECK(lex_min_site(phi) == LatticePoint{0, 0, 0});

  auto one = build_phi_chain(1);
  CHECK(one.num_edges() == 28);
  CHECK(validate(one));
  auto fifty = build_phi_chain(50);
  CHECK(fifty.num_edges() == 1400);
  CHECK(validate(fifty));
  CHECK(spans(fifty)[2] == 4 * 50);
}

TEST_CASE("straight comb witnesses") {
  auto w = straight_comb_witness(CombSignature::parse("0;6;"), 3);
  CHECK(w.num_edges() == 6);
  CHECK(visits(w) == 7);
  auto big = straight_comb_witness(CombSignature::parse("4;2,3,4,1,3;3,1,5,2"), 3);
  CHECK(big.num_edges() == 24);
  CHECK(visits(big) == 25);
  auto flat = straight_comb_witness(CombSignature::parse("2;1,1,1;2,2"), 2);
  CHECK(validate(flat));
  CHECK(visits(flat) == 4);
  CHECK(in_halfspace(flat));
  for (int n = 1; n <= 9; ++n)
    for (const auto& s : CombSignature::all(n))
      for (int d : {2, 3}) {
        auto c = straight_comb_witness(s, d);
        REQUIRE(validate(c));
        CHECK(comb_signature(c) == s);
        int backbone = 0;
        for (int x : s.n) backbone += x;
        CHECK(visits(c) == (d == 2 ? backbone + 1 : n + 1));
      }
  CHECK_THROWS_AS(straight_comb_witness(CombSignature{1, {0, 2}, {1}}, 3), ValidationError);
}

TEST_CASE("comb_plus_map on hand cases") {
  const LatticePoint o(2);
  // origin is a leaf: a two-step tail goes out behind it
  auto stub = walk_through({o, {1, 0}});
  auto y = comb_plus_map(stub);
  CHECK(y == walk_through({o, {1, 0}, {2, 0}, {3, 0}}).with_class(PolymerClass::comb));
  CHECK(visits(y) == 1);

  // origin in the middle of a surface run: the surface edge is replaced by a detour
  auto line = walk_through({{0, -1}, o, {0, 1}});
  auto z = comb_plus_map(line);
  CHECK(validate(z));
  CHECK(z.num_edges() == 4);
  CHECK(visits(z) == 2);

  // two translates of a U share an image
  auto u = walk_through({{1, 0}, o, {0, 1}, {1, 1}});
  auto u2 = u.translated(LatticePoint{0, -1});
  REQUIRE(u2.contains(o));
  CHECK_FALSE(u == u2);
  CHECK(comb_plus_map(u) == comb_plus_map(u2));
  auto pre = comb_plus_preimages(comb_plus_map(u));
  CHECK(pre.size() == 2);
  int normal = 0;
  for (const auto& p : pre) normal += lex_min_site(p).is_origin();
  CHECK(normal == 1);

  CHECK_THROWS_AS(comb_plus_map(walk_through({{1, 0}, {2, 0}})), ValidationError);
  CHECK_THROWS_AS(comb_plus_map(walk_through({{-1, 0}, o})), ValidationError);
}

TEST_CASE("comb_plus_map images and preimages") {
  for (int d : {2, 3})
    for (int n = 1; n <= (d == 2 ? 6 : 4); ++n) {
      CAPTURE(d);
      CAPTURE(n);
      std::map<std::string, int> fibre;
      std::map<std::string, int> normal_fibre;
      enumerate({PolymerClass::comb, d, n, Boundary::impenetrable, Convention::contains_origin},
                [&](const Configuration& c) {
                  for (int m = 0; m < c.num_members(); ++m) {
                    const auto x = c.member(m);
                    const auto y = comb_plus_map(x);
                    REQUIRE(validate(y));
                    CHECK(static_cast<int>(y.num_edges()) == n + 2);
                    CHECK(visits(y) <= 2);
                    CHECK(lex_min_site(y).is_origin());
                    const auto pre = comb_plus_preimages(y);
                    CHECK(std::find(pre.begin(), pre.end(), x) != pre.end());
                    for (const auto& p : pre) CHECK(comb_plus_map(p) == y);
                    ++fibre[to_text(y)];
                    normal_fibre[to_text(y)] += lex_min_site(x).is_origin();
                  }
                });
      for (const auto& [k, f] : fibre) CHECK(f <= 2);
      for (const auto& [k, f] : normal_fibre) CHECK(f <= 1);
    }
}

TEST_CASE("comb_decompose splits the edges") {
  std::map<int, int> cases;
  for (int total = 2; total <= 7; ++total)
    enumerate({PolymerClass::comb, 2, total, Boundary::penetrable, Convention::translation_classes},
              [&](const Configuration& c) {
                const auto comb = c.representative();
                const auto cs = analyze_comb(c.adjacency(), c.label_a(), c.label_b());
                const auto all = edge_set(comb);
                for (int n = 1; n < total; ++n) {
                  CAPTURE(to_text(comb));
                  CAPTURE(n);
                  const auto dec = comb_decompose(comb, n);
                  ++cases[static_cast<int>(dec.which)];
                  CHECK(validate(dec.first));
                  CHECK(validate(dec.second));
                  CHECK(validate(dec.walk));
                  CHECK(static_cast<int>(dec.first.num_edges()) == n);
                  std::set<PointPair> seen;
                  std::size_t parts = 0;
                  for (const auto* p : {&dec.first, &dec.second, &dec.walk}) {
                    auto e = edge_set(*p);
                    parts += e.size();
                    seen.insert(e.begin(), e.end());
                  }
                  CHECK(parts == seen.size());
                  CHECK(seen == all);

                  const auto norm = dec.normalized();
                  const auto anchors = dec.anchors();
                  CHECK(norm[0].translated(anchors[0]) == dec.first);
                  CHECK(decomposition_hash(c, cs, n) == decomposition_hash(dec));
                }
                CHECK_THROWS_AS(comb_decompose(comb, 0), ValidationError);
                CHECK_THROWS_AS(comb_decompose(comb, total), ValidationError);
              });
  CHECK(cases.size() == 3);
  CHECK(to_string(Decomposition::Case::II) == "II");
}

TEST_CASE("decomposition hashes separate distinct triples") {
  std::map<std::uint64_t, std::string> by_hash;
  std::set<std::string> triples;
  for (int total = 2; total <= 7; ++total)
    enumerate({PolymerClass::comb, 2, total, Boundary::penetrable, Convention::translation_classes},
              [&](const Configuration& c) {
                const auto comb = c.representative();
                for (int n = 1; n < total; ++n) {
                  const auto dec = comb_decompose(comb, n);
                  const auto nm = dec.normalized();
                  const auto key = to_text(nm[0]) + "|" + to_text(nm[1]) + "|" + to_text(nm[2]);
                  triples.insert(key);
                  auto [it, fresh] = by_hash.emplace(decomposition_hash(dec), key);
                  CHECK(it->second == key);
                }
              });
  CHECK(by_hash.size() == triples.size());
}
