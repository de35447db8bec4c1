#include <doctest.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "polylat/constructs.hpp"
#include "polylat/io.hpp"

using namespace polylat;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("polylat-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("reals print so they read back") {
  for (Real x : {0.0L, 1.0L / 3, -2.5e-300L, 1.46980018L, 1e300L}) CHECK(std::stold(format_real(x)) == x);
  CHECK(format_real(0.25L) == "0.25");
}

TEST_CASE("results round-trip through JSON") {
  const EnsembleSpec s{PolymerClass::tree, 3, 5, Boundary::penetrable, Convention::contains_origin};
  CHECK(spec_from_json(to_json(s)) == s);
  const VisitHistogram h{{0, BigCount("123456789012345678901234567890")}, {3, 7}};
  CHECK(histogram_from_json(to_json(h)) == h);

  EnsembleResult r{summarize(s), count_by_topology(s)};
  const auto j = to_json(r);
  CHECK(j["schema"] == kSchemaVersion);
  CHECK(j["kind"] == "enumeration");
  CHECK(j["total"] == "3390");
  CHECK_FALSE(j.contains("wall_time"));
  CHECK(to_json(r, true).contains("wall_time"));
  const auto back = result_from_json(j);
  CHECK(back.summary.total == 3390);
  CHECK(back.summary.histogram == r.summary.histogram);
  REQUIRE(back.table.has_value());
  REQUIRE(back.table->classes.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.table->classes[i].key == r.table->classes[i].key);
    CHECK(back.table->classes[i].count == r.table->classes[i].count);
    CHECK(back.table->classes[i].histogram == r.table->classes[i].histogram);
  }
  CHECK(to_json(back).dump() == j.dump());

  auto k = to_json(knot_invariant(build_phi30()));
  CHECK(k["kind"] == "knot");
  CHECK(k["determinant"] == "3");
  CHECK(k["alexander"].size() == 3);
}

TEST_CASE("thermo CSV rows line up with the header") {
  const EnsembleSpec s{PolymerClass::walk, 2, 4, Boundary::impenetrable, Convention::contains_origin};
  auto t = thermo(count_by_topology(s), BetaGrid::parse("0,1"));
  const std::string header = kThermoCsvHeader;
  const auto columns = std::count(header.begin(), header.end(), ',');
  for (const auto& r : t.records) {
    const auto row = thermo_csv_row(t, r);
    CHECK(std::count(row.begin(), row.end(), ',') == columns);
    CHECK(row.rfind("walk,2,4,impenetrable,contains-origin,", 0) == 0);
  }
  CHECK(to_json(t)["records"].size() == 2);
}

TEST_CASE("atomic writes replace whole files") {
  const auto dir = scratch("atomic");
  const auto f = dir / "sub" / "out.txt";
  atomic_write(f, "first\n");
  CHECK(slurp(f) == "first\n");
  atomic_write(f, "second\n");
  CHECK(slurp(f) == "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(f.parent_path())) ++entries;
  CHECK(entries == 1);  // no temporary left behind
  std::filesystem::remove_all(dir);
}

TEST_CASE("the cache answers repeats with identical bytes") {
  const auto dir = scratch("cache");
  ResultCache cache(dir);
  const EnsembleSpec s{PolymerClass::comb, 2, 5, Boundary::impenetrable, Convention::contains_origin};
  bool hit = true;
  auto first = compute_ensemble(s, {}, &cache, &hit);
  CHECK_FALSE(hit);
  const auto bytes = slurp(cache.path_for(s));
  auto second = compute_ensemble(s, {}, &cache, &hit);
  CHECK(hit);
  CHECK(to_json(second).dump() == to_json(first).dump());
  CHECK(slurp(cache.path_for(s)) == bytes);

  CHECK(ResultCache::key(s) != ResultCache::key({PolymerClass::comb, 2, 5, Boundary::penetrable,
                                                 Convention::contains_origin}));
  CHECK(ResultCache::key(s).size() == 16);

  // a damaged entry is recomputed
  atomic_write(cache.path_for(s), "{not json");
  compute_ensemble(s, {}, &cache, &hit);
  CHECK_FALSE(hit);
  compute_ensemble(s, {}, &cache, &hit);
  CHECK(hit);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  std::filesystem::remove_all(dir);
}
