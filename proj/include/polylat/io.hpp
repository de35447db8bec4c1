// JSON/CSV serialisation and the content-addressed result cache.
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "polylat/enumerate.hpp"
#include "polylat/knot.hpp"
#include "polylat/statmech.hpp"

namespace polylat {

inline constexpr const char* kEngineVersion = "polylat-engine/1.0.0";
inline constexpr const char* kSchemaVersion = "polylat-result/1";

using json = nlohmann::ordered_json;

std::string format_real(Real x);  // round-trippable decimal

json to_json(const EnsembleSpec& s);
EnsembleSpec spec_from_json(const json& j);
json to_json(const VisitHistogram& h);
VisitHistogram histogram_from_json(const json& j);

// A cached enumeration result: the summary plus, when available, the table.
struct EnsembleResult {
  EnumerationSummary summary;
  std::optional<TopologyTable> table;
};
json to_json(const EnsembleResult& r, bool timing = false);
EnsembleResult result_from_json(const json& j);

json to_json(const ThermoResult& t);
json to_json(const KnotInvariant& k);

inline constexpr const char* kThermoCsvHeader =
    "class,d,N,boundary,convention,beta,Z,F,FQ,E_sigma,EQ_sigma,dF,dFQ";
std::string thermo_csv_row(const ThermoResult& t, const ThermoRecord& r);

void atomic_write(const std::filesystem::path& path, const std::string& content);

std::uint64_t fnv1a64(std::string_view data);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  static std::filesystem::path default_dir();  // $POLYLAT_CACHE or ./.polylat-cache
  static std::string key(const EnsembleSpec& spec);

  std::filesystem::path path_for(const EnsembleSpec& spec) const;
  std::optional<EnsembleResult> load(const EnsembleSpec& spec) const;
  void store(const EnsembleResult& r) const;

 private:
  std::filesystem::path dir_;
};

// Enumerate with topology when the class supports it at this size, going
// through the cache. `hit` reports whether the cache answered.
EnsembleResult compute_ensemble(const EnsembleSpec& spec, const EnumerateOptions& opts,
                                const ResultCache* cache, bool* hit = nullptr);

}  // namespace polylat
