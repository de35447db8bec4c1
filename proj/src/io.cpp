#include "polylat/io.hpp"

#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace polylat {

std::string format_real(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", LDBL_DECIMAL_DIG, x);
  return buf;
}

json to_json(const EnsembleSpec& s) {
  return {{"class", to_string(s.cls)},
          {"d", s.dim},
          {"N", s.size},
          {"boundary", to_string(s.boundary)},
          {"convention", to_string(s.convention)}};
}

EnsembleSpec spec_from_json(const json& j) {
  EnsembleSpec s;
  s.cls = parse_polymer_class(j.at("class").get<std::string>());
  s.dim = j.at("d").get<int>();
  s.size = j.at("N").get<int>();
  s.boundary = parse_boundary(j.at("boundary").get<std::string>());
  s.convention = parse_convention(j.at("convention").get<std::string>());
  return s;
}

json to_json(const VisitHistogram& h) {
  json o = json::object();
  for (const auto& [k, v] : h) o[std::to_string(k)] = v.str();
  return o;
}

VisitHistogram histogram_from_json(const json& j) {
  VisitHistogram h;
  for (const auto& [k, v] : j.items()) h[std::stoi(k)] = BigCount(v.get<std::string>());
  return h;
}

json to_json(const EnsembleResult& r, bool timing) {
  json j;
  j["schema"] = kSchemaVersion;
  j["engine"] = kEngineVersion;
  j["kind"] = "enumeration";
  j["spec"] = to_json(r.summary.spec);
  j["total"] = r.summary.total.str();
  j["visit_histogram"] = to_json(r.summary.histogram);
  if (r.table) {
    json classes = json::array();
    for (const auto& c : r.table->classes)
      classes.push_back({{"key", c.key.str()}, {"count", c.count.str()}, {"visit_histogram", to_json(c.histogram)}});
    j["topology"] = classes;
  } else {
    j["topology"] = nullptr;
  }
  if (timing) j["wall_time"] = r.summary.wall_time;
  return j;
}

EnsembleResult result_from_json(const json& j) {
  EnsembleResult r;
  r.summary.spec = spec_from_json(j.at("spec"));
  r.summary.total = BigCount(j.at("total").get<std::string>());
  r.summary.histogram = histogram_from_json(j.at("visit_histogram"));
  if (j.contains("wall_time")) r.summary.wall_time = j["wall_time"].get<double>();
  if (j.contains("topology") && !j["topology"].is_null()) {
    TopologyTable t{r.summary.spec, {}, r.summary.wall_time};
    for (const auto& c : j["topology"])
      t.classes.push_back({TopologyKey::parse(c.at("key").get<std::string>()),
                           BigCount(c.at("count").get<std::string>()),
                           histogram_from_json(c.at("visit_histogram"))});
    r.table = std::move(t);
  }
  return r;
}

json to_json(const ThermoResult& t) {
  json rows = json::array();
  for (const auto& r : t.records)
    rows.push_back({{"beta", static_cast<double>(r.beta)},
                    {"Z", format_real(r.Z)},
                    {"logZ", static_cast<double>(r.logZ)},
                    {"F", static_cast<double>(r.F)},
                    {"FQ", static_cast<double>(r.FQ)},
                    {"E_sigma", static_cast<double>(r.E_sigma)},
                    {"EQ_sigma", static_cast<double>(r.EQ_sigma)},
                    {"dF", static_cast<double>(r.dF)},
                    {"dFQ", static_cast<double>(r.dFQ)}});
  return {{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "thermo"},
          {"spec", to_json(t.spec)}, {"records", rows}};
}

json to_json(const KnotInvariant& k) {
  json coeffs = json::array();
  for (const auto& c : k.alexander) coeffs.push_back(c.str());
  return {{"schema", kSchemaVersion}, {"engine", kEngineVersion}, {"kind", "knot"},
          {"determinant", k.determinant.str()}, {"alexander", coeffs}, {"key", k.key().str()}};
}

std::string thermo_csv_row(const ThermoResult& t, const ThermoRecord& r) {
  std::ostringstream os;
  const auto& s = t.spec;
  os << to_string(s.cls) << ',' << s.dim << ',' << s.size << ',' << to_string(s.boundary) << ','
     << to_string(s.convention) << ',' << format_real(r.beta) << ',' << format_real(r.Z) << ','
     << format_real(r.F) << ',' << format_real(r.FQ) << ',' << format_real(r.E_sigma) << ','
     << format_real(r.EQ_sigma) << ',' << format_real(r.dF) << ',' << format_real(r.dFQ);
  return os.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InternalError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw InternalError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path ResultCache::default_dir() {
  if (const char* env = std::getenv("POLYLAT_CACHE"); env && *env) return env;
  return ".polylat-cache";
}

std::string ResultCache::key(const EnsembleSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(std::string(kEngineVersion) + '\n' + spec.str())));
  return buf;
}

std::filesystem::path ResultCache::path_for(const EnsembleSpec& spec) const {
  return dir_ / (key(spec) + ".json");
}

std::optional<EnsembleResult> ResultCache::load(const EnsembleSpec& spec) const {
  std::ifstream in(path_for(spec));
  if (!in) return std::nullopt;
  try {
    auto j = json::parse(in);
    if (j.value("engine", "") != kEngineVersion) return std::nullopt;
    auto r = result_from_json(j);
    if (!(r.summary.spec == spec)) return std::nullopt;  // hash collision
    return r;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void ResultCache::store(const EnsembleResult& r) const {
  atomic_write(path_for(r.summary.spec), to_json(r, true).dump(1) + "\n");
}

EnsembleResult compute_ensemble(const EnsembleSpec& spec, const EnumerateOptions& opts,
                                const ResultCache* cache, bool* hit) {
  spec.check();
  if (hit) *hit = false;
  if (cache)
    if (auto r = cache->load(spec)) {
      if (hit) *hit = true;
      return *r;
    }
  EnsembleResult r;
  const bool keyed = !(spec.cls == PolymerClass::animal && spec.size > 12);
  if (keyed) {
    auto t = count_by_topology(spec, opts);
    r.summary = {spec, t.total(), t.marginal(), t.wall_time};
    r.table = std::move(t);
  } else {
    r.summary = summarize(spec, opts);
  }
  if (cache) cache->store(r);
  return r;
}

}  // namespace polylat
