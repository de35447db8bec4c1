// Exhaustive enumeration of polymer ensembles at fixed (class, d, N).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polylat/core.hpp"
#include "polylat/topology.hpp"

namespace polylat {

using BigCount = boost::multiprecision::cpp_int;
using VisitHistogram = std::map<int, BigCount>;  // k -> #configurations with sigma = k

enum class Boundary { penetrable, impenetrable };
enum class Convention { translation_classes, contains_origin, from_origin };

std::string_view to_string(Boundary b);
std::string_view to_string(Convention c);
Boundary parse_boundary(std::string_view s);
Convention parse_convention(std::string_view s);

struct EnsembleSpec {
  PolymerClass cls = PolymerClass::tree;
  int dim = 2;
  int size = 1;  // sites for animals/trees, edges for walks/combs/polygons
  Boundary boundary = Boundary::penetrable;
  Convention convention = Convention::contains_origin;

  void check() const;        // throws ValidationError
  std::string str() const;   // canonical one-line form, used for cache keys

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

struct Budget {
  int max_size = -1;               // -1: per-class default
  std::uint64_t node_cap = 0;      // search nodes; 0 means unlimited
};
int default_max_size(PolymerClass cls, int dim);
double estimated_count(const EnsembleSpec& spec);  // rough, for error messages

struct EnumerateOptions {
  int threads = 1;
  Budget budget;
};

// Lattice coordinates packed into one integer: x_1 is the most significant
// digit, so integer order is lexicographic order.
struct Packing {
  int dim = 0;
  int offset = 0;
  int width = 0;
  std::vector<std::int64_t> stride;  // stride[0] largest

  Packing() = default;
  Packing(int dim, int radius);
  std::int64_t cells() const { return stride[0] * width; }
  std::int64_t origin() const;
  std::int64_t encode(const LatticePoint& p) const;
  LatticePoint decode(std::int64_t id) const;
  int coord(std::int64_t id, int axis) const {
    return static_cast<int>((id / stride[axis]) % width) - offset;
  }
};

// A translation class as seen by the enumerator: one representative embedding
// plus the ensemble members it stands for (one per anchor site, the member
// being the translate that puts the anchor at the origin). Valid only for the
// duration of the consumer callback.
class Configuration {
 public:
  PolymerClass polymer_class() const { return cls_; }
  int dim() const { return packing_->dim; }
  int num_sites() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  LatticePoint site(int i) const { return packing_->decode(ids_[i]); }
  int coord(int i, int axis) const { return packing_->coord(ids_[i], axis); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool labelled() const { return label_a_ >= 0; }
  int label_a() const { return label_a_; }
  int label_b() const { return label_b_; }
  const AdjacencyList& adjacency() const;

  int num_members() const { return static_cast<int>(anchors_.size()); }
  int member_visits(int m) const { return member_sigma_[m]; }
  LatticePolymer member(int m) const;
  LatticePolymer representative() const;  // lex-normalised

 private:
  friend class Enumerator;
  LatticePolymer placed(std::int64_t shift) const;

  PolymerClass cls_ = PolymerClass::tree;
  const Packing* packing_ = nullptr;
  std::vector<std::int64_t> ids_;
  std::vector<std::pair<int, int>> edges_;
  int label_a_ = -1, label_b_ = -1;
  std::vector<int> anchors_;
  std::vector<int> member_sigma_;
  mutable AdjacencyList adj_;
  mutable bool adj_valid_ = false;
};

using Consumer = std::function<void(const Configuration&)>;

struct EnumerationSummary {
  EnsembleSpec spec;
  BigCount total = 0;
  VisitHistogram histogram;
  double wall_time = 0.0;
};

// Runs the search restricted to the subtrees owned by `worker` out of
// `workers`. Subtrees are cut at a fixed depth and dealt round-robin, so the
// union over workers is the whole ensemble, each configuration exactly once.
void enumerate_part(const EnsembleSpec& spec, int worker, int workers, const Consumer& consumer,
                    const Budget& budget = {});

// Serial streaming enumeration in deterministic order.
EnumerationSummary enumerate(const EnsembleSpec& spec, const Consumer& consumer = {},
                             const EnumerateOptions& opts = {});

// Parallel reduction: one accumulator per worker, merged in worker order.
template <class Acc, class Visit, class Merge>
Acc enumerate_reduce(const EnsembleSpec& spec, const EnumerateOptions& opts, Visit visit,
                     Merge merge) {
  spec.check();
  const int workers = std::max(1, opts.threads);
  std::vector<Acc> accs(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](int w) {
    try {
      enumerate_part(spec, w, workers, [&](const Configuration& c) { visit(accs[w], c); },
                     opts.budget);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc out = std::move(accs[0]);
  for (int w = 1; w < workers; ++w) merge(out, accs[w]);
  return out;
}

EnumerationSummary summarize(const EnsembleSpec& spec, const EnumerateOptions& opts = {});

struct TopologyClass {
  TopologyKey key;
  BigCount count = 0;
  VisitHistogram histogram;
};

struct TopologyTable {
  EnsembleSpec spec;
  std::vector<TopologyClass> classes;  // sorted by key
  double wall_time = 0.0;

  BigCount total() const;
  VisitHistogram marginal() const;
};

// Topology key of an enumerated configuration, by class.
TopologyKey topology_key(const Configuration& c);
TopologyKey topology_key(const LatticePolymer& p);

TopologyTable count_by_topology(const EnsembleSpec& spec, const EnumerateOptions& opts = {});
std::pair<TopologyKey, BigCount> max_topology_class(const EnsembleSpec& spec,
                                                    const EnumerateOptions& opts = {});
std::pair<TopologyKey, BigCount> max_topology_class(const TopologyTable& table);

}  // namespace polylat
