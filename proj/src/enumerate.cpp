#include "polylat/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "polylat/knot.hpp"

namespace polylat {

std::string_view to_string(Boundary b) {
  return b == Boundary::penetrable ? "penetrable" : "impenetrable";
}

std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::translation_classes: return "translation-classes";
    case Convention::contains_origin: return "contains-origin";
    case Convention::from_origin: return "from-origin";
  }
  return "?";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "penetrable") return Boundary::penetrable;
  if (s == "impenetrable") return Boundary::impenetrable;
  throw ValidationError("unknown boundary '" + std::string(s) + "'");
}

Convention parse_convention(std::string_view s) {
  for (auto c : {Convention::translation_classes, Convention::contains_origin, Convention::from_origin})
    if (to_string(c) == s) return c;
  throw ValidationError("unknown convention '" + std::string(s) + "'");
}

void EnsembleSpec::check() const {
  if (dim < 2 || dim > kMaxDim)
    throw ValidationError("dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  if (size < 0) throw ValidationError("size must be nonnegative");
  if (convention == Convention::from_origin && cls != PolymerClass::walk)
    throw ValidationError("from-origin convention is only defined for walks");
}

std::string EnsembleSpec::str() const {
  std::ostringstream os;
  os << to_string(cls) << " d=" << dim << " N=" << size << ' ' << to_string(boundary) << ' '
     << to_string(convention);
  return os.str();
}

int default_max_size(PolymerClass cls, int dim) {
  const bool d2 = dim == 2, d3 = dim == 3;
  switch (cls) {
    case PolymerClass::tree: return d2 ? 13 : d3 ? 10 : 7;
    case PolymerClass::animal: return d2 ? 11 : d3 ? 8 : 6;
    case PolymerClass::walk: return d2 ? 18 : d3 ? 13 : 9;
    case PolymerClass::polygon: return d2 ? 26 : d3 ? 16 : 10;
    case PolymerClass::comb: return d2 ? 14 : d3 ? 11 : 8;
  }
  return 0;
}

double estimated_count(const EnsembleSpec& spec) {
  // crude growth rates per class, scaled with the coordination number
  const double z = 2.0 * spec.dim;
  double lambda = 0;
  switch (spec.cls) {
    case PolymerClass::walk:
    case PolymerClass::polygon: lambda = z - 1.0 - 1.0 / z; break;
    case PolymerClass::comb: lambda = z - 0.6; break;
    case PolymerClass::tree: lambda = 0.95 * z; break;
    case PolymerClass::animal: lambda = 1.3 * z; break;
  }
  return std::pow(lambda, spec.size);
}

// Packing -------------------------------------------------------------------

Packing::Packing(int d, int radius) : dim(d), offset(radius), width(2 * radius + 1), stride(d) {
  std::int64_t s = 1;
  for (int i = d - 1; i >= 0; --i) {
    stride[i] = s;
    s *= width;
  }
}

std::int64_t Packing::origin() const {
  std::int64_t id = 0;
  for (int i = 0; i < dim; ++i) id += offset * stride[i];
  return id;
}

std::int64_t Packing::encode(const LatticePoint& p) const {
  std::int64_t id = 0;
  for (int i = 0; i < dim; ++i) id += (p[i] + offset) * stride[i];
  return id;
}

LatticePoint Packing::decode(std::int64_t id) const {
  LatticePoint p(dim);
  for (int i = 0; i < dim; ++i) p[i] = coord(id, i);
  return p;
}

// Configuration -------------------------------------------------------------

const AdjacencyList& Configuration::adjacency() const {
  if (!adj_valid_) {
    adj_.resize(ids_.size());
    for (auto& v : adj_) v.clear();
    for (auto [a, b] : edges_) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    adj_valid_ = true;
  }
  return adj_;
}

LatticePolymer Configuration::placed(std::int64_t anchor) const {
  const Packing& pk = *packing_;
  std::vector<LatticePoint> pts;
  pts.reserve(ids_.size());
  LatticePoint a = pk.decode(anchor);
  for (auto id : ids_) pts.push_back(pk.decode(id) - a);
  std::vector<std::pair<LatticePoint, LatticePoint>> es;
  es.reserve(edges_.size());
  for (auto [i, j] : edges_) es.emplace_back(pts[i], pts[j]);
  std::optional<std::pair<LatticePoint, LatticePoint>> labels;
  if (label_a_ >= 0) labels = std::make_pair(pts[label_a_], pts[label_b_]);
  return LatticePolymer::make(cls_, pk.dim, pts, es, labels);
}

LatticePolymer Configuration::member(int m) const { return placed(ids_[anchors_[m]]); }

LatticePolymer Configuration::representative() const {
  return placed(*std::min_element(ids_.begin(), ids_.end()));
}

// Search engine -------------------------------------------------------------

class Enumerator {
 public:
  Enumerator(const EnsembleSpec& spec, int worker, int workers, const Consumer& consumer,
             const Budget& budget)
      : spec_(spec), n_(spec.size), d_(spec.dim), worker_(worker), workers_(workers),
        consumer_(consumer), node_cap_(budget.node_cap) {
    const int cap = budget.max_size >= 0 ? budget.max_size : default_max_size(spec.cls, spec.dim);
    if (spec.size > cap)
      throw BudgetExceeded(spec.str() + " exceeds the size budget " + std::to_string(cap) +
                               " (raise --max-size to override)",
                           estimated_count(spec));
    pk_ = Packing(d_, 2 * n_ + 3);
    const double cells = std::pow(static_cast<double>(pk_.width), d_);
    if (cells * d_ > static_cast<double>(1 << 28))
      throw BudgetExceeded("lattice box too large for " + spec.str(), estimated_count(spec));
    idx_.assign(static_cast<std::size_t>(pk_.cells()), -1);
    layer_.assign(pk_.width, 0);
    cfg_.cls_ = spec.cls;
    cfg_.packing_ = &pk_;
    origin_ = pk_.origin();
  }

  void run() {
    switch (spec_.cls) {
      case PolymerClass::tree:
      case PolymerClass::animal: run_animals(); break;
      case PolymerClass::walk: run_walks(); break;
      case PolymerClass::polygon: run_polygons(); break;
      case PolymerClass::comb: run_combs(); break;
    }
  }

 private:
  static constexpr int kSplitDepth = 3;

  // --- bookkeeping -------------------------------------------------------
  void add_site(std::int64_t id) {
    idx_[id] = static_cast<int>(cfg_.ids_.size());
    cfg_.ids_.push_back(id);
  }
  void pop_site() {
    idx_[cfg_.ids_.back()] = -1;
    cfg_.ids_.pop_back();
  }
  void add_edge(std::int64_t a, std::int64_t b) { cfg_.edges_.emplace_back(idx_[a], idx_[b]); }
  void pop_edge() { cfg_.edges_.pop_back(); }

  // Called on entering a node at the given depth; false prunes the subtree.
  bool enter(int depth) {
    if (node_cap_ && ++nodes_ > node_cap_)
      throw BudgetExceeded(spec_.str() + " exceeded the node budget", estimated_count(spec_));
    if (workers_ == 1 || depth != kSplitDepth) return true;
    return static_cast<int>(gate_counter_++ % workers_) == worker_;
  }
  bool owns(int depth) const { return workers_ == 1 || depth >= kSplitDepth || worker_ == 0; }

  void emit(int depth) {
    if (!owns(depth)) return;
    auto& ids = cfg_.ids_;
    int min_layer = pk_.width;
    for (auto id : ids) {
      int l = static_cast<int>(id / pk_.stride[0]);
      ++layer_[l];
      min_layer = std::min(min_layer, l);
    }
    cfg_.anchors_.clear();
    cfg_.member_sigma_.clear();
    auto add_anchor = [&](int i) {
      cfg_.anchors_.push_back(i);
      cfg_.member_sigma_.push_back(layer_[ids[i] / pk_.stride[0]]);
    };
    const bool pen = spec_.boundary == Boundary::penetrable;
    switch (spec_.convention) {
      case Convention::translation_classes:
        add_anchor(static_cast<int>(std::min_element(ids.begin(), ids.end()) - ids.begin()));
        break;
      case Convention::contains_origin:
        for (int i = 0; i < static_cast<int>(ids.size()); ++i)
          if (pen || ids[i] / pk_.stride[0] == min_layer) add_anchor(i);
        break;
      case Convention::from_origin:
        if (pen || ids[cfg_.label_a_] / pk_.stride[0] == min_layer) add_anchor(cfg_.label_a_);
        break;
    }
    for (auto id : ids) layer_[id / pk_.stride[0]] = 0;
    cfg_.adj_valid_ = false;
    if (!cfg_.anchors_.empty()) consumer_(cfg_);
  }

  // --- animals and trees: Redelmeier's method on edges --------------------
  // Edge id = lower endpoint * d + axis; its order matches the lexicographic
  // order of lower endpoints, so rooting at the minimal edge at the origin
  // enumerates each lex-normalised animal exactly once.
  void run_animals() {
    if (n_ <= 0) return;
    if (n_ == 1) {
      add_site(origin_);
      emit(0);
      pop_site();
      return;
    }
    ref_.assign(static_cast<std::size_t>(pk_.cells()), 0);
    marked_.assign(static_cast<std::size_t>(pk_.cells() * d_), 0);
    for (int a = 0; a < d_; ++a) {
      root_ = origin_ * d_ + a;
      untried_.assign(1, root_);
      marked_[root_] = 1;
      redelmeier(0);
      marked_[root_] = 0;
    }
  }

  void push_neighbours(std::int64_t site, bool saturated) {
    for (int b = 0; b < d_; ++b) {
      const std::int64_t up = site * d_ + b;
      const std::int64_t down = (site - pk_.stride[b]) * d_ + b;
      for (auto [e, other] : {std::pair{up, site + pk_.stride[b]}, std::pair{down, site - pk_.stride[b]}}) {
        if (e <= root_ || marked_[e]) continue;
        if (saturated && ref_[other] == 0) continue;  // could never be included below
        marked_[e] = 1;
        untried_.push_back(e);
      }
    }
  }

  void redelmeier(std::size_t lo) {
    const std::size_t hi = untried_.size();
    const bool tree = spec_.cls == PolymerClass::tree;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::int64_t e = untried_[i];
      const std::int64_t s0 = e / d_, s1 = s0 + pk_.stride[e % d_];
      const int fresh = (ref_[s0] == 0) + (ref_[s1] == 0);
      if (tree && fresh == 0) continue;
      const int sites = static_cast<int>(cfg_.ids_.size()) + fresh;
      if (sites > n_) continue;
      if (ref_[s0]++ == 0) add_site(s0);
      if (ref_[s1]++ == 0) add_site(s1);
      add_edge(s0, s1);
      const int depth = static_cast<int>(cfg_.edges_.size());
      if (enter(depth)) {
        if (sites == n_) emit(depth);
        if (!(tree && sites == n_)) {
          const std::size_t mark = untried_.size();
          push_neighbours(s0, sites == n_);
          push_neighbours(s1, sites == n_);
          redelmeier(i + 1);
          for (std::size_t k = mark; k < untried_.size(); ++k) marked_[untried_[k]] = 0;
          untried_.resize(mark);
        }
      }
      pop_edge();
      if (--ref_[s1] == 0) pop_site();
      if (--ref_[s0] == 0) pop_site();
    }
  }

  // --- walks ---------------------------------------------------------------
  void run_walks() {
    add_site(origin_);
    cfg_.label_a_ = 0;
    walk(origin_, 0);
    pop_site();
  }

  void walk(std::int64_t tip, int steps) {
    if (steps == n_) {
      cfg_.label_b_ = idx_[tip];
      emit(steps);
      return;
    }
    for (int a = 0; a < d_; ++a)
      for (int sgn : {1, -1}) {
        const std::int64_t q = tip + sgn * pk_.stride[a];
        if (idx_[q] >= 0) continue;
        add_site(q);
        add_edge(tip, q);
        if (enter(steps + 1)) walk(q, steps + 1);
        pop_edge();
        pop_site();
      }
  }

  // --- polygons: closed walks from the lex-min site -------------------------
  void run_polygons() {
    if (n_ < 4 || n_ % 2) return;
    dist_.assign(static_cast<std::size_t>(pk_.cells()), 0);
    for (std::int64_t id = 0; id < pk_.cells(); ++id) {
      int s = 0;
      for (int a = 0; a < d_; ++a) s += std::abs(pk_.coord(id, a));
      dist_[id] = static_cast<std::uint16_t>(std::min(s, 65535));
    }
    add_site(origin_);
    for (int a = 0; a < d_; ++a) {
      const std::int64_t q = origin_ + pk_.stride[a];
      add_site(q);
      add_edge(origin_, q);
      first_ = q;
      if (enter(1)) polygon(q, 1);
      pop_edge();
      pop_site();
    }
    pop_site();
  }

  void polygon(std::int64_t tip, int steps) {
    if (steps == n_ - 1) {
      // close up; the two origin neighbours are ordered to fix orientation
      if (dist_[tip] == 1 && tip > first_) {
        add_edge(tip, origin_);
        emit(n_);
        pop_edge();
      }
      return;
    }
    for (int a = 0; a < d_; ++a)
      for (int sgn : {1, -1}) {
        const std::int64_t q = tip + sgn * pk_.stride[a];
        if (q <= origin_ || idx_[q] >= 0) continue;
        if (dist_[q] > n_ - steps - 1) continue;
        add_site(q);
        add_edge(tip, q);
        if (enter(steps + 1)) polygon(q, steps + 1);
        pop_edge();
        pop_site();
      }
  }

  // --- combs: backbone walk with side chains grown in place ---------------
  void run_combs() {
    add_site(origin_);
    cfg_.label_a_ = 0;
    backbone(origin_, 0, n_, 0);
    pop_site();
  }

  void backbone(std::int64_t tip, int seg, int rem, int depth) {
    if (rem == 0) {
      if (seg >= 1 || n_ == 0) {
        cfg_.label_b_ = idx_[tip];
        emit(depth);
      }
      return;
    }
    if (seg >= 1 && rem >= 2) side(tip, tip, rem, depth);
    for (int a = 0; a < d_; ++a)
      for (int sgn : {1, -1}) {
        const std::int64_t q = tip + sgn * pk_.stride[a];
        if (idx_[q] >= 0) continue;
        add_site(q);
        add_edge(tip, q);
        if (enter(depth + 1)) backbone(q, seg + 1, rem - 1, depth + 1);
        pop_edge();
        pop_site();
      }
  }

  void side(std::int64_t attach, std::int64_t cur, int rem, int depth) {
    for (int a = 0; a < d_; ++a)
      for (int sgn : {1, -1}) {
        const std::int64_t q = cur + sgn * pk_.stride[a];
        if (idx_[q] >= 0) continue;
        add_site(q);
        add_edge(cur, q);
        if (enter(depth + 1)) {
          backbone(attach, 0, rem - 1, depth + 1);  // chain ends at q
          if (rem - 1 >= 2) side(attach, q, rem - 1, depth + 1);
        }
        pop_edge();
        pop_site();
      }
  }

  const EnsembleSpec& spec_;
  const int n_, d_;
  const int worker_, workers_;
  const Consumer& consumer_;
  const std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0, gate_counter_ = 0;

  Packing pk_;
  std::int64_t origin_ = 0;
  std::vector<int> idx_;    // site id -> index in the configuration, -1 if absent
  std::vector<int> layer_;  // scratch: sites per x_1 layer
  Configuration cfg_;

  // Redelmeier state
  std::vector<std::uint8_t> ref_;
  std::vector<std::uint8_t> marked_;
  std::vector<std::int64_t> untried_;
  std::int64_t root_ = 0;

  // polygon state
  std::vector<std::uint16_t> dist_;
  std::int64_t first_ = 0;
};

void enumerate_part(const EnsembleSpec& spec, int worker, int workers, const Consumer& consumer,
                    const Budget& budget) {
  spec.check();
  Enumerator e(spec, worker, workers, consumer, budget);
  e.run();
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct HistAcc {
  std::vector<std::uint64_t> hist;
  void add(int k, std::uint64_t n = 1) {
    if (static_cast<int>(hist.size()) <= k) hist.resize(k + 1, 0);
    hist[k] += n;
  }
  void merge(const HistAcc& o) {
    for (std::size_t k = 0; k < o.hist.size(); ++k) add(static_cast<int>(k), o.hist[k]);
  }
  VisitHistogram to_histogram() const {
    VisitHistogram h;
    for (std::size_t k = 0; k < hist.size(); ++k)
      if (hist[k]) h[static_cast<int>(k)] = hist[k];
    return h;
  }
};

BigCount sum(const VisitHistogram& h) {
  BigCount t = 0;
  for (const auto& [k, v] : h) t += v;
  return t;
}

}  // namespace

EnumerationSummary enumerate(const EnsembleSpec& spec, const Consumer& consumer,
                             const EnumerateOptions& opts) {
  spec.check();
  const auto t0 = std::chrono::steady_clock::now();
  HistAcc acc;
  enumerate_part(spec, 0, 1, [&](const Configuration& c) {
    for (int m = 0; m < c.num_members(); ++m) acc.add(c.member_visits(m));
    if (consumer) consumer(c);
  }, opts.budget);
  EnumerationSummary s{spec, 0, acc.to_histogram(), seconds_since(t0)};
  s.total = sum(s.histogram);
  return s;
}

EnumerationSummary summarize(const EnsembleSpec& spec, const EnumerateOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  auto acc = enumerate_reduce<HistAcc>(
      spec, opts,
      [](HistAcc& a, const Configuration& c) {
        for (int m = 0; m < c.num_members(); ++m) a.add(c.member_visits(m));
      },
      [](HistAcc& a, const HistAcc& b) { a.merge(b); });
  EnumerationSummary s{spec, 0, acc.to_histogram(), seconds_since(t0)};
  s.total = sum(s.histogram);
  return s;
}

// Topology ------------------------------------------------------------------

namespace {
constexpr int kMinKnottedPolygon = 24;  // fewer edges: every lattice polygon is unknotted

TopologyKey polygon_key(const LatticePolymer& p) {
  if (p.dim() == 3 && static_cast<int>(p.num_edges()) >= kMinKnottedPolygon)
    return knot_invariant(p).key();
  return unknot_invariant().key();
}
}  // namespace

TopologyKey topology_key(const Configuration& c) {
  switch (c.polymer_class()) {
    case PolymerClass::tree:
    case PolymerClass::walk: return tree_code(c.adjacency());
    case PolymerClass::animal: return graph_code(c.adjacency());
    case PolymerClass::comb: return signature_key(comb_signature(c.adjacency(), c.label_a(), c.label_b()));
    case PolymerClass::polygon: return polygon_key(c.representative());
  }
  throw InternalError("unknown class");
}

TopologyKey topology_key(const LatticePolymer& p) {
  switch (p.polymer_class()) {
    case PolymerClass::tree:
    case PolymerClass::walk: return tree_code(p.adjacency());
    case PolymerClass::animal: return graph_key(p);
    case PolymerClass::comb: return signature_key(comb_signature(p));
    case PolymerClass::polygon: return polygon_key(p);
  }
  throw InternalError("unknown class");
}

BigCount TopologyTable::total() const {
  BigCount t = 0;
  for (const auto& c : classes) t += c.count;
  return t;
}

VisitHistogram TopologyTable::marginal() const {
  VisitHistogram h;
  for (const auto& c : classes)
    for (const auto& [k, v] : c.histogram) h[k] += v;
  return h;
}

TopologyTable count_by_topology(const EnsembleSpec& spec, const EnumerateOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  using Acc = std::map<TopologyKey, HistAcc>;
  auto acc = enumerate_reduce<Acc>(
      spec, opts,
      [](Acc& a, const Configuration& c) {
        auto& h = a[topology_key(c)];
        for (int m = 0; m < c.num_members(); ++m) h.add(c.member_visits(m));
      },
      [](Acc& a, const Acc& b) {
        for (const auto& [k, h] : b) a[k].merge(h);
      });
  TopologyTable t{spec, {}, 0.0};
  for (const auto& [k, h] : acc) {
    TopologyClass cls{k, 0, h.to_histogram()};
    cls.count = sum(cls.histogram);
    t.classes.push_back(std::move(cls));
  }
  t.wall_time = seconds_since(t0);
  return t;
}

std::pair<TopologyKey, BigCount> max_topology_class(const TopologyTable& table) {
  if (table.classes.empty()) throw ValidationError("empty ensemble has no topology classes");
  const TopologyClass* best = &table.classes.front();
  for (const auto& c : table.classes)
    if (c.count > best->count) best = &c;  // first maximum in key order wins ties
  return {best->key, best->count};
}

std::pair<TopologyKey, BigCount> max_topology_class(const EnsembleSpec& spec,
                                                    const EnumerateOptions& opts) {
  if (spec.convention != Convention::contains_origin || spec.boundary != Boundary::penetrable)
    throw ValidationError("max_topology_class is defined on the contains-origin penetrable ensemble");
  return max_topology_class(count_by_topology(spec, opts));
}

}  // namespace polylat
