#include "polylat/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace polylat {

LatticePoint::LatticePoint(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw ValidationError("dimension out of range");
}

LatticePoint::LatticePoint(std::initializer_list<Coord> c) : dim_(static_cast<int>(c.size())) {
  if (dim_ < 1 || dim_ > kMaxDim) throw ValidationError("dimension out of range");
  std::copy(c.begin(), c.end(), c_.begin());
}

LatticePoint::LatticePoint(const std::vector<Coord>& c) : dim_(static_cast<int>(c.size())) {
  if (dim_ < 1 || dim_ > kMaxDim) throw ValidationError("dimension out of range");
  std::copy(c.begin(), c.end(), c_.begin());
}

LatticePoint LatticePoint::unit(int dim, int axis, int sign) {
  LatticePoint p(dim);
  p.c_[axis] = sign;
  return p;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] += o.c_[i];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] -= o.c_[i];
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] = -r.c_[i];
  return r;
}

bool LatticePoint::is_origin() const {
  for (int i = 0; i < dim_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

int LatticePoint::l1_norm() const {
  int s = 0;
  for (int i = 0; i < dim_; ++i) s += std::abs(c_[i]);
  return s;
}

std::string LatticePoint::str() const {
  std::string s;
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s;
}

std::string_view to_string(PolymerClass c) {
  switch (c) {
    case PolymerClass::animal: return "animal";
    case PolymerClass::tree: return "tree";
    case PolymerClass::walk: return "walk";
    case PolymerClass::polygon: return "polygon";
    case PolymerClass::comb: return "comb";
  }
  return "?";
}

PolymerClass parse_polymer_class(std::string_view s) {
  for (auto c : {PolymerClass::animal, PolymerClass::tree, PolymerClass::walk,
                 PolymerClass::polygon, PolymerClass::comb})
    if (to_string(c) == s) return c;
  throw ValidationError("unknown polymer class '" + std::string(s) + "'");
}

std::string_view to_string(InvalidReason r) {
  switch (r) {
    case InvalidReason::none: return "ok";
    case InvalidReason::empty: return "empty";
    case InvalidReason::bad_dimension: return "bad-dimension";
    case InvalidReason::edge_not_unit: return "edge-not-unit";
    case InvalidReason::disconnected: return "disconnected";
    case InvalidReason::not_a_tree: return "not-a-tree";
    case InvalidReason::bad_labels: return "bad-labels";
    case InvalidReason::walk_degree: return "walk-degree";
    case InvalidReason::polygon_degree: return "polygon-degree";
    case InvalidReason::polygon_size: return "polygon-size";
    case InvalidReason::comb_degree: return "comb-degree";
    case InvalidReason::comb_branch_off_backbone: return "comb-branch-off-backbone";
  }
  return "?";
}

LatticePolymer LatticePolymer::make(
    PolymerClass cls, int dim, std::vector<LatticePoint> sites,
    const std::vector<std::pair<LatticePoint, LatticePoint>>& edges,
    std::optional<std::pair<LatticePoint, LatticePoint>> labels) {
  LatticePolymer p;
  p.cls_ = cls;
  p.dim_ = dim;
  for (const auto& s : sites)
    if (s.dim() != dim) throw ValidationError("site dimension mismatch");
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw ValidationError("duplicate site");
  p.sites_ = std::move(sites);
  p.edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    int i = p.index_of(a), j = p.index_of(b);
    if (i < 0 || j < 0) throw ValidationError("edge endpoint is not a site");
    if (i == j) throw ValidationError("loop edge");
    p.edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(p.edges_.begin(), p.edges_.end());
  if (std::adjacent_find(p.edges_.begin(), p.edges_.end()) != p.edges_.end())
    throw ValidationError("duplicate edge");
  if (labels) {
    int a = p.index_of(labels->first), b = p.index_of(labels->second);
    if (a < 0 || b < 0) throw ValidationError("label is not a site");
    p.labels_ = std::make_pair(a, b);
  }
  return p;
}

int LatticePolymer::index_of(const LatticePoint& q) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), q);
  if (it == sites_.end() || !(*it == q)) return -1;
  return static_cast<int>(it - sites_.begin());
}

std::vector<std::vector<int>> LatticePolymer::adjacency() const {
  std::vector<std::vector<int>> adj(sites_.size());
  for (auto [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<int> LatticePolymer::degrees() const {
  std::vector<int> deg(sites_.size(), 0);
  for (auto [a, b] : edges_) ++deg[a], ++deg[b];
  return deg;
}

LatticePolymer LatticePolymer::translated(const LatticePoint& v) const {
  LatticePolymer r = *this;
  for (auto& s : r.sites_) s = s + v;  // order and indices are preserved
  return r;
}

LatticePolymer LatticePolymer::with_class(PolymerClass c) const {
  LatticePolymer r = *this;
  r.cls_ = c;
  return r;
}

std::vector<std::pair<LatticePoint, LatticePoint>> LatticePolymer::edge_points() const {
  std::vector<std::pair<LatticePoint, LatticePoint>> out;
  out.reserve(edges_.size());
  for (auto [a, b] : edges_) out.emplace_back(sites_[a], sites_[b]);
  return out;
}

std::optional<std::pair<LatticePoint, LatticePoint>> LatticePolymer::label_points() const {
  if (!labels_) return std::nullopt;
  return std::make_pair(sites_[labels_->first], sites_[labels_->second]);
}

int LatticePolymer::size_index() const {
  if (cls_ == PolymerClass::animal || cls_ == PolymerClass::tree)
    return static_cast<int>(sites_.size());
  return static_cast<int>(edges_.size());
}

namespace {

bool connected(const LatticePolymer& p) {
  if (p.sites().empty()) return false;
  auto adj = p.adjacency();
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == adj.size();
}

// Sites of the rho_A -> rho_B path in a tree, in order.
std::vector<int> tree_path(const std::vector<std::vector<int>>& adj, int from, int to) {
  std::vector<int> parent(adj.size(), -1);
  std::deque<int> q{from};
  parent[from] = from;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (parent[w] < 0) {
        parent[w] = v;
        q.push_back(w);
      }
  }
  std::vector<int> path;
  for (int v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Validation validate(const LatticePolymer& p) {
  auto fail = [](InvalidReason r) { return Validation{false, r}; };
  if (p.sites().empty()) return fail(InvalidReason::empty);
  if (p.dim() < 2 || p.dim() > kMaxDim) return fail(InvalidReason::bad_dimension);
  for (auto [a, b] : p.edges())
    if (!p.sites()[a].adjacent(p.sites()[b])) return fail(InvalidReason::edge_not_unit);
  if (!connected(p)) return fail(InvalidReason::disconnected);

  const auto cls = p.polymer_class();
  const auto deg = p.degrees();
  const bool is_tree = p.num_edges() + 1 == p.num_sites();  // connected + |E|=|V|-1

  if (has_labels(cls) != p.labels().has_value()) return fail(InvalidReason::bad_labels);

  switch (cls) {
    case PolymerClass::animal:
      return {true, InvalidReason::none};
    case PolymerClass::tree:
      return is_tree ? Validation{true, InvalidReason::none} : fail(InvalidReason::not_a_tree);
    case PolymerClass::polygon: {
      for (int x : deg)
        if (x != 2) return fail(InvalidReason::polygon_degree);
      if (p.num_edges() < 4 || p.num_edges() % 2) return fail(InvalidReason::polygon_size);
      return {true, InvalidReason::none};
    }
    case PolymerClass::walk:
    case PolymerClass::comb: {
      if (!is_tree) return fail(InvalidReason::not_a_tree);
      auto [a, b] = *p.labels();
      if (p.num_sites() == 1) {
        // the 0-step object: a single site carrying both labels
        return a == b ? Validation{true, InvalidReason::none} : fail(InvalidReason::bad_labels);
      }
      if (a == b || deg[a] != 1 || deg[b] != 1) return fail(InvalidReason::bad_labels);
      if (cls == PolymerClass::walk) {
        for (int x : deg)
          if (x > 2) return fail(InvalidReason::walk_degree);
        return {true, InvalidReason::none};
      }
      for (int x : deg)
        if (x > 3) return fail(InvalidReason::comb_degree);
      auto path = tree_path(p.adjacency(), a, b);
      std::vector<char> on_path(p.num_sites(), 0);
      for (int v : path) on_path[v] = 1;
      for (std::size_t v = 0; v < deg.size(); ++v)
        if (deg[v] == 3 && !on_path[v]) return fail(InvalidReason::comb_branch_off_backbone);
      return {true, InvalidReason::none};
    }
  }
  return fail(InvalidReason::bad_dimension);
}

int visits(const LatticePolymer& p) {
  return static_cast<int>(std::count_if(p.sites().begin(), p.sites().end(),
                                        [](const LatticePoint& s) { return s[0] == 0; }));
}

bool in_halfspace(const LatticePolymer& p) {
  return std::all_of(p.sites().begin(), p.sites().end(), surface::in_halfspace);
}

LatticePoint lex_min_site(const LatticePolymer& p) {
  if (p.sites().empty()) throw ValidationError("empty polymer");
  return p.sites().front();
}

LatticePolymer lex_normalize(const LatticePolymer& p) {
  return p.translated(-lex_min_site(p));
}

std::vector<int> spans(const LatticePolymer& p) {
  std::vector<int> out(p.dim(), 1);
  if (p.sites().empty()) return out;
  for (int j = 0; j < p.dim(); ++j) {
    Coord lo = p.sites()[0][j], hi = lo;
    for (const auto& s : p.sites()) {
      lo = std::min(lo, s[j]);
      hi = std::max(hi, s[j]);
    }
    out[j] = 1 + hi - lo;
  }
  return out;
}

int longest_path(const LatticePolymer& p) {
  if (p.polymer_class() == PolymerClass::polygon || p.num_edges() + 1 != p.num_sites())
    throw ValidationError("longest_path needs an acyclic polymer");
  auto adj = p.adjacency();
  auto bfs = [&](int src) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> q{src};
    dist[src] = 0;
    int far = src;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (dist[v] > dist[far]) far = v;
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
    }
    return std::make_pair(far, dist[far]);
  };
  return bfs(bfs(0).first).second;
}

// Text form ----------------------------------------------------------------

std::string to_text(const LatticePolymer& p) {
  std::ostringstream os;
  os << to_string(p.polymer_class()) << ' ' << p.dim() << ';';
  for (const auto& s : p.sites()) os << ' ' << s.str();
  os << ';';
  for (auto [a, b] : p.edges()) os << ' ' << a << '-' << b;
  os << ';';
  if (p.labels())
    os << ' ' << p.labels()->first << ' ' << p.labels()->second;
  else
    os << " -";
  return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_int(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

LatticePolymer from_text(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  auto parts = split(line, ';');
  if (parts.size() != 4) throw ValidationError("polymer line needs 4 ';'-separated fields");
  auto head = tokens(parts[0]);
  if (head.size() != 2) throw ValidationError("header must be 'class d'");
  auto cls = parse_polymer_class(head[0]);
  int dim = static_cast<int>(parse_int(head[1]));
  if (dim < 2 || dim > kMaxDim) throw ValidationError("dimension out of range");

  std::vector<LatticePoint> sites;
  for (auto tok : tokens(parts[1])) {
    auto cs = split(tok, ',');
    if (static_cast<int>(cs.size()) != dim) throw ValidationError("site has wrong dimension");
    std::vector<Coord> c;
    for (auto x : cs) c.push_back(static_cast<Coord>(parse_int(x)));
    sites.emplace_back(c);
  }
  // indices refer to the order written, which is lexicographic for canonical text
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  auto site_at = [&](long i) {
    if (i < 0 || i >= static_cast<long>(sites.size())) throw ValidationError("site index out of range");
    return sites[i];
  };
  for (auto tok : tokens(parts[2])) {
    auto ab = split(tok, '-');
    if (ab.size() != 2) throw ValidationError("edge must be 'i-j'");
    edges.emplace_back(site_at(parse_int(ab[0])), site_at(parse_int(ab[1])));
  }
  std::optional<std::pair<LatticePoint, LatticePoint>> labels;
  auto lab = tokens(parts[3]);
  if (lab.size() == 2) {
    labels = std::make_pair(site_at(parse_int(lab[0])), site_at(parse_int(lab[1])));
  } else if (!(lab.size() == 1 && lab[0] == "-")) {
    throw ValidationError("labels must be 'i j' or '-'");
  }
  return LatticePolymer::make(cls, dim, std::move(sites), edges, labels);
}

}  // namespace polylat
