#include "polylat/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace polylat {

std::string_view to_string(TopologyKey::Kind k) {
  switch (k) {
    case TopologyKey::Kind::tree_code: return "tree-code";
    case TopologyKey::Kind::graph_code: return "graph-code";
    case TopologyKey::Kind::comb_signature: return "comb-signature";
    case TopologyKey::Kind::knot_invariant: return "knot-invariant";
  }
  return "?";
}

std::string TopologyKey::str() const {
  static const char* hex = "0123456789abcdef";
  std::string out(to_string(kind));
  out += ':';
  for (unsigned char c : payload) {
    out += hex[c >> 4];
    out += hex[c & 15];
  }
  return out;
}

TopologyKey TopologyKey::parse(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ValidationError("topology key needs 'kind:hex'");
  TopologyKey k;
  auto kind = s.substr(0, colon);
  bool found = false;
  for (auto c : {Kind::tree_code, Kind::graph_code, Kind::comb_signature, Kind::knot_invariant})
    if (to_string(c) == kind) k.kind = c, found = true;
  if (!found) throw ValidationError("unknown topology kind");
  auto hex = s.substr(colon + 1);
  if (hex.size() % 2) throw ValidationError("odd hex payload");
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ValidationError("bad hex digit");
  };
  for (std::size_t i = 0; i < hex.size(); i += 2)
    k.payload += static_cast<char>(nib(hex[i]) * 16 + nib(hex[i + 1]));
  return k;
}

// Comb signatures -----------------------------------------------------------

int CombSignature::total() const {
  return std::accumulate(n.begin(), n.end(), 0) + std::accumulate(s.begin(), s.end(), 0);
}

bool CombSignature::valid() const {
  if (b < 0 || static_cast<int>(n.size()) != b + 1 || static_cast<int>(s.size()) != b) return false;
  if (b == 0 && n[0] == 0) return true;  // the 0-step comb
  return std::all_of(n.begin(), n.end(), [](int x) { return x > 0; }) &&
         std::all_of(s.begin(), s.end(), [](int x) { return x > 0; });
}

std::string CombSignature::str() const {
  std::string out = std::to_string(b) + ';';
  for (std::size_t i = 0; i < n.size(); ++i) out += (i ? "," : "") + std::to_string(n[i]);
  out += ';';
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

CombSignature CombSignature::parse(std::string_view text) {
  auto parse_list = [](std::string_view t) {
    std::vector<int> v;
    std::size_t start = 0;
    if (t.empty()) return v;
    for (std::size_t i = 0; i <= t.size(); ++i)
      if (i == t.size() || t[i] == ',') {
        v.push_back(std::stoi(std::string(t.substr(start, i - start))));
        start = i + 1;
      }
    return v;
  };
  auto p1 = text.find(';');
  auto p2 = p1 == std::string_view::npos ? p1 : text.find(';', p1 + 1);
  if (p2 == std::string_view::npos) throw ValidationError("signature needs 'b;n..;s..'");
  CombSignature sig;
  try {
    sig.b = std::stoi(std::string(text.substr(0, p1)));
    sig.n = parse_list(text.substr(p1 + 1, p2 - p1 - 1));
    sig.s = parse_list(text.substr(p2 + 1));
  } catch (const std::logic_error&) {
    throw ValidationError("malformed comb signature");
  }
  if (!sig.valid()) throw ValidationError("invalid comb signature");
  return sig;
}

CombSignature CombSignature::reversed() const {
  CombSignature r = *this;
  std::reverse(r.n.begin(), r.n.end());
  std::reverse(r.s.begin(), r.s.end());
  return r;
}

std::vector<CombSignature> CombSignature::all(int N) {
  // Choose 2b of the N-1 interior cut points: the signature alternates
  // backbone and side-chain blocks of a composition of N into 2b+1 parts.
  std::vector<CombSignature> out;
  if (N <= 0) {
    out.push_back({0, {0}, {}});
    return out;
  }
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      if (parts.size() % 2 == 1) {
        CombSignature sig;
        sig.b = static_cast<int>(parts.size() / 2);
        for (std::size_t i = 0; i < parts.size(); ++i) (i % 2 ? sig.s : sig.n).push_back(parts[i]);
        out.push_back(sig);
      }
      return;
    }
    for (int x = 1; x <= remaining; ++x) {
      parts.push_back(x);
      rec(remaining - x);
      parts.pop_back();
    }
  };
  rec(N);
  std::sort(out.begin(), out.end());
  return out;
}

CombStructure analyze_comb(const AdjacencyList& adj, int a, int b) {
  CombStructure cs;
  if (a == b) {
    cs.backbone = {a};
    return cs;
  }
  // walk the backbone: at each step prefer the neighbour leading towards b
  std::vector<int> parent(adj.size(), -1);
  std::vector<int> order{a};
  parent[a] = a;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : adj[order[i]])
      if (parent[w] < 0) parent[w] = order[i], order.push_back(w);
  for (int v = b; v != a; v = parent[v]) cs.backbone.push_back(v);
  cs.backbone.push_back(a);
  std::reverse(cs.backbone.begin(), cs.backbone.end());

  for (std::size_t i = 1; i + 1 < cs.backbone.size(); ++i) {
    int v = cs.backbone[i];
    if (adj[v].size() != 3) continue;
    int prev = cs.backbone[i - 1], next = cs.backbone[i + 1];
    int w = -1;
    for (int x : adj[v])
      if (x != prev && x != next) w = x;
    std::vector<int> chain{v};
    int from = v;
    while (w >= 0) {
      chain.push_back(w);
      int nxt = -1;
      for (int x : adj[w])
        if (x != from) nxt = x;
      from = w;
      w = adj[from].size() == 2 ? nxt : -1;
    }
    cs.branch_pos.push_back(static_cast<int>(i));
    cs.side_chain.push_back(std::move(chain));
  }
  return cs;
}

CombStructure analyze_comb(const LatticePolymer& p) {
  if (p.polymer_class() != PolymerClass::comb && p.polymer_class() != PolymerClass::walk)
    throw ValidationError("comb structure needs a comb");
  return analyze_comb(p.adjacency(), p.labels()->first, p.labels()->second);
}

CombSignature comb_signature(const AdjacencyList& adj, int a, int b) {
  auto cs = analyze_comb(adj, a, b);
  CombSignature sig;
  sig.b = static_cast<int>(cs.branch_pos.size());
  int prev = 0;
  for (std::size_t j = 0; j < cs.branch_pos.size(); ++j) {
    sig.n.push_back(cs.branch_pos[j] - prev);
    sig.s.push_back(static_cast<int>(cs.side_chain[j].size()) - 1);
    prev = cs.branch_pos[j];
  }
  sig.n.push_back(static_cast<int>(cs.backbone.size()) - 1 - prev);
  return sig;
}

CombSignature comb_signature(const LatticePolymer& p) {
  if (p.polymer_class() != PolymerClass::comb) throw ValidationError("comb_signature needs a comb");
  return comb_signature(p.adjacency(), p.labels()->first, p.labels()->second);
}

TopologyKey signature_key(const CombSignature& sig) {
  return {TopologyKey::Kind::comb_signature, sig.str()};
}

// Trees: AHU codes rooted at the centre (or the central edge) ---------------

namespace {

std::string ahu(const AdjacencyList& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[v])
    if (w != parent) kids.push_back(ahu(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k;
  out += ')';
  return out;
}

std::vector<int> centers(const AdjacencyList& adj) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> deg(n), layer;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] <= 1) layer.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : adj[v])
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

TopologyKey tree_code(const AdjacencyList& adj) {
  auto c = centers(adj);
  std::string code;
  if (c.size() == 1) {
    code = "V" + ahu(adj, c[0], -1);
  } else {
    auto x = ahu(adj, c[0], c[1]), y = ahu(adj, c[1], c[0]);
    if (y < x) std::swap(x, y);
    code = "E" + x + y;
  }
  return {TopologyKey::Kind::tree_code, code};
}

TopologyKey tree_key(const LatticePolymer& p) {
  if (p.polymer_class() != PolymerClass::tree) throw ValidationError("tree_key needs a tree");
  return tree_code(p.adjacency());
}

// General graphs: individualisation-refinement, minimum leaf certificate ----

namespace {

using Cells = std::vector<std::vector<int>>;  // ordered partition

// Split cells by (number of neighbours in each cell) until equitable. The
// ordering of the split pieces depends only on invariant data.
void refine(const AdjacencyList& adj, Cells& cells) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> cell_of(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
    Cells next;
    for (auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      for (int v : cell) {
        std::vector<int> nb;
        for (int w : adj[v]) nb.push_back(cell_of[w]);
        std::sort(nb.begin(), nb.end());
        sig.emplace_back(std::move(nb), v);
      }
      std::stable_sort(sig.begin(), sig.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t i = 0;
      while (i < sig.size()) {
        std::size_t j = i;
        std::vector<int> piece;
        while (j < sig.size() && sig[j].first == sig[i].first) piece.push_back(sig[j++].second);
        if (piece.size() != cell.size()) changed = true;
        next.push_back(std::move(piece));
        i = j;
      }
    }
    cells = std::move(next);
  }
}

std::string certificate(const AdjacencyList& adj, const Cells& cells) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> label(n);
  for (std::size_t c = 0; c < cells.size(); ++c) label[cells[c][0]] = static_cast<int>(c);
  std::string bits(static_cast<std::size_t>(n * (n - 1) / 2), '0');
  auto slot = [n](int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) {
      int i = label[v], j = label[w];
      if (i < j) bits[slot(i, j)] = '1';
    }
  return bits;
}

void search(const AdjacencyList& adj, Cells cells, std::string& best) {
  refine(adj, cells);
  auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
  if (target == cells.end()) {
    auto cert = certificate(adj, cells);
    if (best.empty() || cert < best) best = std::move(cert);
    return;
  }
  const auto pos = target - cells.begin();
  for (int v : *target) {
    Cells child;
    child.reserve(cells.size() + 1);
    child.insert(child.end(), cells.begin(), cells.begin() + pos);
    child.push_back({v});
    std::vector<int> rest;
    for (int w : cells[pos])
      if (w != v) rest.push_back(w);
    child.push_back(std::move(rest));
    child.insert(child.end(), cells.begin() + pos + 1, cells.end());
    search(adj, std::move(child), best);
  }
}

}  // namespace

TopologyKey graph_code(const AdjacencyList& adj, int cap) {
  const int n = static_cast<int>(adj.size());
  if (n > cap) throw ValidationError("graph_code: " + std::to_string(n) + " sites exceeds cap " +
                                     std::to_string(cap));
  Cells cells{std::vector<int>(n)};
  std::iota(cells[0].begin(), cells[0].end(), 0);
  std::string best;
  if (n > 0) search(adj, cells, best);
  std::string payload(1, static_cast<char>(n));
  // pack the certificate bits into bytes
  for (std::size_t i = 0; i < best.size(); i += 8) {
    unsigned char byte = 0;
    for (std::size_t k = 0; k < 8; ++k)
      byte = static_cast<unsigned char>((byte << 1) | (i + k < best.size() && best[i + k] == '1'));
    payload += static_cast<char>(byte);
  }
  return {TopologyKey::Kind::graph_code, payload};
}

TopologyKey graph_key(const LatticePolymer& p, int cap) {
  if (p.polymer_class() != PolymerClass::animal) throw ValidationError("graph_key needs an animal");
  return graph_code(p.adjacency(), cap);
}

}  // namespace polylat
