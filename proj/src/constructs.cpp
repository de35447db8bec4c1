#include "polylat/constructs.hpp"

#include <algorithm>
#include <numeric>

namespace polylat {

const std::vector<LatticePoint>& phi30_cycle() {
  // Read off the figure; anchors A=(0,0,0), H=(1,0,0), B=(0,0,3), C=(0,0,4),
  // D=(1,0,4), E=(1,0,3), F=(3,1,0), G=(3,1,1).
  static const std::vector<LatticePoint> cyc = {
      {0, 0, 0},  {1, 0, 0},  {2, 0, 0},  {2, -1, 0}, {2, -1, 1}, {2, -1, 2}, {1, -1, 2}, {1, 0, 2},
      {1, 1, 2},  {2, 1, 2},  {3, 1, 2},  {3, 1, 1},  {3, 1, 0},  {3, 0, 0},  {3, -1, 0}, {3, -2, 0},
      {2, -2, 0}, {1, -2, 0}, {1, -1, 0}, {1, -1, 1}, {1, 0, 1},  {2, 0, 1},  {2, 0, 2},  {2, 0, 3},
      {1, 0, 3},  {1, 0, 4},  {0, 0, 4},  {0, 0, 3},  {0, 0, 2},  {0, 0, 1},
  };
  return cyc;
}

LatticePolymer polygon_from_cycle(const std::vector<LatticePoint>& cycle) {
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) edges.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
  return LatticePolymer::make(PolymerClass::polygon, cycle.front().dim(), cycle, edges);
}

LatticePolymer build_phi30() { return polygon_from_cycle(phi30_cycle()); }

LatticePolymer build_phi_chain(int t) {
  if (t < 1) throw ValidationError("phi_chain needs t >= 1");
  // Stack translates phi + 4j e3 and splice consecutive copies by dropping the
  // shared edge (0,0,4j)-(1,0,4j); then cut the top cap B-C-D-E down to B-E.
  const auto& base = phi30_cycle();
  const LatticePoint up{0, 0, 4};
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  auto is_seam = [&](const LatticePoint& a, const LatticePoint& b, int j) {
    LatticePoint p{0, 0, 4 * j}, q{1, 0, 4 * j};
    return (a == p && b == q) || (a == q && b == p);
  };
  for (int j = 0; j < t; ++j) {
    LatticePoint shift{0, 0, 4 * j};
    for (std::size_t i = 0; i < base.size(); ++i) {
      auto a = base[i] + shift, b = base[(i + 1) % base.size()] + shift;
      if ((j > 0 && is_seam(a, b, j)) || (j + 1 < t && is_seam(a, b, j + 1))) continue;
      edges.emplace_back(a, b);
    }
  }
  const LatticePoint top_c{0, 0, 4 * t}, top_d{1, 0, 4 * t};
  std::erase_if(edges, [&](const auto& e) {
    return e.first == top_c || e.second == top_c || e.first == top_d || e.second == top_d;
  });
  edges.emplace_back(LatticePoint{0, 0, 4 * t - 1}, LatticePoint{1, 0, 4 * t - 1});
  std::vector<LatticePoint> sites;
  for (const auto& [a, b] : edges) sites.push_back(a), sites.push_back(b);
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return LatticePolymer::make(PolymerClass::polygon, 3, sites, edges);
}

LatticePolymer straight_comb_witness(const CombSignature& sig, int d) {
  if (!sig.valid()) throw ValidationError("invalid comb signature");
  if (d < 2 || d > kMaxDim) throw ValidationError("dimension out of range");
  // backbone along +x_2; side chains along +x_3 (d >= 3) or +x_1 (d = 2)
  const int chain_axis = d >= 3 ? 2 : 0;
  std::vector<LatticePoint> sites;
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  LatticePoint cur(d);
  sites.push_back(cur);
  auto step = [&](LatticePoint from, int axis) {
    LatticePoint to = from + LatticePoint::unit(d, axis);
    sites.push_back(to);
    edges.emplace_back(from, to);
    return to;
  };
  for (int i = 0; i <= sig.b; ++i) {
    for (int k = 0; k < sig.n[i]; ++k) cur = step(cur, 1);
    if (i < sig.b) {
      LatticePoint c = cur;
      for (int k = 0; k < sig.s[i]; ++k) c = step(c, chain_axis);
    }
  }
  return LatticePolymer::make(PolymerClass::comb, d, sites, edges,
                              std::make_pair(LatticePoint(d), cur));
}

// comb_plus_map -------------------------------------------------------------

namespace {

struct Editable {
  std::vector<LatticePoint> sites;
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  LatticePoint a, b;

  explicit Editable(const LatticePolymer& p) : sites(p.sites()), edges(p.edge_points()) {
    std::tie(a, b) = *p.label_points();
  }
  void drop_edge(const LatticePoint& x, const LatticePoint& y) {
    std::erase_if(edges, [&](const auto& e) {
      return (e.first == x && e.second == y) || (e.first == y && e.second == x);
    });
  }
  LatticePolymer build(int d) const {
    return LatticePolymer::make(PolymerClass::comb, d, sites, edges, std::make_pair(a, b));
  }
};

void require_plus_comb(const LatticePolymer& c) {
  if (c.polymer_class() != PolymerClass::comb || !validate(c))
    throw ValidationError("comb_plus_map needs a valid comb");
  if (!c.contains(LatticePoint(c.dim())) || !in_halfspace(c))
    throw ValidationError("comb_plus_map needs origin in comb inside the halfspace");
  if (c.num_edges() == 0) throw ValidationError("comb_plus_map needs at least one edge");
}

}  // namespace

LatticePolymer comb_plus_map(const LatticePolymer& comb) {
  require_plus_comb(comb);
  const int d = comb.dim();
  const LatticePoint o(d), back = LatticePoint::unit(d, 0, -1);
  const int oi = comb.index_of(o);
  const auto adj = comb.adjacency();
  Editable e(comb);
  if (adj[oi].size() == 1) {
    // append the 2-step walk 0 -> -e1 -> -2e1; a label at 0 moves to its end
    const LatticePoint p1 = back, p2 = back + back;
    e.sites.push_back(p1);
    e.sites.push_back(p2);
    e.edges.emplace_back(o, p1);
    e.edges.emplace_back(p1, p2);
    if (e.a == o) e.a = p2;
    if (e.b == o) e.b = p2;
  } else {
    // splice v -> v-e1 -> -e1 -> 0 in place of the surface edge v-0
    int vi = -1;
    for (int w : adj[oi])
      if (comb.sites()[w][0] == 0 && (vi < 0 || w < vi)) vi = w;
    if (vi < 0) throw InternalError("no surface neighbour at the origin");
    const LatticePoint v = comb.sites()[vi];
    e.drop_edge(v, o);
    e.sites.push_back(v + back);
    e.sites.push_back(back);
    e.edges.emplace_back(v, v + back);
    e.edges.emplace_back(v + back, back);
    e.edges.emplace_back(back, o);
  }
  return lex_normalize(e.build(d));
}

std::vector<LatticePolymer> comb_plus_preimages(const LatticePolymer& image) {
  // Undo the map: one surface site means the appended tail, two mean a splice
  // where either surface site may have been -e1.
  std::vector<LatticePolymer> out;
  if (image.polymer_class() != PolymerClass::comb || !validate(image)) return out;
  const int d = image.dim();
  const LatticePoint fwd = LatticePoint::unit(d, 0);
  std::vector<LatticePoint> surf;
  for (const auto& s : image.sites())
    if (s[0] == 0) surf.push_back(s);
  auto try_candidate = [&](const LatticePolymer& cand) {
    if (!validate(cand) || !cand.contains(LatticePoint(d)) || !in_halfspace(cand)) return;
    if (cand.num_edges() == 0 || !(comb_plus_map(cand) == image)) return;
    out.push_back(cand);
  };
  if (surf.size() == 1) {
    // surface site z = -2e1, so shift the image by -z + (-2e1)
    const LatticePoint z = surf[0];
    const LatticePoint p2 = z, p1 = z + fwd, o = z + fwd + fwd;
    if (!image.contains(p1) || !image.contains(o)) return out;
    Editable e(image);
    e.drop_edge(p1, p2);
    e.drop_edge(o, p1);
    std::erase_if(e.sites, [&](const LatticePoint& s) { return s == p1 || s == p2; });
    if (e.a == p2) e.a = o;
    if (e.b == p2) e.b = o;
    try {
      try_candidate(e.build(d).translated(-o));
    } catch (const ValidationError&) {
    }
  } else if (surf.size() == 2) {
    for (int pick = 0; pick < 2; ++pick) {
      const LatticePoint m = surf[pick], vm = surf[1 - pick];  // m plays -e1
      const LatticePoint o = m + fwd, v = vm + fwd;
      if (!image.contains(o) || !image.contains(v)) continue;
      Editable e(image);
      e.drop_edge(v, vm);
      e.drop_edge(vm, m);
      e.drop_edge(m, o);
      std::erase_if(e.sites, [&](const LatticePoint& s) { return s == m || s == vm; });
      e.edges.emplace_back(v, o);
      try {
        try_candidate(e.build(d).translated(-o));
      } catch (const ValidationError&) {
      }
    }
  }
  return out;
}

// comb_decompose --------------------------------------------------------------

std::string_view to_string(Decomposition::Case c) {
  switch (c) {
    case Decomposition::Case::I: return "I";
    case Decomposition::Case::II: return "II";
    case Decomposition::Case::III: return "III";
  }
  return "?";
}

std::array<LatticePolymer, 3> Decomposition::normalized() const {
  return {lex_normalize(first), lex_normalize(second), lex_normalize(walk)};
}

std::array<LatticePoint, 3> Decomposition::anchors() const {
  return {lex_min_site(first), lex_min_site(second), lex_min_site(walk)};
}

namespace {

class PieceBuilder {
 public:
  explicit PieceBuilder(PiecePlan& out) : out_(out) {}
  PieceBuilder& path(const std::vector<int>& sites, int from, int to) {
    for (int k = from; k < to; ++k) edge(sites[k], sites[k + 1]);
    if (from == to) site(sites[from]);
    return *this;
  }
  PieceBuilder& edge(int x, int y) {
    out_.edges.emplace_back(x, y);
    site(x);
    site(y);
    return *this;
  }
  PieceBuilder& site(int x) {
    out_.sites.push_back(x);
    return *this;
  }
  void labels(int a, int b) {
    std::sort(out_.sites.begin(), out_.sites.end());
    out_.sites.erase(std::unique(out_.sites.begin(), out_.sites.end()), out_.sites.end());
    out_.a = a;
    out_.b = b;
  }

 private:
  PiecePlan& out_;
};

LatticePolymer materialize(const LatticePolymer& src, const PiecePlan& p, PolymerClass cls) {
  std::vector<LatticePoint> sites;
  for (int x : p.sites) sites.push_back(src.sites()[x]);
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;
  for (auto [x, y] : p.edges) edges.emplace_back(src.sites()[x], src.sites()[y]);
  return LatticePolymer::make(cls, src.dim(), std::move(sites), edges,
                              std::make_pair(src.sites()[p.a], src.sites()[p.b]));
}

}  // namespace

DecompositionPlan plan_comb_decompose(const CombStructure& cs, int n) {
  const auto& bb = cs.backbone;
  const int t = static_cast<int>(bb.size()) - 1;
  const int b = static_cast<int>(cs.branch_pos.size());
  auto pos = [&](int j) { return j == 0 ? 0 : cs.branch_pos[j - 1]; };        // i_j, 1-based j
  auto len = [&](int j) { return static_cast<int>(cs.side_chain[j - 1].size()) - 1; };  // s_j
  std::vector<int> cum(b + 1, 0);                                             // S_j
  for (int j = 1; j <= b; ++j) cum[j] = cum[j - 1] + len(j);
  const int m = t + cum[b] - n;
  if (n < 1 || m < 1) throw ValidationError("comb_decompose needs 1 <= N and 1 <= M");

  DecompositionPlan out;
  PieceBuilder k1(out.pieces[0]), k2(out.pieces[1]), th(out.pieces[2]);
  auto chains = [&](PieceBuilder& pb, int from, int to) {  // full side chains from..to
    for (int j = from; j <= to; ++j) pb.path(cs.side_chain[j - 1], 0, len(j));
  };

  if (n > pos(b) + cum[b]) {
    out.which = Decomposition::Case::I;
    const int c = t - m;
    k1.path(bb, 0, c);
    chains(k1, 1, b);
    k2.path(bb, c, t);
    th.site(bb[c]);
    k1.labels(bb[0], bb[c]);
    k2.labels(bb[c], bb[t]);
    th.labels(bb[c], bb[c]);
    return out;
  }
  for (int j = 1; j <= b; ++j) {
    if (pos(j - 1) + cum[j - 1] < n && n <= pos(j) + cum[j - 1]) {
      out.which = Decomposition::Case::III;
      const int cut = n - cum[j - 1];
      k1.path(bb, 0, cut);
      chains(k1, 1, j - 1);
      k2.path(bb, cut, t);
      k1.labels(bb[0], bb[cut]);
      if (cut == pos(j)) {
        const auto& ch = cs.side_chain[j - 1];
        th.path(ch, 0, len(j));
        chains(k2, j + 1, b);
        th.labels(ch.front(), ch.back());
      } else {
        chains(k2, j, b);
        th.site(bb[cut]);
        th.labels(bb[cut], bb[cut]);
      }
      k2.labels(bb[cut], bb[t]);
      return out;
    }
    if (pos(j) + cum[j - 1] < n && n <= pos(j) + cum[j]) {
      out.which = Decomposition::Case::II;
      const int l = n - pos(j) - cum[j - 1] - 1;
      const auto& ch = cs.side_chain[j - 1];
      const int y = pos(j) + 1;  // backbone position of y
      k1.path(bb, 0, y);
      chains(k1, 1, j - 1);
      if (l > 0) k1.path(ch, 0, l);
      th.path(ch, l, len(j));
      k2.path(bb, y, t);
      chains(k2, j + 1, b);
      int a2 = bb[y];
      if (j < b && pos(j + 1) == y) a2 = cs.side_chain[j].back();  // y carried a side chain
      k1.labels(bb[0], bb[y]);
      th.labels(ch[l], ch.back());
      k2.labels(a2, bb[t]);
      return out;
    }
  }
  throw InternalError("comb_decompose: no case applies");
}

Decomposition comb_decompose(const LatticePolymer& comb, int n) {
  if (comb.polymer_class() != PolymerClass::comb || !validate(comb))
    throw ValidationError("comb_decompose needs a valid comb");
  const auto plan = plan_comb_decompose(analyze_comb(comb), n);
  Decomposition out;
  out.which = plan.which;
  out.first = materialize(comb, plan.pieces[0], PolymerClass::comb);
  out.second = materialize(comb, plan.pieces[1], PolymerClass::comb);
  out.walk = materialize(comb, plan.pieces[2], PolymerClass::walk);
  return out;
}

}  // namespace polylat
