// Explicit constructions and maps on combs and knotted polygons.
#pragma once

#include <array>
#include <string>

#include "polylat/core.hpp"
#include "polylat/topology.hpp"

namespace polylat {

// The 30-edge trefoil polygon, vertices listed in cyclic order from A = 0.
const std::vector<LatticePoint>& phi30_cycle();
LatticePolymer polygon_from_cycle(const std::vector<LatticePoint>& cycle);

LatticePolymer build_phi30();
LatticePolymer build_phi_chain(int t);  // 28t edges, t trefoils in series

// Comb with the given signature; in-hyperplane for d >= 3, backbone on the
// surface line with side chains pointing into the bulk for d = 2.
LatticePolymer straight_comb_witness(const CombSignature& sig, int d);

// Injection of impenetrable combs into N+2 edge combs with at most two visits.
LatticePolymer comb_plus_map(const LatticePolymer& comb);
// Exact candidate preimages of an output of comb_plus_map.
std::vector<LatticePolymer> comb_plus_preimages(const LatticePolymer& image);

struct Decomposition {
  enum class Case { I, II, III };
  Case which = Case::I;
  // Pieces as they sit inside the input (not translated).
  LatticePolymer first;   // comb with N edges
  LatticePolymer second;  // comb with the remaining edges minus the walk
  LatticePolymer walk;    // possibly a 0-step walk
  // Lex-normalised pieces and the translations that put them back.
  std::array<LatticePolymer, 3> normalized() const;
  std::array<LatticePoint, 3> anchors() const;
};
std::string_view to_string(Decomposition::Case c);

Decomposition comb_decompose(const LatticePolymer& comb, int n);

// The same decomposition on site indices of the input, without building the
// pieces; `comb_decompose` materialises this.
struct PiecePlan {
  std::vector<int> sites;  // sorted
  std::vector<std::pair<int, int>> edges;
  int a = -1, b = -1;
};
struct DecompositionPlan {
  Decomposition::Case which = Decomposition::Case::I;
  std::array<PiecePlan, 3> pieces;  // first, second, walk
};
DecompositionPlan plan_comb_decompose(const CombStructure& cs, int n);

}  // namespace polylat
