// Knot invariants of lattice polygons in Z^3 via generic projections.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polylat/core.hpp"
#include "polylat/topology.hpp"

namespace polylat {

using BigInt = boost::multiprecision::cpp_int;
using Direction = std::array<std::int64_t, 3>;

struct Crossing {
  int over_edge = 0;   // index into the cyclic edge sequence
  int under_edge = 0;
  int sign = 0;        // +1 / -1, fixed orientation convention
};

struct KnotDiagram {
  Direction direction{};
  std::vector<Crossing> crossings;
  // Gauss code: crossing index + 1, positive when passing over, negative under.
  std::vector<int> gauss_code;
};

struct KnotInvariant {
  BigInt determinant = 1;          // |Delta(-1)|
  std::vector<BigInt> alexander;   // normalised coefficients, empty if not computed
  TopologyKey key() const;

  friend bool operator==(const KnotInvariant&, const KnotInvariant&) = default;
};

// Crossing diagrams with more crossings than this skip the polynomial.
inline constexpr int kAlexanderCrossingCap = 40;

const std::vector<Direction>& projection_schedule();

// Sites of a polygon in cyclic order, starting at the lex-min site.
std::vector<LatticePoint> polygon_cycle(const LatticePolymer& p);

// Empty optional when the direction is degenerate for this polygon.
std::optional<KnotDiagram> project(const std::vector<LatticePoint>& cycle, const Direction& dir);
KnotDiagram knot_diagram(const LatticePolymer& p);

BigInt diagram_determinant(const KnotDiagram& d);
std::vector<BigInt> diagram_alexander(const KnotDiagram& d);

KnotInvariant knot_invariant(const LatticePolymer& p);
KnotInvariant unknot_invariant();

}  // namespace polylat
