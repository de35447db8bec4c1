// Quenched-topology keys: abstract graph codes, comb signatures, knot data.
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "polylat/core.hpp"

namespace polylat {

using AdjacencyList = std::vector<std::vector<int>>;

struct TopologyKey {
  enum class Kind { tree_code, graph_code, comb_signature, knot_invariant };
  Kind kind = Kind::tree_code;
  std::string payload;  // canonical bytes

  std::string str() const;  // "kind:hex(payload)"
  static TopologyKey parse(std::string_view s);

  friend bool operator==(const TopologyKey&, const TopologyKey&) = default;
  friend auto operator<=>(const TopologyKey&, const TopologyKey&) = default;
};
std::string_view to_string(TopologyKey::Kind k);

struct CombSignature {
  int b = 0;
  std::vector<int> n;  // n_0..n_b, backbone segment steps
  std::vector<int> s;  // s_1..s_b, side-chain steps

  int total() const;
  bool valid() const;
  std::string str() const;  // "b;n_0,...;s_1,..."
  static CombSignature parse(std::string_view text);
  CombSignature reversed() const;

  // Every signature with total N (N >= 1), in a fixed order.
  static std::vector<CombSignature> all(int N);

  friend bool operator==(const CombSignature&, const CombSignature&) = default;
  friend auto operator<=>(const CombSignature&, const CombSignature&) = default;
};

// Backbone and side chains of a comb, as site indices.
struct CombStructure {
  std::vector<int> backbone;                // rho_A ... rho_B
  std::vector<int> branch_pos;              // backbone positions i_1 < ... < i_b
  std::vector<std::vector<int>> side_chain; // from the attached site to the free end
};
CombStructure analyze_comb(const AdjacencyList& adj, int a, int b);
CombStructure analyze_comb(const LatticePolymer& p);

TopologyKey tree_code(const AdjacencyList& adj);
TopologyKey graph_code(const AdjacencyList& adj, int cap = 12);
CombSignature comb_signature(const AdjacencyList& adj, int a, int b);
TopologyKey signature_key(const CombSignature& sig);

TopologyKey tree_key(const LatticePolymer& p);
TopologyKey graph_key(const LatticePolymer& p, int cap = 12);
CombSignature comb_signature(const LatticePolymer& p);

}  // namespace polylat
