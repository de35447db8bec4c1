// Slow reference counts built from first principles, used to cross-check the
// enumerator. Nothing here shares code with enumerate.cpp.
#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "polylat/core.hpp"

namespace polylat::oracle {

using SiteSet = std::vector<LatticePoint>;  // sorted, lex-min site at the origin

// All connected site sets of size n up to translation, grown one site at a time.
std::set<SiteSet> site_sets(int d, int n);

// Edges of the lattice graph induced on a site set, as index pairs.
std::vector<std::pair<int, int>> induced_edges(const SiteSet& s);

// Spanning trees of a small graph by the matrix-tree theorem (exact Bareiss).
std::uint64_t spanning_trees(int n, const std::vector<std::pair<int, int>>& edges);
// Connected spanning edge subsets by brute force over all 2^|E| subsets.
std::uint64_t connected_spanning_subgraphs(int n, const std::vector<std::pair<int, int>>& edges);

// Translation classes with n sites.
std::uint64_t tree_count(int d, int n);
std::uint64_t animal_count(int d, int n);

}  // namespace polylat::oracle
