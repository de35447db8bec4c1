#include "polylat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace polylat::oracle {

namespace {

SiteSet normalized(SiteSet s) {
  std::sort(s.begin(), s.end());
  const LatticePoint shift = s.front();
  for (auto& p : s) p = p - shift;
  return s;
}

}  // namespace

std::set<SiteSet> site_sets(int d, int n) {
  std::set<SiteSet> level;
  if (n < 1) return level;
  level.insert(SiteSet{LatticePoint(d)});
  for (int k = 1; k < n; ++k) {
    std::set<SiteSet> next;
    for (const auto& s : level)
      for (const auto& p : s)
        for (int axis = 0; axis < d; ++axis)
          for (int sign : {-1, 1}) {
            LatticePoint q = p + LatticePoint::unit(d, axis, sign);
            if (std::find(s.begin(), s.end(), q) != s.end()) continue;
            SiteSet grown = s;
            grown.push_back(q);
            next.insert(normalized(std::move(grown)));
          }
    level = std::move(next);
  }
  return level;
}

std::vector<std::pair<int, int>> induced_edges(const SiteSet& s) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(s.size()); ++j)
      if (s[i].adjacent(s[j])) out.emplace_back(i, j);
  return out;
}

std::uint64_t spanning_trees(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 1) return 1;
  // reduced Laplacian: drop row/column 0
  const int m = n - 1;
  std::vector<std::vector<__int128>> a(m, std::vector<__int128>(m, 0));
  for (auto [u, v] : edges) {
    if (u > 0) a[u - 1][u - 1] += 1;
    if (v > 0) a[v - 1][v - 1] += 1;
    if (u > 0 && v > 0) a[u - 1][v - 1] -= 1, a[v - 1][u - 1] -= 1;
  }
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    while (piv < m && a[piv][k] == 0) ++piv;
    if (piv == m) return 0;
    if (piv != k) std::swap(a[piv], a[k]), sign = -sign;
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return static_cast<std::uint64_t>(sign * a[m - 1][m - 1]);
}

std::uint64_t connected_spanning_subgraphs(int n, const std::vector<std::pair<int, int>>& edges) {
  const int e = static_cast<int>(edges.size());
  if (e > 30) throw ValidationError("oracle: too many edges for subset search");
  std::uint64_t count = 0;
  std::vector<int> parent(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    if (std::popcount(mask) < n - 1) continue;
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = n;
    for (int i = 0; i < e; ++i)
      if (mask >> i & 1) {
        int x = find(edges[i].first), y = find(edges[i].second);
        if (x != y) parent[x] = y, --components;
      }
    if (components == 1) ++count;
  }
  return count;
}

std::uint64_t tree_count(int d, int n) {
  std::uint64_t total = 0;
  for (const auto& s : site_sets(d, n)) total += spanning_trees(n, induced_edges(s));
  return total;
}

std::uint64_t animal_count(int d, int n) {
  std::uint64_t total = 0;
  for (const auto& s : site_sets(d, n)) total += connected_spanning_subgraphs(n, induced_edges(s));
  return total;
}

}  // namespace polylat::oracle
