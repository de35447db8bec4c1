// Lattice geometry and polymer representations on Z^d.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polylat {

inline constexpr int kMaxDim = 8;
using Coord = std::int32_t;

// Error hierarchy; the CLI maps these onto exit codes 2/3/4.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, double estimate)
      : std::runtime_error(what), estimate(estimate) {}
  double estimate;  // rough size of the requested ensemble
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(int dim);  // origin
  LatticePoint(std::initializer_list<Coord> c);
  explicit LatticePoint(const std::vector<Coord>& c);

  static LatticePoint unit(int dim, int axis, int sign = 1);

  int dim() const { return dim_; }
  Coord operator[](int i) const { return c_[i]; }
  Coord& operator[](int i) { return c_[i]; }
  std::vector<Coord> coords() const { return {c_.begin(), c_.begin() + dim_}; }

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator-() const;
  bool is_origin() const;
  int l1_norm() const;
  bool adjacent(const LatticePoint& o) const { return (*this - o).l1_norm() == 1; }

  // Lexicographic order; unused trailing slots are zero so array compare is exact.
  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }
  friend std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

  std::string str() const;  // "x1,x2,..."

 private:
  int dim_ = 0;
  std::array<Coord, kMaxDim> c_{};
};

enum class PolymerClass { animal, tree, walk, polygon, comb };

std::string_view to_string(PolymerClass c);
PolymerClass parse_polymer_class(std::string_view s);
inline bool has_labels(PolymerClass c) {
  return c == PolymerClass::walk || c == PolymerClass::comb;
}

using Edge = std::pair<int, int>;  // indices into sites(), first < second

// Immutable polymer: sites sorted lexicographically, edges sorted, labels as
// site indices (rho_A, rho_B) for walks and combs.
class LatticePolymer {
 public:
  LatticePolymer() = default;

  // Sites may come in any order; edges are given as point pairs. Throws
  // ValidationError on malformed input (duplicate sites, edges to missing
  // sites, mixed dimensions), but does not check class invariants.
  static LatticePolymer make(PolymerClass cls, int dim, std::vector<LatticePoint> sites,
                             const std::vector<std::pair<LatticePoint, LatticePoint>>& edges,
                             std::optional<std::pair<LatticePoint, LatticePoint>> labels = {});

  PolymerClass polymer_class() const { return cls_; }
  int dim() const { return dim_; }
  const std::vector<LatticePoint>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::pair<int, int>>& labels() const { return labels_; }
  std::size_t num_sites() const { return sites_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  int index_of(const LatticePoint& p) const;  // -1 when absent
  bool contains(const LatticePoint& p) const { return index_of(p) >= 0; }
  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;

  LatticePolymer translated(const LatticePoint& v) const;
  LatticePolymer with_class(PolymerClass c) const;
  std::vector<std::pair<LatticePoint, LatticePoint>> edge_points() const;
  std::optional<std::pair<LatticePoint, LatticePoint>> label_points() const;

  // The size index N: sites for animals/trees, edges otherwise.
  int size_index() const;

  friend bool operator==(const LatticePolymer&, const LatticePolymer&) = default;

 private:
  PolymerClass cls_ = PolymerClass::animal;
  int dim_ = 0;
  std::vector<LatticePoint> sites_;
  std::vector<Edge> edges_;
  std::optional<std::pair<int, int>> labels_;
};

enum class InvalidReason {
  none,
  empty,
  bad_dimension,
  edge_not_unit,
  disconnected,
  not_a_tree,
  bad_labels,
  walk_degree,
  polygon_degree,
  polygon_size,
  comb_degree,
  comb_branch_off_backbone,
};
std::string_view to_string(InvalidReason r);

struct Validation {
  bool ok = false;
  InvalidReason reason = InvalidReason::none;
  explicit operator bool() const { return ok; }
};

Validation validate(const LatticePolymer& p);

// The adsorbing surface is fixed at x_1 = 0, the halfspace at x_1 >= 0.
namespace surface {
inline bool on_hyperplane(const LatticePoint& p) { return p[0] == 0; }
inline bool in_halfspace(const LatticePoint& p) { return p[0] >= 0; }
}  // namespace surface

int visits(const LatticePolymer& p);
bool in_halfspace(const LatticePolymer& p);
LatticePoint lex_min_site(const LatticePolymer& p);
LatticePolymer lex_normalize(const LatticePolymer& p);
std::vector<int> spans(const LatticePolymer& p);
int longest_path(const LatticePolymer& p);

// One-line text form: "class d; site-list; edge-list; labels".
std::string to_text(const LatticePolymer& p);
LatticePolymer from_text(std::string_view line);

}  // namespace polylat
