#include "polylat/knot.hpp"

#include <algorithm>

namespace polylat {

namespace {

using i128 = __int128;

struct Vec3 {
  std::int64_t x, y, z;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
std::int64_t dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

struct P2 {
  std::int64_t x, y;
};
i128 cross2(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
  return static_cast<i128>(ax) * by - static_cast<i128>(ay) * bx;
}
int sgn(i128 v) { return (v > 0) - (v < 0); }

// Position of a crossing along an edge, as a fraction num/den with den > 0.
struct Param {
  i128 num, den;
};
bool less(const Param& a, const Param& b) { return a.num * b.den < b.num * a.den; }
bool same(const Param& a, const Param& b) { return a.num * b.den == b.num * a.den; }

using Poly = std::vector<BigInt>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}
Poly exact_div(Poly a, const Poly& b) {
  trim(a);
  if (a.empty()) return {};
  if (b.empty() || a.size() < b.size()) throw InternalError("inexact polynomial division");
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& lead = a[k + b.size() - 1];
    if (lead % b.back() != 0) throw InternalError("inexact polynomial division");
    q[k] = lead / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  trim(a);
  if (!a.empty()) throw InternalError("inexact polynomial division");
  trim(q);
  return q;
}

// Fraction-free Gaussian elimination; works over Z and Z[t].
template <class T, class Mul, class Sub, class Div, class IsZero>
T bareiss(std::vector<std::vector<T>> m, T one, Mul mulf, Sub subf, Div divf, IsZero zero) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  int sign = 1;
  T prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (zero(m[k][k])) {
      std::size_t r = k + 1;
      while (r < n && zero(m[r][k])) ++r;
      if (r == n) return T{};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divf(subf(mulf(m[i][j], m[k][k]), mulf(m[i][k], m[k][j])), prev);
    prev = m[k][k];
  }
  T det = m[n - 1][n - 1];
  if (sign < 0) det = subf(T{}, det);
  return det;
}

// Arc bookkeeping shared by both matrices: per crossing the over arc and the
// incoming / outgoing under arcs.
struct ArcData {
  std::vector<int> over, in, out;
};

ArcData arcs(const KnotDiagram& d) {
  const int n = static_cast<int>(d.crossings.size());
  ArcData a{std::vector<int>(n), std::vector<int>(n), std::vector<int>(n)};
  const auto& g = d.gauss_code;
  // start just after the first under event
  std::size_t first = 0;
  while (g[first] > 0) ++first;
  int arc = 0;
  for (std::size_t k = 1; k <= g.size(); ++k) {
    int ev = g[(first + k) % g.size()];
    int c = std::abs(ev) - 1;
    if (ev > 0) {
      a.over[c] = arc;
    } else {
      a.in[c] = arc;
      arc = (arc + 1) % n;
      a.out[c] = arc;
    }
  }
  return a;
}

}  // namespace

const std::vector<Direction>& projection_schedule() {
  static const std::vector<Direction> dirs = {
      {1, 3, 7},    {2, 5, 13},   {3, 7, 19},    {1, 11, 29},   {5, 13, 37},
      {7, 17, 53},  {3, 23, 71},  {11, 29, 97},  {13, 41, 131}, {1, 53, 173},
      {17, 61, 211}, {19, 83, 263}, {23, 97, 331}, {2, 101, 409}, {29, 127, 503},
  };
  return dirs;
}

std::vector<LatticePoint> polygon_cycle(const LatticePolymer& p) {
  if (p.polymer_class() != PolymerClass::polygon || !validate(p))
    throw ValidationError("polygon_cycle needs a valid polygon");
  auto adj = p.adjacency();
  std::vector<LatticePoint> cyc;
  int prev = -1, cur = 0;
  do {
    cyc.push_back(p.sites()[cur]);
    int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    if (prev < 0) next = std::min(adj[cur][0], adj[cur][1]);
    prev = cur;
    cur = next;
  } while (cur != 0);
  return cyc;
}

std::optional<KnotDiagram> project(const std::vector<LatticePoint>& cycle, const Direction& dir) {
  const Vec3 p{dir[0], dir[1], dir[2]};
  // integer basis of the plane orthogonal to p
  const Vec3 axis = std::abs(p.x) <= std::abs(p.y) && std::abs(p.x) <= std::abs(p.z)
                        ? Vec3{1, 0, 0}
                        : (std::abs(p.y) <= std::abs(p.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  const Vec3 u = cross(p, axis), v = cross(p, u);
  const int n = static_cast<int>(cycle.size());
  std::vector<P2> q(n);
  std::vector<std::int64_t> h(n);
  for (int i = 0; i < n; ++i) {
    Vec3 x{cycle[i][0], cycle[i][1], cycle[i][2]};
    q[i] = {dot(u, x), dot(v, x)};
    h[i] = dot(p, x);
  }
  auto orient = [&](const P2& a, const P2& b, const P2& c) {
    return sgn(cross2(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y));
  };
  auto on_segment = [&](const P2& a, const P2& b, const P2& c) {  // c on closed ab
    if (orient(a, b, c) != 0) return false;
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
  };

  // genericity: distinct vertex images, no vertex on a foreign edge
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (q[i].x == q[j].x && q[i].y == q[j].y) return std::nullopt;
  for (int e = 0; e < n; ++e) {
    const P2 &a = q[e], &b = q[(e + 1) % n];
    for (int i = 0; i < n; ++i) {
      if (i == e || i == (e + 1) % n) continue;
      if (on_segment(a, b, q[i])) return std::nullopt;
    }
  }

  struct Event {
    Param t;
    int crossing;
    bool over;
  };
  std::vector<std::vector<Event>> along(n);
  KnotDiagram d;
  d.direction = dir;
  for (int e = 0; e < n; ++e)
    for (int f = e + 2; f < n; ++f) {
      if (e == 0 && f == n - 1) continue;  // adjacent through the closing edge
      const P2 &a = q[e], &b = q[(e + 1) % n], &c = q[f], &dd = q[(f + 1) % n];
      if (orient(a, b, c) * orient(a, b, dd) >= 0 || orient(c, dd, a) * orient(c, dd, b) >= 0)
        continue;
      // proper crossing; parameters along each edge
      i128 den = cross2(b.x - a.x, b.y - a.y, dd.x - c.x, dd.y - c.y);
      i128 s_num = cross2(c.x - a.x, c.y - a.y, dd.x - c.x, dd.y - c.y);
      i128 t_num = cross2(c.x - a.x, c.y - a.y, b.x - a.x, b.y - a.y);
      if (den < 0) den = -den, s_num = -s_num, t_num = -t_num;
      const i128 dh_e = h[(e + 1) % n] - h[e], dh_f = h[(f + 1) % n] - h[f];
      // height difference at the crossing, scaled by den > 0
      i128 diff = (static_cast<i128>(h[e]) * den + s_num * dh_e) -
                  (static_cast<i128>(h[f]) * den + t_num * dh_f);
      if (diff == 0) throw InternalError("polygon self-intersection in projection");
      const bool e_over = diff > 0;
      Crossing cr;
      cr.over_edge = e_over ? e : f;
      cr.under_edge = e_over ? f : e;
      const P2& o0 = q[cr.over_edge];
      const P2& o1 = q[(cr.over_edge + 1) % n];
      const P2& u0 = q[cr.under_edge];
      const P2& u1 = q[(cr.under_edge + 1) % n];
      cr.sign = sgn(cross2(o1.x - o0.x, o1.y - o0.y, u1.x - u0.x, u1.y - u0.y));
      const int id = static_cast<int>(d.crossings.size());
      d.crossings.push_back(cr);
      along[e].push_back({{s_num, den}, id, e_over});
      along[f].push_back({{t_num, den}, id, !e_over});
    }
  for (auto& ev : along) {
    std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) { return less(x.t, y.t); });
    for (std::size_t i = 1; i < ev.size(); ++i)
      if (same(ev[i - 1].t, ev[i].t)) return std::nullopt;  // three strands concurrent
    for (const auto& x : ev) d.gauss_code.push_back(x.over ? x.crossing + 1 : -(x.crossing + 1));
  }
  return d;
}

KnotDiagram knot_diagram(const LatticePolymer& p) {
  if (p.dim() != 3) throw ValidationError("knot invariants need d=3");
  auto cyc = polygon_cycle(p);
  for (const auto& dir : projection_schedule())
    if (auto d = project(cyc, dir)) return *d;
  throw InternalError("no generic projection in schedule");
}

BigInt diagram_determinant(const KnotDiagram& d) {
  const int n = static_cast<int>(d.crossings.size());
  if (n <= 1) return 1;
  auto a = arcs(d);
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  for (int c = 0; c < n; ++c) {
    m[c][a.over[c]] += 2;
    m[c][a.in[c]] -= 1;
    m[c][a.out[c]] -= 1;
  }
  m.pop_back();
  for (auto& row : m) row.pop_back();
  BigInt det = bareiss<BigInt>(
      m, BigInt(1), [](const BigInt& x, const BigInt& y) { return BigInt(x * y); },
      [](const BigInt& x, const BigInt& y) { return BigInt(x - y); },
      [](const BigInt& x, const BigInt& y) { return BigInt(x / y); },
      [](const BigInt& x) { return x == 0; });
  return det < 0 ? BigInt(-det) : det;
}

std::vector<BigInt> diagram_alexander(const KnotDiagram& d) {
  const int n = static_cast<int>(d.crossings.size());
  if (n <= 1) return {1};
  auto a = arcs(d);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  auto add = [](Poly& p, const Poly& x) {
    if (p.size() < x.size()) p.resize(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) p[i] += x[i];
    trim(p);
  };
  const Poly one_minus_t{1, -1}, t{0, 1}, minus_one{-1};
  for (int c = 0; c < n; ++c) {
    add(m[c][a.over[c]], one_minus_t);
    add(m[c][a.in[c]], d.crossings[c].sign > 0 ? t : minus_one);
    add(m[c][a.out[c]], d.crossings[c].sign > 0 ? minus_one : t);
  }
  m.pop_back();
  for (auto& row : m) row.pop_back();
  Poly det = bareiss<Poly>(m, Poly{1}, mul, sub, exact_div, [](const Poly& p) { return p.empty(); });
  // normalise up to units +-t^k: drop low zeros, make the constant term positive
  std::size_t lo = 0;
  while (lo < det.size() && det[lo] == 0) ++lo;
  det.erase(det.begin(), det.begin() + static_cast<std::ptrdiff_t>(lo));
  if (!det.empty() && det[0] < 0)
    for (auto& c : det) c = -c;
  return det;
}

TopologyKey KnotInvariant::key() const {
  std::string payload = determinant.str();
  if (!alexander.empty()) {
    payload += '|';
    for (std::size_t i = 0; i < alexander.size(); ++i)
      payload += (i ? "," : "") + alexander[i].str();
  }
  return {TopologyKey::Kind::knot_invariant, payload};
}

KnotInvariant unknot_invariant() { return {BigInt(1), {BigInt(1)}}; }

KnotInvariant knot_invariant(const LatticePolymer& p) {
  auto d = knot_diagram(p);
  KnotInvariant k;
  k.determinant = diagram_determinant(d);
  if (static_cast<int>(d.crossings.size()) <= kAlexanderCrossingCap) k.alexander = diagram_alexander(d);
  return k;
}

}  // namespace polylat
