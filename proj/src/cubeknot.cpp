#include "pearl/cubeknot.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pearl {

bool operator<(const Cube& a, const Cube& b) {
  if (a.axes != b.axes) return a.axes < b.axes;
  return lex_less(a.base, b.base);
}

bool vertex_convention_ok(const IPoint& v) {
  if (v.dim < 1) return false;
  if (v[0] % 2 == 0) return false;
  for (int i = 1; i < v.dim; ++i)
    if (v[i] % 2 != 0) return false;
  return true;
}

std::vector<IPoint> vertices_of(const Cube& c) {
  std::vector<IPoint> out;
  const int n = c.dim();
  for (unsigned m = 0; m < (1u << n); ++m) {
    IPoint v = c.base;
    for (int t = 0; t < n; ++t)
      if ((m >> t) & 1u) v[c.axes[t]] += kCubeSide;
    out.push_back(v);
  }
  return out;
}

std::vector<Cube> facets_of(const Cube& c) {
  std::vector<Cube> out;
  for (int t = 0; t < c.dim(); ++t) {
    std::vector<int> rest;
    for (int s = 0; s < c.dim(); ++s)
      if (s != t) rest.push_back(c.axes[s]);
    out.push_back({c.base, rest});
    IPoint hi = c.base;
    hi[c.axes[t]] += kCubeSide;
    out.push_back({hi, rest});
  }
  return out;
}

Box<Rational> box_of(const Cube& c) {
  Box<Rational> b{Point<Rational>(c.base.dim), Point<Rational>(c.base.dim)};
  for (int i = 0; i < c.base.dim; ++i) b.lo[i] = b.hi[i] = Rational(c.base[i]);
  for (int a : c.axes) b.hi[a] += kCubeSide;
  return b;
}

namespace {

std::string cube_string(const Cube& c) {
  std::string s = "base (";
  for (int i = 0; i < c.base.dim; ++i) s += (i ? "," : "") + std::to_string(c.base[i]);
  s += ") axes {";
  for (std::size_t t = 0; t < c.axes.size(); ++t) s += (t ? "," : "") + std::to_string(c.axes[t] + 1);
  return s + "}";
}

std::map<Cube, std::vector<int>> facet_incidence(const std::vector<Cube>& cubes) {
  std::map<Cube, std::vector<int>> inc;
  for (int i = 0; i < static_cast<int>(cubes.size()); ++i)
    for (const auto& f : facets_of(cubes[i])) inc[f].push_back(i);
  return inc;
}

int component_count(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps;
}

}  // namespace

HomologyProfile cubical_homology(const std::vector<Cube>& cubes, int top_dim) {
  for (const auto& c : cubes)
    if (c.dim() != top_dim)
      throw GeometryError(ErrorKind::inconsistent_dimension,
                          "cube of dimension " + std::to_string(c.dim()) + " in a " +
                              std::to_string(top_dim) + "-complex");
  std::vector<std::map<Cube, int>> cells(top_dim + 1);
  for (const auto& c : cubes) cells[top_dim].emplace(c, 0);
  for (int k = top_dim; k >= 1; --k)
    for (const auto& [c, idx] : cells[k])
      for (const auto& f : facets_of(c)) cells[k - 1].emplace(f, 0);
  for (auto& level : cells) {
    int i = 0;
    for (auto& [c, idx] : level) idx = i++;
  }
  std::vector<int> sizes(top_dim + 1);
  std::vector<IntMatrix> bd(top_dim + 1);
  for (int k = 0; k <= top_dim; ++k) sizes[k] = static_cast<int>(cells[k].size());
  for (int k = 1; k <= top_dim; ++k) {
    bd[k].rows = sizes[k - 1];
    bd[k].cols = sizes[k];
    for (const auto& [c, col] : cells[k]) {
      auto fs = facets_of(c);  // pairs (low, high) per axis position t
      for (int t = 0; t < c.dim(); ++t) {
        std::int64_t sgn = (t % 2 == 0) ? 1 : -1;
        bd[k].entries.push_back({cells[k - 1].at(fs[2 * t + 1]), col, sgn});
        bd[k].entries.push_back({cells[k - 1].at(fs[2 * t]), col, -sgn});
      }
    }
  }
  return homology_from_chain_complex(sizes, bd);
}

AuditReport validate_knot(const CubicalKnot& k) {
  AuditReport rep;
  rep.title = "knot validation" + (k.name.empty() ? std::string() : " (" + k.name + ")");
  const int d = k.ambient_dim, n = k.knot_dim;

  bool dims_ok = d == n + 2 && d >= 2 && d <= 7 && n >= 0 && !k.cubes.empty();
  std::string dim_detail = "ambient " + std::to_string(d) + ", knot " + std::to_string(n) + ", " +
                           std::to_string(k.cubes.size()) + " cubes";
  for (const auto& c : k.cubes) {
    bool ok = c.base.dim == d && c.dim() == n && std::is_sorted(c.axes.begin(), c.axes.end()) &&
              std::adjacent_find(c.axes.begin(), c.axes.end()) == c.axes.end();
    for (int a : c.axes) ok = ok && a >= 0 && a < d;
    if (!ok) {
      dims_ok = false;
      dim_detail += "; malformed cube " + cube_string(c);
      break;
    }
  }
  std::set<Cube> uniq(k.cubes.begin(), k.cubes.end());
  if (uniq.size() != k.cubes.size()) {
    dims_ok = false;
    dim_detail += "; duplicate cubes";
  }
  rep.add("dimensions", dims_ok, dim_detail);
  if (!dims_ok) return rep;

  {
    int bad = 0;
    std::string first;
    for (const auto& c : k.cubes)
      if (!vertex_convention_ok(c.base)) {
        if (!bad++) first = cube_string(c);
      }
    rep.add("lattice convention (v1 odd, others even)", bad == 0,
            bad ? std::to_string(bad) + " cubes violate, first " + first : "all vertices in C2");
  }

  auto inc = facet_incidence(k.cubes);
  {
    int bad = 0;
    std::string first;
    for (const auto& [f, cs] : inc)
      if (cs.size() != 2 && !bad++)
        first = "face " + cube_string(f) + " has degree " + std::to_string(cs.size());
    rep.add("closed manifold (every (n-1)-face in exactly 2 cubes)", bad == 0,
            bad ? std::to_string(bad) + " bad faces; " + first
                : std::to_string(inc.size()) + " faces, all degree 2");
  }
  {
    std::vector<std::pair<int, int>> edges;
    for (const auto& [f, cs] : inc)
      for (std::size_t t = 1; t < cs.size(); ++t) edges.push_back({cs[0], cs[t]});
    int comps = component_count(static_cast<int>(k.cubes.size()), edges);
    rep.add("connected", comps == 1, std::to_string(comps) + " component(s)");
  }
  {
    HomologyProfile h = cubical_homology(k.cubes, n);
    rep.add("homology of S^" + std::to_string(n), h.is_sphere(n), h.to_string());
    rep.data["homology"] = h.to_string();
  }
  rep.notes.push_back("sphere check is homological: a necessary condition, not PL recognition");
  rep.data["cubes"] = k.cubes.size();
  return rep;
}

std::vector<TurnRecord> turns_of(const CubicalKnot& k) {
  std::vector<TurnRecord> out;
  for (const auto& [f, cs] : facet_incidence(k.cubes))
    if (cs.size() == 2 && k.cubes[cs[0]].axes != k.cubes[cs[1]].axes)
      out.push_back({f, k.cubes[cs[0]], k.cubes[cs[1]]});
  return out;
}

std::vector<Cube> straight_faces(const CubicalKnot& k) {
  std::vector<Cube> out;
  for (const auto& [f, cs] : facet_incidence(k.cubes))
    if (cs.size() == 2 && k.cubes[cs[0]].axes == k.cubes[cs[1]].axes) out.push_back(f);
  return out;
}

namespace {

CubicalKnot trivial_knot(int n) {
  if (n < 1 || n > 5) throw InputError(ErrorKind::unknown_name, "trivial knot needs 1 <= n <= 5");
  const int d = n + 2;
  Cube big{IPoint(d), {}};
  big.base[0] = 1;
  for (int a = 0; a <= n; ++a) big.axes.push_back(a);
  CubicalKnot k{d, n, facets_of(big), "trivial-" + std::to_string(n)};
  std::sort(k.cubes.begin(), k.cubes.end());
  return k;
}

// Grid diagram of size 5 (O at (i,i), X at (i,i+2)); horizontal strands at
// height 0, vertical strands at height 1 crossing over, unit lattice steps in
// u-coordinates mapped to C2 by v = 2u + e1.
CubicalKnot trefoil_knot() {
  const int g = 5, spacing = 2;
  std::vector<std::array<std::int64_t, 3>> path;
  auto push_line = [&](std::array<std::int64_t, 3> to) {
    auto from = path.back();
    int axis = -1;
    for (int i = 0; i < 3; ++i)
      if (from[i] != to[i]) axis = i;
    std::int64_t step = to[axis] > from[axis] ? 1 : -1;
    while (from != to) {
      from[axis] += step;
      path.push_back(from);
    }
  };
  int col = 0;
  path.push_back({0, 0, 0});
  do {
    int row = (col + 2) % g;
    std::int64_t x = spacing * col;
    push_line({x, x, 1});
    push_line({x, spacing * row, 1});
    push_line({x, spacing * row, 0});
    push_line({spacing * row, spacing * row, 0});
    col = row;
  } while (col != 0);
  CubicalKnot k{3, 1, {}, "trefoil"};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    IPoint a(3), b(3);
    int axis = 0;
    for (int t = 0; t < 3; ++t) {
      a[t] = 2 * path[i][t] + (t == 0 ? 1 : 0);
      b[t] = 2 * path[i + 1][t] + (t == 0 ? 1 : 0);
      if (a[t] != b[t]) axis = t;
    }
    k.cubes.push_back({lex_less(a, b) ? a : b, {axis}});
  }
  std::sort(k.cubes.begin(), k.cubes.end());
  return k;
}

}  // namespace

CubicalKnot sample_knot(const std::string& name, int n) {
  if (name == "trivial") return trivial_knot(n);
  if (name == "trefoil") {
    if (n != 1) throw InputError(ErrorKind::unknown_name, "no cubical trefoil shipped for n != 1");
    return trefoil_knot();
  }
  throw InputError(ErrorKind::unknown_name, "unknown sample knot '" + name + "'");
}

SimplicialComplex kuhn_subdivision(const std::vector<Cube>& cubes) {
  std::map<std::vector<std::int64_t>, int> ids;
  auto id_of = [&](const IPoint& v) {
    std::vector<std::int64_t> key(v.x.begin(), v.x.begin() + v.dim);
    return ids.emplace(key, static_cast<int>(ids.size())).first->second;
  };
  std::vector<Simplex> facets;
  for (const auto& c : cubes) {
    std::vector<int> perm(c.axes);
    do {
      Simplex s;
      IPoint v = c.base;
      s.push_back(id_of(v));
      for (int a : perm) {
        v[a] += kCubeSide;
        s.push_back(id_of(v));
      }
      std::sort(s.begin(), s.end());
      facets.push_back(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return complex_from_facets(static_cast<int>(ids.size()), facets);
}

}  // namespace pearl
