#include "pearl/necklace.hpp"

#include "pearl/obc.hpp"
#include "pearl/spatial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pearl {

const char* to_string(Provenance p) {
  return p == Provenance::obc_pearl ? "obc-pearl" : "flower-center";
}

std::vector<Ball<Rational>> IncreasedNecklace::balls() const {
  std::vector<Ball<Rational>> out = base.pearls;
  out.insert(out.end(), added.begin(), added.end());
  return out;
}

std::vector<Provenance> IncreasedNecklace::provenance() const {
  std::vector<Provenance> out(base.pearls.size(), Provenance::obc_pearl);
  out.insert(out.end(), added.size(), Provenance::flower_center);
  return out;
}

namespace {

Box<std::int64_t> quarter_box(const Cube& c) {
  Box<std::int64_t> b{QPoint(c.base.dim), QPoint(c.base.dim)};
  for (int i = 0; i < c.base.dim; ++i) b.lo[i] = b.hi[i] = 4 * c.base[i];
  for (int a : c.axes) b.hi[a] += 4 * kCubeSide;
  return b;
}

struct BallLess {
  bool operator()(const Ball<Rational>& a, const Ball<Rational>& b) const { return ball_less(a, b); }
};

std::pair<Point<double>, Point<double>> double_box(const Box<Rational>& b) {
  return {to_double(b.lo), to_double(b.hi)};
}

GridIndex cube_index(const CubicalKnot& k) {
  GridIndex g(k.ambient_dim, 4.0);
  for (int i = 0; i < static_cast<int>(k.cubes.size()); ++i) {
    auto [lo, hi] = double_box(box_of(k.cubes[i]));
    g.insert(lo, hi, i);
  }
  return g;
}

// Quarter-unit sample points of a cube at step 1/2, nearest to `target` first.
std::vector<QPoint> cube_samples(const Cube& c, const Point<Rational>* target) {
  std::vector<QPoint> pts;
  const int n = c.dim();
  std::vector<int> t(n, 0);
  while (true) {
    QPoint p(c.base.dim);
    for (int i = 0; i < c.base.dim; ++i) p[i] = 4 * c.base[i];
    for (int s = 0; s < n; ++s) p[c.axes[s]] += 2 * t[s];
    pts.push_back(p);
    int s = n - 1;
    while (s >= 0 && ++t[s] > 4) t[s--] = 0;
    if (s < 0) break;
  }
  if (target) {
    QPoint tq = to_quarter(*target);
    std::stable_sort(pts.begin(), pts.end(), [&](const QPoint& a, const QPoint& b) {
      return dist2(a, tq) < dist2(b, tq);
    });
  }
  return pts;
}

Point<Rational> from_q(const QPoint& q) {
  Point<Rational> p(q.dim);
  for (int i = 0; i < q.dim; ++i) p[i] = ratio(q[i], 4);
  return p;
}

}  // namespace

Necklace build_necklace(const CubicalKnot& k) {
  const int d = k.ambient_dim;
  require_obc_dim(d);
  std::map<Ball<Rational>, std::vector<int>, BallLess> found;
  for (int i = 0; i < static_cast<int>(k.cubes.size()); ++i) {
    Box<std::int64_t> qb = quarter_box(k.cubes[i]);
    for (const auto& lb : lattice_balls_meeting(qb, d))
      if (dist2_to_box(lb.center, qb.lo, qb.hi) < lb.radius * lb.radius)
        found[to_ball(lb)].push_back(i);
  }
  Necklace t;
  t.knot = k;
  t.dim = d;
  for (auto& [b, cubes] : found) {
    t.pearls.push_back(b);
    t.pearl_cubes.push_back(cubes);
  }
  return t;
}

// Covering spheres through q: centers sit at even quarter coordinates, so
// walk the even offset vectors of squared length 4 and 16.
static int spheres_through(const QPoint& q, int d) {
  int count = 0;
  QPoint c = q;
  auto walk = [&](auto&& self, int i, std::int64_t left) -> void {
    if (i == d) {
      if (left == 0 || left == 12) {
        std::int64_t r = center_radius(c, d);
        if (r * r == 16 - left) ++count;
      }
      return;
    }
    for (std::int64_t off : {0, -2, 2, -4, 4}) {
      if (off * off > left) continue;
      if ((q[i] + off) % 2 != 0) continue;
      c[i] = q[i] + off;
      self(self, i + 1, left - off * off);
    }
    c[i] = q[i];
  };
  walk(walk, 0, 16);
  return count;
}

std::vector<FlowerSite> flower_sites(const CubicalKnot& k) {
  const int d = k.ambient_dim;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<QPoint> cands;
  for (const auto& c : k.cubes)
    for (const auto& p : cube_samples(c, nullptr)) {
      std::vector<std::int64_t> key(p.x.begin(), p.x.begin() + d);
      if (seen.insert(key).second) cands.push_back(p);
    }
  std::sort(cands.begin(), cands.end(), [](const QPoint& a, const QPoint& b) { return lex_less(a, b); });
  auto turns = turns_of(k);
  std::vector<FlowerSite> out;
  std::map<std::vector<std::int64_t>, bool> verdict;
  for (const auto& q : cands) {
    if (spheres_through(q, d) != 2 * d) continue;
    // the covering is symmetric under x_i -> +-x_i + 2k, so the verdict
    // depends only on the folded residues mod 2 (8 quarter units)
    std::vector<std::int64_t> cls(d);
    for (int i = 0; i < d; ++i) {
      std::int64_t r = ((q[i] % 8) + 8) % 8;
      cls[i] = std::min(r, 8 - r);
    }
    Point<Rational> p = from_q(q);
    auto it = verdict.find(cls);
    if (it == verdict.end()) it = verdict.emplace(cls, flower_at(p, d).has_value()).first;
    if (!it->second) continue;
    FlowerSite s{p, false};
    for (const auto& t : turns) {
      Box<Rational> fb = box_of(t.face);
      if (dist2_to_box(p, fb.lo, fb.hi) == 0) {
        s.on_turn = true;
        break;
      }
    }
    out.push_back(s);
  }
  return out;
}

IncreasedNecklace increase_necklace(const Necklace& t) {
  IncreasedNecklace inc;
  inc.base = t;
  const Rational r = ratio(1, t.knot.knot_dim + 2);
  int excluded = 0;
  for (const auto& s : flower_sites(t.knot)) {
    if (s.on_turn) {
      ++excluded;
      continue;
    }
    inc.added.push_back(Ball<Rational>{s.center, r});
  }
  std::sort(inc.added.begin(), inc.added.end(), ball_less<Rational>);
  inc.notes.push_back("flower centers in a closed turn face are excluded (" + std::to_string(excluded) +
                      " excluded)");
  return inc;
}

std::vector<std::pair<int, int>> near_pairs(const std::vector<Ball<Rational>>& balls) {
  std::vector<std::pair<int, int>> out;
  if (balls.empty()) return out;
  double rmax = 0;
  for (const auto& b : balls) rmax = std::max(rmax, b.radius.get_d());
  GridIndex g(balls[0].dim(), std::max(4.0 * rmax, 1e-6));
  for (int i = 0; i < static_cast<int>(balls.size()); ++i) g.insert_ball(balls[i], i);
  for (int i = 0; i < static_cast<int>(balls.size()); ++i)
    for (int j : g.query_ball(balls[i], rmax)) {
      if (j <= i) continue;
      Rational s = balls[i].radius + balls[j].radius;
      if (dist2(balls[i].center, balls[j].center) <= s * s) out.push_back({i, j});
    }
  return out;
}

AuditReport optimality_audit(const Necklace& t) {
  AuditReport rep;
  rep.title = "necklace optimality";
  const int n = static_cast<int>(t.pearls.size());
  double rmax = 0;
  for (const auto& b : t.pearls) rmax = std::max(rmax, b.radius.get_d());
  GridIndex pearls(t.dim, std::max(4.0 * rmax, 1e-6));
  for (int i = 0; i < n; ++i) pearls.insert_ball(t.pearls[i], i);
  GridIndex cubes = cube_index(t.knot);
  int missing = 0;
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  for (int i = 0; i < n; ++i) {
    const Ball<Rational>& b = t.pearls[i];
    const Rational r2 = b.radius * b.radius;
    std::optional<Point<Rational>> witness;
    for (int ci : cubes.query_ball(b)) {
      Box<Rational> cb = box_of(t.knot.cubes[ci]);
      if (!(dist2_to_box(b.center, cb.lo, cb.hi) < r2)) continue;
      for (const auto& q : cube_samples(t.knot.cubes[ci], &b.center)) {
        Point<Rational> p = from_q(q);
        if (!(dist2(p, b.center) < r2)) continue;
        Point<double> pd = to_double(p);
        bool alone = true;
        for (int j : pearls.query(pd, pd)) {
          if (j == i) continue;
          const auto& o = t.pearls[j];
          if (dist2(p, o.center) <= o.radius * o.radius) {
            alone = false;
            break;
          }
        }
        if (alone) {
          witness = p;
          break;
        }
      }
      if (witness) break;
    }
    if (!witness) {
      ++missing;
      rep.notes.push_back("no witness for pearl " + to_string(b));
    } else {
      witnesses.push_back({to_string(b), to_string(*witness)});
    }
  }
  rep.add("every pearl has a witness of K outside the other pearls", missing == 0,
          std::to_string(n - missing) + "/" + std::to_string(n) + " pearls", true);
  rep.data["pearls"] = n;
  rep.data["witnesses"] = witnesses;
  return rep;
}

AuditReport tangle_audit(const IncreasedNecklace& t) {
  AuditReport rep;
  rep.title = "trivial tangle (partial check)";
  const CubicalKnot& k = t.base.knot;
  GridIndex cubes = cube_index(k);
  auto balls = t.balls();
  auto prov = t.provenance();
  int bad = 0;
  for (std::size_t bi = 0; bi < balls.size(); ++bi) {
    const auto& b = balls[bi];
    const Rational r2 = b.radius * b.radius;
    std::vector<int> meet;
    for (int ci : cubes.query_ball(b)) {
      Box<Rational> cb = box_of(k.cubes[ci]);
      if (dist2_to_box(b.center, cb.lo, cb.hi) <= r2) meet.push_back(ci);
    }
    std::vector<int> parent(meet.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int comps = static_cast<int>(meet.size());
    for (std::size_t a = 0; a < meet.size(); ++a)
      for (std::size_t c = a + 1; c < meet.size(); ++c) {
        Box<Rational> ba = box_of(k.cubes[meet[a]]), bc = box_of(k.cubes[meet[c]]);
        Box<Rational> in{Point<Rational>(ba.dim()), Point<Rational>(ba.dim())};
        bool nonempty = true;
        for (int i = 0; i < ba.dim(); ++i) {
          in.lo[i] = std::max(ba.lo[i], bc.lo[i]);
          in.hi[i] = std::min(ba.hi[i], bc.hi[i]);
          if (in.hi[i] < in.lo[i]) nonempty = false;
        }
        if (!nonempty || dist2_to_box(b.center, in.lo, in.hi) > r2) continue;
        int ra = find(static_cast<int>(a)), rc = find(static_cast<int>(c));
        if (ra != rc) {
          parent[ra] = rc;
          --comps;
        }
      }
    if (meet.empty() || comps != 1) {
      ++bad;
      rep.notes.push_back(std::string(to_string(prov[bi])) + " ball " + to_string(b) + ": K meets it in " +
                          std::to_string(comps) + " component(s)");
    }
  }
  rep.add("K ∩ B nonempty and connected for every ball", bad == 0,
          std::to_string(balls.size() - bad) + "/" + std::to_string(balls.size()) + " balls");
  rep.notes.push_back("connectivity is necessary for a trivial tangle; isotopy is not verified");
  return rep;
}

AuditReport angle_audit(const Necklace& t) {
  AuditReport rep;
  rep.title = "pearl angle table";
  std::int64_t orth = 0, tang = 0, disj = 0, other = 0;
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (auto [i, j] : near_pairs(t.pearls)) {
    auto k = classify_pair(t.pearls[i], t.pearls[j]).kind;
    switch (k) {
      case PairKind::orthogonal:
        ++orth;
        table.push_back({i, j, "2"});
        break;
      case PairKind::tangent:
        ++tang;
        table.push_back({i, j, "inf"});
        break;
      case PairKind::disjoint: ++disj; break;
      default:
        ++other;
        rep.notes.push_back("pair " + to_string(t.pearls[i]) + " / " + to_string(t.pearls[j]) + ": " +
                            to_string(k));
    }
  }
  const std::int64_t n = static_cast<std::int64_t>(t.pearls.size());
  const std::int64_t far = n * (n - 1) / 2 - orth - tang - other;
  rep.add("pearl pairs disjoint, tangent or orthogonal (exact)", other == 0,
          std::to_string(orth) + " orthogonal (n_ij = 2), " + std::to_string(tang) + " tangent, " +
              std::to_string(far) + " disjoint, " + std::to_string(other) + " other");
  rep.data["orthogonal"] = orth;
  rep.data["tangent"] = tang;
  rep.data["disjoint"] = far;
  rep.data["other"] = other;
  rep.data["n_ij"] = table;
  (void)disj;
  return rep;
}

}  // namespace pearl
