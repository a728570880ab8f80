#include "pearl/obc.hpp"

#include "pearl/parallel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace pearl {

namespace {

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Values v in [lo, hi] with v = 0 (mod 4) when integer, v = 2 (mod 4) otherwise.
std::vector<std::int64_t> axis_values(std::int64_t lo, std::int64_t hi, bool integer) {
  std::vector<std::int64_t> out;
  std::int64_t off = integer ? 0 : 2;
  for (std::int64_t v = 4 * ceil_div(lo - off, 4) + off; v <= hi; v += 4) out.push_back(v);
  return out;
}

template <class F>
void for_each_product(const std::vector<std::vector<std::int64_t>>& vals, int d, F&& f) {
  for (const auto& v : vals)
    if (v.empty()) return;
  std::vector<std::size_t> idx(d, 0);
  QPoint p(d);
  for (int i = 0; i < d; ++i) p[i] = vals[i][0];
  while (true) {
    f(p);
    int i = d - 1;
    while (i >= 0) {
      if (++idx[i] < vals[i].size()) {
        p[i] = vals[i][idx[i]];
        break;
      }
      idx[i] = 0;
      p[i] = vals[i][0];
      --i;
    }
    if (i < 0) return;
  }
}

// Calls f(center, radius) for every covering-ball center inside the window.
template <class F>
void for_each_center(const Box<std::int64_t>& w, int d, F&& f) {
  std::vector<std::vector<std::int64_t>> vals(d);
  for (int i = 0; i < d; ++i) vals[i] = axis_values(w.lo[i], w.hi[i], true);
  for_each_product(vals, d, [&](const QPoint& c) {
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) s += c[i] / 4;
    if (s % 2 == 0) f(c, std::int64_t{4});
  });
  const int h = half_ball_integer_axes(d);
  if (h < 0) return;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (__builtin_popcount(mask) != h) continue;
    for (int i = 0; i < d; ++i) vals[i] = axis_values(w.lo[i], w.hi[i], (mask >> i) & 1u);
    for_each_product(vals, d, [&](const QPoint& c) { f(c, std::int64_t{2}); });
  }
}

std::int64_t qdist2_to_box(const QPoint& p, const Box<std::int64_t>& b) {
  return dist2_to_box(p, b.lo, b.hi);
}

Point<Rational> from_quarter(const QPoint& q) {
  Point<Rational> p(q.dim);
  for (int i = 0; i < q.dim; ++i) p[i] = ratio(q[i], 4);
  return p;
}

std::string qball_string(const QPoint& c, std::int64_t r) {
  return to_string(to_ball(LatticeBall{c, r}));
}

bool lattice_less(const LatticeBall& a, const LatticeBall& b) {
  if (lex_less(a.center, b.center)) return true;
  if (lex_less(b.center, a.center)) return false;
  return a.radius < b.radius;
}

Box<std::int64_t> to_quarter_box(const Box<Rational>& b) {
  return {to_quarter(b.lo), to_quarter(b.hi)};
}

Point<Rational> rational_point(std::initializer_list<int> num, int den = 1) {
  Point<Rational> p(static_cast<int>(num.size()));
  int i = 0;
  for (int v : num) p[i++] = ratio(v, den);
  return p;
}

void add_even_vertices(std::vector<Ball<Rational>>& out, int d) {
  for (unsigned m = 0; m < (1u << d); ++m) {
    if (__builtin_popcount(m) % 2) continue;
    Point<Rational> p(d);
    for (int i = 0; i < d; ++i) p[i] = (m >> (d - 1 - i)) & 1u;
    out.push_back(Ball<Rational>{p, Rational(1)});
  }
}

// Centers of the faces of I^d with exactly `fixed` coordinates in {0,1}.
void add_face_centers(std::vector<Ball<Rational>>& out, int d, int fixed) {
  for (unsigned axes = 0; axes < (1u << d); ++axes) {
    if (__builtin_popcount(axes) != fixed) continue;
    for (unsigned vals = 0; vals < (1u << fixed); ++vals) {
      Point<Rational> p(d);
      int k = 0;
      for (int i = 0; i < d; ++i) {
        if ((axes >> (d - 1 - i)) & 1u)
          p[i] = (vals >> (fixed - 1 - k++)) & 1u;
        else
          p[i] = ratio(1, 2);
      }
      out.push_back(Ball<Rational>{p, ratio(1, 2)});
    }
  }
}

}  // namespace

Ball<Rational> to_ball(const LatticeBall& b) {
  return Ball<Rational>{from_quarter(b.center), ratio(b.radius, 4)};
}

QPoint to_quarter(const Point<Rational>& p) {
  QPoint q(p.dim);
  for (int i = 0; i < p.dim; ++i) {
    Rational v = p[i] * 4;
    if (v.get_den() != 1 || !v.get_num().fits_slong_p())
      throw InputError("coordinate " + to_string(p[i]) + " is not a multiple of 1/4");
    q[i] = v.get_num().get_si();
  }
  return q;
}

Box<Rational> cube_box(int d, const Rational& lo, const Rational& hi) {
  Box<Rational> b{Point<Rational>(d), Point<Rational>(d)};
  for (int i = 0; i < d; ++i) {
    b.lo[i] = lo;
    b.hi[i] = hi;
  }
  return b;
}

Box<Rational> point_box(const Point<Rational>& p) { return {p, p}; }

void require_obc_dim(int d) {
  if (d < 2 || d > 7)
    throw GeometryError(ErrorKind::unsupported_dimension,
                        "no orthogonal ball covering for dimension " + std::to_string(d));
}

int half_ball_integer_axes(int d) {
  switch (d) {
    case 5: return 0;
    case 6: return 1;
    case 7: return 2;
    default: return -1;
  }
}

std::int64_t center_radius(const QPoint& c, int d) {
  int integer = 0;
  std::int64_t s = 0;
  for (int i = 0; i < d; ++i) {
    std::int64_t m = mod4(c[i]);
    if (m == 1 || m == 3) return 0;
    if (m == 0) {
      ++integer;
      s += c[i] / 4;
    }
  }
  if (integer == d) return (s % 2 == 0) ? 4 : 0;
  return integer == half_ball_integer_axes(d) ? 2 : 0;
}

CoveringSpec obc_generators(int d) {
  require_obc_dim(d);
  CoveringSpec spec;
  spec.dim = d;
  auto& g = spec.generators;
  auto unit = [&](std::initializer_list<int> c) { g.push_back({rational_point(c), Rational(1)}); };
  switch (d) {
    case 2:
      unit({0, 0});
      unit({1, 1});
      break;
    case 3:
      unit({0, 0, 0});
      unit({1, 1, 0});
      unit({1, 0, 1});
      unit({0, 1, 1});
      break;
    case 4:
      unit({0, 0, 0, 0});
      unit({1, 1, 0, 0});
      unit({1, 0, 1, 0});
      unit({0, 1, 1, 0});
      unit({1, 1, 1, 1});
      unit({0, 1, 0, 1});
      unit({1, 0, 0, 1});
      unit({0, 0, 1, 1});
      break;
    case 5:
      unit({0, 0, 0, 0, 0});
      unit({1, 1, 0, 0, 0});
      unit({1, 0, 1, 0, 0});
      unit({0, 1, 1, 0, 0});
      unit({1, 1, 1, 1, 0});
      unit({0, 1, 0, 1, 0});
      unit({1, 0, 0, 1, 0});
      unit({0, 0, 1, 1, 0});
      unit({1, 0, 0, 0, 1});
      unit({0, 1, 0, 0, 1});
      unit({0, 0, 1, 0, 1});
      unit({0, 0, 0, 1, 1});
      unit({0, 1, 1, 1, 1});
      unit({1, 0, 1, 1, 1});
      unit({1, 1, 0, 1, 1});
      unit({1, 1, 1, 0, 1});
      g.push_back({rational_point({1, 1, 1, 1, 1}, 2), ratio(1, 2)});
      break;
    case 6:
      add_even_vertices(g, 6);
      add_face_centers(g, 6, 1);
      break;
    case 7:
      add_even_vertices(g, 7);
      add_face_centers(g, 7, 2);
      break;
  }
  spec.propagation =
      "reflections in the facets of I^d; unit balls at integer points with even coordinate sum";
  if (d == 5) spec.propagation += "; half balls at cube centers";
  if (d == 6) spec.propagation += "; half balls at facet centers";
  if (d == 7) spec.propagation += "; half balls at 5-face centers (facet construction only)";
  return spec;
}

std::vector<LatticeBall> lattice_balls_meeting(const Box<std::int64_t>& box, int d) {
  require_obc_dim(d);
  Box<std::int64_t> w = box;
  for (int i = 0; i < d; ++i) {
    w.lo[i] -= 4;
    w.hi[i] += 4;
  }
  std::vector<LatticeBall> out;
  for_each_center(w, d, [&](const QPoint& c, std::int64_t r) {
    if (qdist2_to_box(c, box) <= r * r) out.push_back({c, r});
  });
  std::sort(out.begin(), out.end(), lattice_less);
  return out;
}

std::vector<Ball<Rational>> balls_meeting(const Box<Rational>& region, int d) {
  require_obc_dim(d);
  if (region.dim() != d)
    throw GeometryError(ErrorKind::dimension_mismatch, "region dimension differs from d");
  Box<std::int64_t> w{QPoint(d), QPoint(d)};
  for (int i = 0; i < d; ++i) {
    w.lo[i] = 4 * (floor_of(region.lo[i]).get_si() - 1);
    w.hi[i] = 4 * (ceil_of(region.hi[i]).get_si() + 1);
  }
  std::vector<Ball<Rational>> out;
  for_each_center(w, d, [&](const QPoint& c, std::int64_t r) {
    Point<Rational> pc = from_quarter(c);
    Rational rr = ratio(r, 4);
    if (dist2_to_box(pc, region.lo, region.hi) <= rr * rr) out.push_back({pc, rr});
  });
  std::sort(out.begin(), out.end(), ball_less<Rational>);
  return out;
}

// ---------------------------------------------------------------------------
// Pair census

namespace {

struct Offset {
  QPoint delta;
  std::int64_t target_radius;
};

unsigned integer_mask(const QPoint& c) {
  unsigned m = 0;
  for (int i = 0; i < c.dim; ++i)
    if (mod4(c[i]) == 0) m |= 1u << i;
  return m;
}

// Offsets from a center with the given integer-mask to every center class
// within reach r_s + r_t.
std::vector<Offset> offsets_for(unsigned mask, std::int64_t rs, int d) {
  std::vector<Offset> out;
  const int h = half_ball_integer_axes(d);
  QPoint delta(d);
  std::function<void(int, std::int64_t, int)> rec = [&](int i, std::int64_t n2, int tint) {
    if (n2 > 64) return;
    if (i == d) {
      std::int64_t rt = tint == d ? 4 : (tint == h ? 2 : 0);
      if (rt == 0 || n2 == 0 || n2 > (rs + rt) * (rs + rt)) return;
      out.push_back({delta, rt});
      return;
    }
    for (std::int64_t v = -8; v <= 8; v += 2) {
      delta[i] = v;
      bool src_int = (mask >> i) & 1u;
      bool tgt_int = src_int == (mod4(v) == 0);
      rec(i + 1, n2 + v * v, tint + (tgt_int ? 1 : 0));
    }
    delta[i] = 0;
  };
  rec(0, 0, 0);
  return out;
}

void tally(PairCensus& c, PairKind k, const LatticeBall& a, const QPoint& t, std::int64_t rt) {
  ++c.near_pairs;
  switch (k) {
    case PairKind::disjoint: ++c.disjoint; break;
    case PairKind::tangent: ++c.tangent; break;
    case PairKind::orthogonal: ++c.orthogonal; break;
    default:
      ++c.other;
      if (c.violations.size() < 50)
        c.violations.push_back(qball_string(a.center, a.radius) + " vs " + qball_string(t, rt) +
                               ": " + to_string(k));
  }
}

struct CensusContext {
  int d;
  Box<std::int64_t> patch;
  std::vector<LatticeBall> balls;
  std::map<unsigned, std::vector<Offset>> offsets;
};

CensusContext make_context(int d, const Box<std::int64_t>& patch) {
  CensusContext ctx{d, patch, lattice_balls_meeting(patch, d), {}};
  for (const auto& b : ctx.balls) {
    unsigned m = integer_mask(b.center);
    if (!ctx.offsets.count(m)) ctx.offsets[m] = offsets_for(m, b.radius, d);
  }
  return ctx;
}

void census_one(const CensusContext& ctx, std::size_t idx, PairCensus& out) {
  const LatticeBall& s = ctx.balls[idx];
  const auto& offs = ctx.offsets.at(integer_mask(s.center));
  QPoint t(ctx.d);
  for (const auto& o : offs) {
    for (int i = 0; i < ctx.d; ++i) t[i] = s.center[i] + o.delta[i];
    if (!lex_less(s.center, t)) continue;
    if (center_radius(t, ctx.d) != o.target_radius) continue;
    if (qdist2_to_box(t, ctx.patch) > o.target_radius * o.target_radius) continue;
    Ball<std::int64_t> a{s.center, s.radius}, b{t, o.target_radius};
    tally(out, classify_pair(a, b).kind, s, t, o.target_radius);
  }
}

void absorb(PairCensus& into, const PairCensus& part) {
  into.near_pairs += part.near_pairs;
  into.disjoint += part.disjoint;
  into.tangent += part.tangent;
  into.orthogonal += part.orthogonal;
  into.other += part.other;
  for (const auto& v : part.violations)
    if (into.violations.size() < 50) into.violations.push_back(v);
}

}  // namespace

PairCensus pair_census_serial(int d, const Box<std::int64_t>& patch) {
  CensusContext ctx = make_context(d, patch);
  PairCensus c;
  c.balls = static_cast<std::int64_t>(ctx.balls.size());
  for (std::size_t i = 0; i < ctx.balls.size(); ++i) census_one(ctx, i, c);
  return c;
}

PairCensus pair_census(int d, const Box<std::int64_t>& patch, int threads) {
  CensusContext ctx = make_context(d, patch);
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (ctx.balls.size() + kBlock - 1) / kBlock;
  std::vector<PairCensus> parts(blocks);
  parallel_for(static_cast<std::int64_t>(blocks), threads, [&](std::int64_t b) {
    std::size_t end = std::min(ctx.balls.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) census_one(ctx, i, parts[b]);
  });
  PairCensus c;
  c.balls = static_cast<std::int64_t>(ctx.balls.size());
  for (const auto& p : parts) absorb(c, p);
  return c;
}

// ---------------------------------------------------------------------------
// Covering grid

namespace {

// Squared distance (quarter units) from p to the nearest unit-ball center:
// nearest point of the even-sum lattice by rounding, then re-rounding the
// worst coordinate when the parity is wrong.
std::int64_t nearest_unit_dist2(const QPoint& p) {
  const int d = p.dim;
  QPoint q(d);
  std::int64_t parity = 0, worst = -1;
  int wi = 0;
  for (int i = 0; i < d; ++i) {
    std::int64_t k = floor_div(p[i] + 2, 4);
    q[i] = 4 * k;
    parity += k;
    std::int64_t e = std::abs(p[i] - q[i]);
    if (e > worst) {
      worst = e;
      wi = i;
    }
  }
  if (parity % 2 != 0) q[wi] += (p[wi] >= q[wi]) ? 4 : -4;
  return dist2(p, q);
}

std::int64_t nearest_half_dist2(const QPoint& p, int d) {
  const int h = half_ball_integer_axes(d);
  if (h < 0) return std::numeric_limits<std::int64_t>::max();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (__builtin_popcount(mask) != h) continue;
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) {
      std::int64_t q = ((mask >> i) & 1u) ? 4 * floor_div(p[i] + 2, 4) : 4 * floor_div(p[i], 4) + 2;
      s += (p[i] - q) * (p[i] - q);
    }
    best = std::min(best, s);
  }
  return best;
}

struct GridResult {
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  std::vector<std::string> misses;
};

}  // namespace

AuditReport verify_obc_patch(int d, const Box<Rational>& patch, const PatchOptions& opts) {
  require_obc_dim(d);
  if (patch.dim() != d) throw InputError("patch dimension differs from d");
  AuditReport rep;
  rep.title = "obc patch audit d=" + std::to_string(d);
  const Box<std::int64_t> q = to_quarter_box(patch);
  for (int i = 0; i < d; ++i)
    if (q.lo[i] > q.hi[i]) throw InputError("empty patch");

  PairCensus c = pair_census(d, q, opts.threads);
  {
    std::string detail = std::to_string(c.balls) + " balls, " + std::to_string(c.near_pairs) +
                         " pairs within reach: " + std::to_string(c.orthogonal) + " orthogonal, " +
                         std::to_string(c.tangent) + " tangent, " + std::to_string(c.disjoint) +
                         " disjoint, " + std::to_string(c.other) + " other";
    rep.add("pairwise classification (exact)", c.other == 0, detail);
    for (const auto& v : c.violations) rep.notes.push_back("violation: " + v);
    rep.data["balls"] = c.balls;
    rep.data["pairs_within_reach"] = c.near_pairs;
    rep.data["orthogonal"] = c.orthogonal;
    rep.data["tangent"] = c.tangent;
    rep.data["disjoint_within_reach"] = c.disjoint;
    rep.data["violations"] = c.other;
  }

  Rational step = opts.step ? *opts.step : (d <= 5 ? ratio(1, 4) : ratio(1, 2));
  Rational step_q = step * 4;
  if (step <= 0 || step_q.get_den() != 1) throw InputError("grid step must be a positive multiple of 1/4");
  const std::int64_t sq = step_q.get_num().get_si();
  {
    std::vector<std::int64_t> counts(d);
    for (int i = 0; i < d; ++i) counts[i] = (q.hi[i] - q.lo[i]) / sq + 1;
    const bool skeleton_only = d == 7;
    std::vector<GridResult> parts(counts[0]);
    parallel_for(counts[0], opts.threads, [&](std::int64_t i0) {
      GridResult& r = parts[i0];
      QPoint p(d);
      std::vector<std::int64_t> idx(d, 0);
      idx[0] = i0;
      while (true) {
        int integer = 0;
        for (int i = 0; i < d; ++i) {
          p[i] = q.lo[i] + idx[i] * sq;
          if (mod4(p[i]) == 0) ++integer;
        }
        if (!skeleton_only || integer >= 1) {
          ++r.samples;
          bool hit = nearest_unit_dist2(p) <= 16 || nearest_half_dist2(p, d) <= 4;
          if (hit) ++r.hits;
          else if (r.misses.size() < 20) r.misses.push_back(to_string(from_quarter(p)));
        }
        int i = d - 1;
        while (i >= 1 && ++idx[i] >= counts[i]) idx[i--] = 0;
        if (i < 1) break;
      }
    });
    GridResult g;
    for (const auto& r : parts) {
      g.samples += r.samples;
      g.hits += r.hits;
      for (const auto& m : r.misses)
        if (g.misses.size() < 20) g.misses.push_back(m);
    }
    std::string detail = std::to_string(g.hits) + "/" + std::to_string(g.samples) +
                         " grid samples covered, step " + to_string(step);
    if (skeleton_only) detail += ", samples restricted to the 6-skeleton of the unit cubulation";
    rep.add("covering grid", g.hits == g.samples, detail, true);
    for (const auto& m : g.misses) rep.notes.push_back("uncovered sample " + m);
    rep.data["grid_samples"] = g.samples;
    rep.data["grid_hits"] = g.hits;
    rep.data["grid_step"] = to_string(step);
  }

  {
    CoveringSpec spec = obc_generators(d);
    bool ok = true;
    std::set<std::string> seen;
    for (const auto& b : spec.generators) {
      Rational diam = 2 * b.radius;
      ok = ok && spec.eps1 < diam && diam <= spec.eps2;
      seen.insert(to_string(diam));
    }
    std::string ds;
    for (const auto& s : seen) ds += (ds.empty() ? "" : ",") + s;
    rep.add("diameter bounds", ok, "1/2 < diam <= 2 for diameters {" + ds + "}");
  }

  if (d == 5) {
    Ball<Rational> center{rational_point({1, 1, 1, 1, 1}, 2), ratio(1, 2)};
    Ball<Rational> vertex{rational_point({0, 0, 0, 0, 0}), Rational(1)};
    auto pc = classify_pair(center, vertex);
    rep.add("center ball vs vertex ball", pc.kind == PairKind::orthogonal,
            "|c1-c2|^2 = " + to_string(pc.dist2) + " = 1 + 1/4 -> " + to_string(pc.kind));
    rep.data["center_vertex_dist2"] = to_string(pc.dist2);
  }
  if (d == 6) {
    Ball<Rational> a{rational_point({0, 1, 1, 1, 1, 1}, 2), ratio(1, 2)};
    Ball<Rational> b{rational_point({2, 1, 1, 1, 1, 1}, 2), ratio(1, 2)};
    auto pc = classify_pair(a, b);
    rep.add("opposite facet-center balls", pc.kind == PairKind::tangent,
            "distance^2 = " + to_string(pc.dist2) + " = (1/2 + 1/2)^2 -> " + to_string(pc.kind));
  }
  if (d == 7) rep.notes.push_back("d=7 family is the facet construction; covering claimed near the skeleton only");
  return rep;
}

// ---------------------------------------------------------------------------
// Flowers

std::optional<FlowerRecord> flower_at(const Point<Rational>& p, int d) {
  require_obc_dim(d);
  if (p.dim != d) throw GeometryError(ErrorKind::dimension_mismatch, "point dimension differs from d");
  FlowerRecord f{p, {}, d};
  for (auto& b : balls_meeting(point_box(p), d))
    if (dist2(b.center, p) == b.radius * b.radius) f.petals.push_back(b);
  if (static_cast<int>(f.petals.size()) != 2 * d) return std::nullopt;
  for (std::size_t i = 0; i < f.petals.size(); ++i)
    for (std::size_t j = i + 1; j < f.petals.size(); ++j) {
      auto k = classify_pair(f.petals[i], f.petals[j]).kind;
      if (k != PairKind::tangent && k != PairKind::orthogonal) return std::nullopt;
    }
  auto w = common_intersection(f.petals, Openness::closed);
  if (w.status != IntersectionStatus::single_point || !(w.point == p)) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------
// Coordinate-plane disjointness

namespace {

struct PlanePair {
  int x, y;        // ball indices
  int i, j, k;     // axes
  std::int64_t a, b, c;  // plane values (quarter units)
  PairKind kind;
  std::int64_t dist2;
};

}  // namespace

AuditReport disjointness_audit(int d, const Box<Rational>& window, const DisjointnessOptions& opts) {
  require_obc_dim(d);
  if (d < 3) throw GeometryError(ErrorKind::unsupported_dimension, "needs three distinct axes");
  AuditReport rep;
  rep.title = "coordinate-plane disjointness d=" + std::to_string(d);
  const Box<std::int64_t> w = to_quarter_box(window);

  std::vector<LatticeBall> balls;
  for_each_center(w, d, [&](const QPoint& c, std::int64_t r) { balls.push_back({c, r}); });
  std::sort(balls.begin(), balls.end(), lattice_less);

  // Planes through every integer vertex: both the origin frame and the C2
  // frame o = (1, 0, ..., 0) of the knots.
  auto plane_value_ok = [](int, std::int64_t v) { return mod4(v) == 0; };
  std::map<std::tuple<int, std::int64_t, int, std::int64_t>, std::vector<int>> planes;
  std::vector<std::set<std::int64_t>> axis_vals(d);
  for (int idx = 0; idx < static_cast<int>(balls.size()); ++idx) {
    const QPoint& c = balls[idx].center;
    for (int i = 0; i < d; ++i) {
      if (!plane_value_ok(i, c[i])) continue;
      axis_vals[i].insert(c[i]);
      for (int j = 0; j < d; ++j)
        if (j != i && plane_value_ok(j, c[j])) planes[{i, c[i], j, c[j]}].push_back(idx);
    }
  }

  struct Combo {
    int i, j, k;
    std::int64_t a, b, c;
  };
  std::vector<Combo> combos;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        if (j == i || k == i) continue;
        for (auto a : axis_vals[i])
          for (auto b : axis_vals[j])
            for (auto c : axis_vals[k]) combos.push_back({i, j, k, a, b, c});
      }

  struct ComboResult {
    std::int64_t pairs = 0, disjoint = 0;
    std::int64_t min_disjoint = std::numeric_limits<std::int64_t>::max();
    std::int64_t min_aligned = std::numeric_limits<std::int64_t>::max();
    std::int64_t sqrt8 = 0;
    std::vector<PlanePair> touching;
    std::optional<PlanePair> sqrt8_example;
  };
  std::vector<ComboResult> results(combos.size());
  static const std::vector<int> kEmpty;
  auto lookup = [&](int i, std::int64_t a, int j, std::int64_t b) -> const std::vector<int>& {
    auto it = planes.find({i, a, j, b});
    return it == planes.end() ? kEmpty : it->second;
  };
  parallel_for(static_cast<std::int64_t>(combos.size()), opts.threads, [&](std::int64_t n) {
    const Combo& cb = combos[n];
    ComboResult& r = results[n];
    const auto& A = lookup(cb.i, cb.a, cb.j, cb.b);
    const auto& B = lookup(cb.i, cb.a, cb.k, cb.c);
    // Each center lies off the other plane. A gap above 3 in the off-plane
    // coordinate means |Cj-Ck|^2 > 9: disjoint and counted without a visit.
    constexpr std::int64_t kNear = 12;
    std::vector<int> near_a, near_b;
    std::int64_t na = 0, nb = 0;
    for (int x : A) {
      std::int64_t gap = std::abs(balls[x].center[cb.k] - cb.c);
      if (gap == 0) continue;
      ++na;
      if (gap <= kNear) near_a.push_back(x);
    }
    for (int y : B) {
      std::int64_t gap = std::abs(balls[y].center[cb.j] - cb.b);
      if (gap == 0) continue;
      ++nb;
      if (gap <= kNear) near_b.push_back(y);
    }
    r.pairs = na * nb;
    r.disjoint = r.pairs - static_cast<std::int64_t>(near_a.size() * near_b.size());
    for (int x : near_a)
      for (int y : near_b) {
        const QPoint& cx = balls[x].center;
        const QPoint& cy = balls[y].center;
        Ball<std::int64_t> bx{cx, balls[x].radius}, by{cy, balls[y].radius};
        auto pc = classify_pair(bx, by);
        PlanePair pp{x, y, cb.i, cb.j, cb.k, cb.a, cb.b, cb.c, pc.kind, pc.dist2};
        bool aligned = true;
        for (int t = 0; t < d; ++t)
          if (t != cb.i && t != cb.j && t != cb.k && cx[t] != cy[t]) aligned = false;
        if (pc.kind == PairKind::disjoint) {
          ++r.disjoint;
          r.min_disjoint = std::min(r.min_disjoint, pc.dist2);
          if (aligned) r.min_aligned = std::min(r.min_aligned, pc.dist2);
          if (pc.dist2 == 8 * 16) {
            ++r.sqrt8;
            if (!r.sqrt8_example) r.sqrt8_example = pp;
          }
        } else {
          r.touching.push_back(pp);
        }
      }
  });

  std::int64_t pairs = 0, disjoint = 0, exempt = 0, sqrt8 = 0;
  std::int64_t min_nonexempt = std::numeric_limits<std::int64_t>::max();
  std::int64_t min_aligned = std::numeric_limits<std::int64_t>::max();
  std::optional<PlanePair> sqrt8_example;
  std::vector<std::string> violations;
  std::map<std::vector<std::int64_t>, std::optional<FlowerRecord>> flower_cache;
  auto cached_flower = [&](const QPoint& q) -> const std::optional<FlowerRecord>& {
    std::vector<std::int64_t> key(q.x.begin(), q.x.begin() + d);
    auto it = flower_cache.find(key);
    if (it == flower_cache.end()) it = flower_cache.emplace(key, flower_at(from_quarter(q), d)).first;
    return it->second;
  };
  for (const auto& r : results) {
    pairs += r.pairs;
    disjoint += r.disjoint;
    sqrt8 += r.sqrt8;
    min_nonexempt = std::min(min_nonexempt, r.min_disjoint);
    min_aligned = std::min(min_aligned, r.min_aligned);
    if (!sqrt8_example && r.sqrt8_example) sqrt8_example = r.sqrt8_example;
    for (const auto& pp : r.touching) {
      const LatticeBall& bx = balls[pp.x];
      const LatticeBall& by = balls[pp.y];
      // Search flower centers on the plane x_i = a, x_j = b, x_k = c that
      // lie on both boundary spheres.
      std::vector<std::vector<std::int64_t>> vals(d);
      for (int t = 0; t < d; ++t) {
        if (t == pp.i) vals[t] = {pp.a};
        else if (t == pp.j) vals[t] = {pp.b};
        else if (t == pp.k) vals[t] = {pp.c};
        else {
          std::int64_t lo = std::max(bx.center[t] - bx.radius, by.center[t] - by.radius);
          std::int64_t hi = std::min(bx.center[t] + bx.radius, by.center[t] + by.radius);
          for (std::int64_t v = 2 * ceil_div(lo, 2); v <= hi; v += 2) vals[t].push_back(v);
        }
      }
      bool found = false;
      for_each_product(vals, d, [&](const QPoint& q) {
        if (found) return;
        if (dist2(q, bx.center) != bx.radius * bx.radius) return;
        if (dist2(q, by.center) != by.radius * by.radius) return;
        if (cached_flower(q)) found = true;
      });
      if (found) {
        ++exempt;
      } else {
        min_nonexempt = std::min(min_nonexempt, pp.dist2);
        if (violations.size() < 50)
          violations.push_back(qball_string(bx.center, bx.radius) + " vs " +
                               qball_string(by.center, by.radius) + ": " + to_string(pp.kind));
      }
    }
  }
  const std::int64_t nviol = pairs - disjoint - exempt;
  rep.add("non-flower pairs disjoint (exact)", nviol == 0,
          std::to_string(pairs) + " pairs, " + std::to_string(disjoint) + " disjoint, " +
              std::to_string(exempt) + " exempt (shared flower on the intersection plane), " +
              std::to_string(nviol) + " violations");
  for (const auto& v : violations) rep.notes.push_back("violation: " + v);
  rep.data["pairs"] = pairs;
  rep.data["disjoint"] = disjoint;
  rep.data["exempt"] = exempt;
  rep.data["violations"] = nviol;
  rep.data["sqrt8_pairs"] = sqrt8;
  if (min_nonexempt != std::numeric_limits<std::int64_t>::max())
    rep.data["min_nonexempt_dist2"] = to_string(ratio(min_nonexempt, 16));
  // Pairs agreeing off the axes i, j, k realize the minimal distance in the
  // reduction; for disjoint ones |Cj-Ck|^2 = (c^j_k)^2 + (c^k_j)^2.
  if (min_aligned != std::numeric_limits<std::int64_t>::max()) {
    Rational m = ratio(min_aligned, 16);
    rep.data["min_aligned_dist2"] = to_string(m);
    rep.add("distance bound on aligned pairs", m >= 8,
            "min |Cj-Ck|^2 = " + to_string(m) + " (bound 8)");
  }
  rep.add("sqrt(8) attained", sqrt8 > 0, std::to_string(sqrt8) + " pairs at |Cj-Ck|^2 = 8");
  if (sqrt8_example) {
    rep.data["sqrt8_example"] = qball_string(balls[sqrt8_example->x].center, 4) + " vs " +
                                qball_string(balls[sqrt8_example->y].center, 4);
  }
  return rep;
}

}  // namespace pearl
