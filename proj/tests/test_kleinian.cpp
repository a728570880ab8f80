#include "doctest.h"
#include "golden.hpp"
#include "oracles.hpp"

#include "pearl/cubeknot.hpp"
#include "pearl/kleinian.hpp"
#include "pearl/necklace.hpp"

#include <cmath>
#include <cstring>
#include <set>

using namespace pearl;
using oracle::pt;

namespace {

IncreasedNecklace necklace_of(const std::string& name) {
  return increase_necklace(build_necklace(sample_knot(name, 1)));
}

std::vector<Ball<Rational>> tangent_pair() { return {{pt({0, 0}), 1}, {pt({2, 0}), 1}}; }

// rational points on the unit sphere in R^3
std::vector<Point<Rational>> unit_directions() {
  std::vector<Point<Rational>> out;
  const Rational a = ratio(3, 5), b = ratio(4, 5), c = ratio(2, 3), e = ratio(1, 3);
  for (int s = 0; s < 8; ++s) {
    Rational x = s & 1 ? -a : a, y = s & 2 ? -b : b;
    out.push_back(pt({x, y, 0}));
    out.push_back(pt({0, x, y}));
    Rational u = s & 1 ? -c : c, v = s & 2 ? -c : c, w = s & 4 ? -e : e;
    out.push_back(pt({u, v, w}));
    out.push_back(pt({w, u, v}));
  }
  return out;  // 32
}

bool same_entries(const GenerationLedger& a, const GenerationLedger& b) {
  if (a.entries.size() != b.entries.size() || a.gen_begin != b.gen_begin || a.levels != b.levels)
    return false;
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    const auto& x = a.entries[k];
    const auto& y = b.entries[k];
    // bit-exact doubles
    if (x.ball.center.dim != y.ball.center.dim) return false;
    for (int i = 0; i < x.ball.center.dim; ++i)
      if (std::memcmp(&x.ball.center[i], &y.ball.center[i], sizeof(double)) != 0) return false;
    if (std::memcmp(&x.ball.radius, &y.ball.radius, sizeof(double)) != 0) return false;
    if (x.exact != y.exact || x.word != y.word || x.origin != y.origin || x.leaf != y.leaf) return false;
  }
  for (std::size_t g = 0; g < a.stages.size(); ++g)
    if (a.stages[g].count != b.stages[g].count || a.stages[g].level != b.stages[g].level ||
        a.stages[g].fixed != b.stages[g].fixed || a.stages[g].duplicates != b.stages[g].duplicates ||
        a.stages[g].skipped != b.stages[g].skipped)
      return false;
  return true;
}

std::set<std::pair<std::string, int>> exact_set(const GenerationLedger& l) {
  std::set<std::pair<std::string, int>> s;
  for (const auto& e : l.entries) s.insert({to_string(*e.exact), e.generation});
  return s;
}

}  // namespace

TEST_CASE("presentations") {
  auto orth = presentation_of({{pt({0, 0}), 1}, {pt({1, 1}), 1}});
  CHECK(orth.generators == 2);
  CHECK(orth.commuting == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(orth.commute(1, 0));
  auto tan = presentation_of(tangent_pair());
  CHECK(tan.commuting.empty());
  CHECK(tan.angle[0][1] == 0);
  CHECK(orth.to_string() != tan.to_string());
  CHECK_THROWS_AS(presentation_of({{pt({0, 0}), 1}, {pt({1, 0}), 1}}), Error);

  auto sq = build_necklace(sample_knot("trivial", 1));
  auto p = presentation(sq);
  CHECK(p.generators == 4);
  CHECK(p.commuting.size() == 4);
  for (auto [i, j] : p.commuting) {
    CHECK(classify_pair(sq.pearls[i], sq.pearls[j]).kind == PairKind::orthogonal);
    CHECK(p.angle[i][j] == p.angle[j][i]);
  }
  // only pearls generate; added balls do not
  auto tref = necklace_of("trefoil");
  CHECK(presentation(tref.base).generators == static_cast<int>(tref.base.pearls.size()));
}

TEST_CASE("depth 0 is the increased necklace") {
  auto t = necklace_of("trefoil");
  OrbitOptions o;
  auto l = orbit_stage(t, o);
  CHECK(l.depth() == 0);
  CHECK(l.entries.size() == t.balls().size());
  std::multiset<std::string> a, b;
  for (const auto& e : l.entries) a.insert(to_string(*e.exact));
  for (const auto& x : t.balls()) b.insert(to_string(x));
  CHECK(a == b);
}

TEST_CASE("tangent pair follows the closed-form chain") {
  // generation g: B(1 -+ 1/(2g+1), 1/(2g+1)), two balls per generation
  auto pair = tangent_pair();
  OrbitOptions o;
  o.depth = 7;
  o.exact_depth = 4;
  auto l = orbit_stage(pair, pair, o);
  REQUIRE(l.depth() == 7);
  for (int g = 1; g <= 7; ++g) {
    CAPTURE(g);
    REQUIRE(l.generation_size(g) == 2);
    const Rational r = ratio(1, 2 * g + 1);
    const auto& lo = l.entries[l.gen_begin[g]];
    const auto& hi = l.entries[l.gen_begin[g] + 1];
    CHECK(static_cast<int>(lo.word.size()) == g);
    if (g <= 4) {
      REQUIRE(lo.exact.has_value());
      CHECK(*lo.exact == Ball<Rational>{pt({1 - r, 0}), r});
      CHECK(*hi.exact == Ball<Rational>{pt({1 + r, 0}), r});
    } else {
      CHECK_FALSE(lo.exact.has_value());
      const double rd = 1.0 / (2 * g + 1);
      CHECK(std::abs(lo.ball.center[0] - (1 - rd)) < 1e-10);
      CHECK(std::abs(hi.ball.center[0] - (1 + rd)) < 1e-10);
      CHECK(std::abs(lo.ball.radius - rd) < 1e-10);
    }
  }
  CHECK(l.entries[l.gen_begin[1]].exact == Ball<Rational>{pt({ratio(2, 3), 0}), ratio(1, 3)});
  CHECK(l.stages[1].skipped == 2);  // I_j(B_j): the mirror center lies in the ball
}

TEST_CASE("words act letter by letter") {
  auto t = necklace_of("trivial");
  const auto& mirrors = t.base.pearls;
  auto balls = t.balls();
  OrbitOptions o;
  o.depth = 4;
  auto l = orbit_stage(t, o);
  auto dirs = unit_directions();
  int checked = 0;
  for (std::size_t k = 0; k < l.entries.size(); ++k) {
    const auto& e = l.entries[k];
    if (e.generation == 0) continue;
    CHECK(is_reduced(e.word));
    CHECK(static_cast<int>(e.word.size()) == e.generation);
    REQUIRE(e.exact.has_value());
    const auto& src = balls[e.origin];
    for (const auto& u : dirs) {
      Point<Rational> x = src.center + scaled(u, src.radius);
      for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) x = invert_point(mirrors[*it], x);
      CHECK(dist2(x, e.exact->center) == e.exact->radius * e.exact->radius);
    }
    ++checked;
  }
  CHECK(checked > 10);

  // floating generations beyond the exact depth
  o.depth = 6;
  o.exact_depth = 2;
  auto f = orbit_stage(t, o);
  for (std::size_t k = f.gen_begin[3]; k < f.entries.size(); k += 5) {
    const auto& e = f.entries[k];
    CHECK_FALSE(e.exact.has_value());
    const auto& src = balls[e.origin];
    for (const auto& u : dirs) {
      Point<double> x = to_double(src.center + scaled(u, src.radius));
      for (auto it = e.word.rbegin(); it != e.word.rend(); ++it)
        x = invert_point(to_double(mirrors[*it]), x);
      CHECK(std::abs(std::sqrt(dist2(x, e.ball.center)) - e.ball.radius) < 1e-9);
    }
  }
}

TEST_CASE("dedup absorbs the commuting relations") {
  auto t = necklace_of("trivial");
  const auto& m = t.base.pearls;
  auto p = presentation(t.base);
  OrbitOptions o;
  o.depth = 2;
  auto l = orbit_stage(t, o);
  std::set<std::string> seen;
  for (const auto& e : l.entries) CHECK(seen.insert(to_string(*e.exact)).second);
  for (auto [i, j] : p.commuting)
    for (const auto& b : t.balls()) {
      if (contains_mirror_center(m[j], b) || contains_mirror_center(m[i], b)) continue;
      auto bj = invert_ball(m[j], b), bi = invert_ball(m[i], b);
      if (contains_mirror_center(m[i], bj) || contains_mirror_center(m[j], bi)) continue;
      auto ij = invert_ball(m[i], bj);
      CHECK(ij == invert_ball(m[j], bi));
      CHECK(seen.count(to_string(ij)) == 1);
    }
}

TEST_CASE("orthogonal mirrors fix the ball") {
  auto t = necklace_of("trefoil");
  const auto& m = t.base.pearls;
  std::size_t fixed = 0;
  for (const auto& mj : m)
    for (const auto& b : t.balls())
      if (classify_pair(mj, b).kind == PairKind::orthogonal) {
        CHECK(invert_ball(mj, b) == b);
        ++fixed;
      }
  OrbitOptions o;
  o.depth = 1;
  auto l = orbit_stage(t, o);
  CHECK(l.stages[1].fixed == fixed);
  CHECK(l.generation_size(1) == golden()["orbit"]["trefoil"]["generations"][0].get<std::size_t>());
}

TEST_CASE("enumeration is deterministic across thread counts") {
  auto t = necklace_of("trefoil");
  OrbitOptions o;
  o.depth = 2;
  o.min_radius = 0.05;
  auto balls = t.balls();
  auto ref = orbit_stage_serial(balls, t.base.pearls, o);
  for (int n : {1, 2, 8}) {
    o.threads = n;
    CHECK(same_entries(orbit_stage(t, o), ref));
  }
  auto counts = golden()["orbit"]["trefoil"]["generations"];
  CHECK(ref.generation_size(1) == counts[0].get<std::size_t>());
  CHECK(ref.generation_size(2) == counts[1].get<std::size_t>());
  auto a = nesting_audit(ref, {});
  NestingOptions par;
  par.threads = 8;
  CHECK(nesting_audit(ref, par).machine() == a.machine());
}

TEST_CASE("normal-form words give the same balls as dedup") {
  for (auto [name, depth] : std::vector<std::pair<std::string, int>>{{"trivial", 3}, {"trefoil", 1}}) {
    CAPTURE(name);
    auto t = necklace_of(name);
    OrbitOptions o;
    o.depth = depth;
    auto dedup = orbit_stage(t, o);
    o.mode = OrbitMode::normal_form;
    auto nf = orbit_stage(t, o);
    CHECK(exact_set(dedup) == exact_set(nf));
  }
  auto sq = presentation(build_necklace(sample_knot("trivial", 1)));
  auto words = normal_form_words(sq, 3);
  // 4 involutions, 4 commuting pairs forming a square: growth 1, 4, 8, 12
  CHECK(words[0].size() == 1);
  CHECK(words[1].size() == 4);
  CHECK(words[2].size() == 8);
  CHECK(words[3].size() == 12);
  for (const auto& level : words)
    for (const auto& w : level) CHECK(is_reduced(w));
}

TEST_CASE("even subgroup") {
  auto pair = tangent_pair();
  OrbitOptions o;
  o.depth = 2;
  o.even_only = true;
  auto l = orbit_stage(pair, pair, o);
  CHECK(l.group == "even subgroup");
  CHECK(l.generation_size(1) == 0);
  REQUIRE(l.generation_size(2) == 2);
  for (std::size_t k = l.gen_begin[2]; k < l.gen_begin[3]; ++k) {
    const auto& w = l.entries[k].word;
    CHECK(((w == Word{0, 1}) || (w == Word{1, 0})));
  }
  // same limit points: clouds agree within epsilon
  o.depth = 12;
  o.exact_depth = 12;
  auto even = limit_cloud(orbit_stage(pair, pair, o), 0.05);
  o.even_only = false;
  auto full = limit_cloud(orbit_stage(pair, pair, o), 0.05);
  REQUIRE_FALSE(even.points.empty());
  auto near = [](const LimitCloud& a, const LimitCloud& b) {
    for (const auto& p : a.points) {
      double best = 1e9;
      for (const auto& q : b.points) best = std::min(best, std::sqrt(dist2(p.center, q.center)));
      if (best > 0.05) return false;
    }
    return true;
  };
  CHECK(near(even, full));
  CHECK(near(full, even));

  auto t = necklace_of("trivial");
  OrbitOptions e;
  e.depth = 1;
  auto one = even_subgroup_ledger(t, e);
  CHECK(one.generation_size(1) == 0);
}

TEST_CASE("nesting audit") {
  // disjoint mirrors nest strictly; a 10% inflation is caught and named
  std::vector<Ball<Rational>> pair{{pt({0, 0}), 1}, {pt({2 + ratio(1, 50), 0}), 1}};
  OrbitOptions o;
  o.depth = 3;
  auto l = orbit_stage(pair, pair, o);
  auto ok = nesting_audit(l);
  CHECK(ok.pass());
  auto bad = l;
  auto& e = bad.entries[bad.gen_begin[1]];
  e.exact->radius *= ratio(11, 10);
  e.ball.radius *= 1.1;
  auto rep = nesting_audit(bad);
  CHECK_FALSE(rep.pass());
  bool named = false;
  for (const auto& a : rep.entries) named = named || a.detail.find(to_string(*e.exact)) != std::string::npos;
  CHECK(named);

  // tangent mirrors: each image touches its parent's sphere at the tangency
  // point, so nesting holds in the closure only
  auto tan = tangent_pair();
  auto tl = nesting_audit(orbit_stage(tan, tan, o));
  CHECK_FALSE(tl.pass());
  for (const auto& g : tl.data["generations"]) CHECK(g["closed"] == g["balls"]);
  auto radii = tl.data["max_radius"].get<std::vector<double>>();
  for (std::size_t k = 1; k < radii.size(); ++k) CHECK(radii[k] < radii[k - 1]);

  auto sq = necklace_of("trivial");
  o.depth = 3;
  auto sr = nesting_audit(orbit_stage(sq, o));
  for (const auto& g : sr.data["generations"]) CHECK(g["closed"] == g["balls"]);

  OrbitOptions z;
  CHECK_FALSE(nesting_audit(orbit_stage(sq, z)).pass());
}

TEST_CASE("limit cloud") {
  auto pair = tangent_pair();
  OrbitOptions o;
  o.depth = 6;
  auto l = orbit_stage(pair, pair, o);
  auto c = limit_cloud(l, 0.4);
  CHECK(c.points.size() == 12);  // generations 1..6, all radii below 0.4
  for (const auto& p : c.points) {
    CHECK(p.radius < 0.4);
    CHECK(std::abs(p.center[0] - 1) <= p.radius + 1e-12);
  }
  for (std::size_t k = 1; k < c.points.size(); ++k)
    CHECK_FALSE(lex_less(c.points[k].center, c.points[k - 1].center));
  CHECK(limit_cloud(l, 1e-6).points.empty());
  CHECK_FALSE(limit_cloud(l, 1e-6).notes.empty());
  // epsilon above every generation-1 radius keeps all balls of generations >= 1
  CHECK(limit_cloud(l, 0.34).points.size() == 12);
}

TEST_CASE("knot sums") {
  CHECK(knot_sum_ledger(1, 1) == std::pair<BigInt, BigInt>{1, 1});
  CHECK(knot_sum_ledger(2, 1) == std::pair<BigInt, BigInt>{2, 2});
  CHECK(knot_sum_ledger(3, 2) == std::pair<BigInt, BigInt>{32, 32});
  BigInt big = knot_sum_ledger(58, 4).first;
  CHECK(big == BigInt(1) << 231);
  CHECK_THROWS_AS(knot_sum_ledger(0, 1), InputError);
}

TEST_CASE("box dimension") {
  std::vector<Point<double>> circle;
  for (int k = 0; k < 20000; ++k) {
    double a = 2 * M_PI * k / 20000;
    circle.push_back(Point<double>{std::cos(a), std::sin(a), 0.0});
  }
  auto est = box_dimension(circle);
  CHECK(std::abs(est.slope - 1.0) < 0.1);
  std::vector<Point<double>> edge;  // boundary grid of a square
  for (int k = 0; k < 4000; ++k) {
    double s = k / 1000.0;
    double t = s - std::floor(s);
    int side = static_cast<int>(s);
    edge.push_back(side == 0 ? Point<double>{t, 0.0} : side == 1 ? Point<double>{1.0, t}
                             : side == 2 ? Point<double>{1 - t, 1.0} : Point<double>{0.0, 1 - t});
  }
  CHECK(std::abs(box_dimension(edge).slope - 1.0) < 0.1);
  try {
    box_dimension(std::vector<Point<double>>(50, Point<double>{0.0, 0.0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_data);
  }
}

TEST_CASE("explosion guard") {
  auto t = necklace_of("trefoil");
  OrbitOptions o;
  o.depth = 3;
  o.cap = 2000;
  auto l = orbit_stage(t, o);
  CHECK(l.capped);
  CHECK(l.entries.size() <= 2000);
  CHECK_FALSE(l.notes.empty());
  CHECK(limit_cloud(l, 0.1).notes.back().find("capped") != std::string::npos);
}
