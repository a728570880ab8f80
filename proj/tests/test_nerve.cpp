#include "doctest.h"
#include "golden.hpp"
#include "oracles.hpp"

#include "pearl/necklace.hpp"
#include "pearl/nerve.hpp"
#include "pearl/obc.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace pearl;

namespace {

CubicalKnot fixture(const std::string& file) { return load_knot(std::string(PEARL_DATA_DIR) + "/knots/" + file); }

std::vector<Ball<Rational>> flower(const Point<Rational>& p, int d) { return flower_at(p, d)->petals; }

// Betti numbers over Q from the boundary ranks; an independent route to the
// free part of the Smith normal form computation.
std::vector<int> rational_betti(const SimplicialComplex& c) {
  std::vector<int> rank(c.top_dim() + 2, 0);
  for (int k = 1; k <= c.top_dim(); ++k) {
    std::vector<std::vector<Rational>> m(c.count(k - 1), std::vector<Rational>(c.count(k), 0));
    for (std::size_t col = 0; col < c.simplices[k].size(); ++col) {
      const auto& s = c.simplices[k][col];
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) f.push_back(s[i]);
        auto it = std::lower_bound(c.simplices[k - 1].begin(), c.simplices[k - 1].end(), f);
        m[it - c.simplices[k - 1].begin()][col] = drop % 2 ? -1 : 1;
      }
    }
    rank[k] = oracle::rational_rank(m);
  }
  std::vector<int> betti;
  for (int k = 0; k <= c.top_dim(); ++k) betti.push_back(static_cast<int>(c.count(k)) - rank[k] - rank[k + 1]);
  return betti;
}

}  // namespace

TEST_CASE("golden nerve shapes") {
  auto pair = nerve_complex(oracle::published_generators(2));
  CHECK(pair.f_vector() == std::vector<std::int64_t>{2, 1});

  auto tet = nerve_complex(oracle::published_generators(3));
  CHECK(tet.f_vector() == std::vector<std::int64_t>{4, 6, 4, 1});
  CHECK(simplicial_homology(tet).groups.size() == 4);
  CHECK(simplicial_homology(tet).groups[0] == HomologyGroup{1, {}});

  auto octa = nerve_complex(flower(Point<Rational>{1, 0, 0}, 3));
  CHECK(octa.f_vector() == std::vector<std::int64_t>{6, 12, 8});
  CHECK(simplicial_homology(octa).is_sphere(2));
  CHECK(simplicial_homology(octa).to_string() == "(Z, 0, Z)");

  const Rational h = ratio(1, 2);
  auto diamond = nerve_complex(flower(Point<Rational>{h, h, h, h}, 4));
  CHECK(diamond.f_vector() == std::vector<std::int64_t>{8, 24, 32, 16});
  CHECK(simplicial_homology(diamond).is_sphere(3));
}

TEST_CASE("flower nerves are cross-polytope boundaries") {
  const Rational h = ratio(1, 2);
  std::vector<std::pair<Point<Rational>, int>> sites{{Point<Rational>{1, 0}, 2},
                                                      {Point<Rational>{1, 0, 0}, 3},
                                                      {Point<Rational>{h, h, h, h}, 4},
                                                      {Point<Rational>{h, h, h, h, 0}, 5}};
  for (const auto& [p, d] : sites) {
    CAPTURE(d);
    auto petals = flower(p, d);
    auto c = nerve_complex(petals);
    CHECK(c.top_dim() == d - 1);  // max clique size d
    CHECK(simplicial_homology(c).is_sphere(d - 1));
    // opposite petals (sharing a diameter through p) are never co-simplicial
    for (int i = 0; i < c.vertex_count; ++i)
      for (int j = i + 1; j < c.vertex_count; ++j) {
        Point<Rational> mid = scaled(petals[i].center + petals[j].center, Rational(ratio(1, 2)));
        if (mid == p) CHECK_FALSE(c.contains({i, j}));
      }
  }
}

TEST_CASE("Smith normal form homology agrees with rational ranks") {
  auto t = build_necklace(fixture("trivial_2.json"));
  auto inc = increase_necklace(t);
  const Rational h = ratio(1, 2);
  for (const auto& c : {nerve_complex(inc.balls()), nerve_complex(t.pearls),
                        nerve_complex(flower(Point<Rational>{h, h, h, h}, 4)),
                        nerve_complex(flower(Point<Rational>{1, 0, 0}, 3))}) {
    auto snf = simplicial_homology(c);
    auto q = rational_betti(c);
    REQUIRE(q.size() == snf.groups.size());
    for (std::size_t k = 0; k < q.size(); ++k) CHECK(snf.groups[k].rank == q[k]);
  }
}

TEST_CASE("increased necklaces are spheres homologically") {
  for (const auto& [file, name] : std::vector<std::pair<std::string, std::string>>{
           {"trivial_square.json", "trivial-square"},
           {"trefoil.json", "trefoil"},
           {"trivial_2.json", "trivial-2"}}) {
    CAPTURE(name);
    auto k = fixture(file);
    auto inc = increase_necklace(build_necklace(k));
    auto nv = nerve_complex(inc.balls());
    CHECK(nv.f_vector() == golden()["necklace"][name]["nerve_f"].get<std::vector<std::int64_t>>());
    CHECK(sphere_check(nv, k.knot_dim).pass());
    CHECK(simplicial_homology(nv) == cubical_homology(k.cubes, k.knot_dim));
    CHECK(nv.flagged.empty());
  }
}

TEST_CASE("trivial 3-knot: nerve regression") {
  // every flower site of this knot lies in a closed turn face, so no balls
  // are added and the pearl nerve is not a 3-sphere
  auto k = fixture("trivial_3.json");
  auto inc = increase_necklace(build_necklace(k));
  CHECK(inc.added.empty());
  auto nv = nerve_complex(inc.balls());
  const auto& g = golden()["necklace"]["trivial-3"];
  CHECK(nv.f_vector() == g["nerve_f"].get<std::vector<std::int64_t>>());
  CHECK(simplicial_homology(nv).to_string() == g["nerve_homology"].get<std::string>());
  CHECK_FALSE(sphere_check(nv, 3).pass());
}

TEST_CASE("a flower ball cones off its petal pairs") {
  auto k = fixture("trefoil.json");
  auto t = build_necklace(k);
  auto inc = increase_necklace(t);
  auto before = nerve_complex(t.pearls);
  for (std::size_t a = 0; a < inc.added.size(); a += 7) {
    auto balls = t.pearls;
    balls.push_back(inc.added[a]);
    std::vector<int> order;
    auto after = nerve_complex(balls, {}, &order);
    int c = static_cast<int>(std::find(order.begin(), order.end(), static_cast<int>(balls.size()) - 1) -
                             order.begin());
    std::size_t old_simplices = 0, new_simplices = 0;
    for (int dim = 0; dim <= after.top_dim(); ++dim)
      for (const auto& s : after.simplices[dim]) {
        if (std::find(s.begin(), s.end(), c) != s.end()) {
          ++new_simplices;
          // the new simplices are {C} and the edges to the two pearls B_C meets
          CHECK(s.size() <= 2);
        } else {
          ++old_simplices;
        }
      }
    std::size_t before_total = 0;
    for (int dim = 0; dim <= before.top_dim(); ++dim) before_total += before.simplices[dim].size();
    CHECK(old_simplices == before_total);
    CHECK(new_simplices == 3);
  }
}

TEST_CASE("nerve is independent of input order") {
  auto inc = increase_necklace(build_necklace(fixture("trivial_2.json")));
  auto balls = inc.balls();
  auto ref = nerve_complex(balls);
  std::mt19937_64 g(3);
  for (int n = 0; n < 3; ++n) {
    std::shuffle(balls.begin(), balls.end(), g);
    auto c = nerve_complex(balls, NerveOptions{n + 1});
    CHECK(c.simplices == ref.simplices);
  }
}

TEST_CASE("open-ball semantics: tangency adds no edge") {
  std::vector<Ball<Rational>> tangent{{Point<Rational>{0, 0}, 1}, {Point<Rational>{2, 0}, 1}};
  CHECK(nerve_complex(tangent).f_vector() == std::vector<std::int64_t>{2});
}

TEST_CASE("complexes from facets and face closure") {
  auto c = complex_from_facets(4, {{0, 1, 2}, {2, 3}});
  CHECK(is_face_closed(c));
  CHECK(c.f_vector() == std::vector<std::int64_t>{4, 4, 1});
  CHECK(simplicial_homology(c).to_string() == "(Z, 0, 0)");
  SimplicialComplex bad;
  bad.vertex_count = 3;
  bad.simplices = {{{0}, {1}, {2}}, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}};
  CHECK(is_face_closed(bad));
  bad.simplices[1].pop_back();
  CHECK_FALSE(is_face_closed(bad));
  try {
    simplicial_homology(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_face_closed);
  }
  auto circle = complex_from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(sphere_check(circle, 1).pass());
  CHECK_FALSE(sphere_check(complex_from_facets(3, {{0, 1}, {1, 2}}), 1).pass());
}

TEST_CASE("torsion survives Smith normal form") {
  // rows of a 2x2 boundary with determinant 2
  IntMatrix m{2, 2, {{0, 0, 2}, {1, 1, 1}}};
  auto s = smith_form(m);
  CHECK(s.rank == 2);
  CHECK(s.factors == std::vector<std::int64_t>{2});
  // real projective plane, minimal 6-vertex triangulation
  auto rp2 = complex_from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                     {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
  auto hrp = simplicial_homology(rp2);
  CHECK(hrp.groups[1] == HomologyGroup{0, {2}});
  CHECK(hrp.groups[2] == HomologyGroup{0, {}});
}
