#include "doctest.h"
#include "oracles.hpp"

#include "pearl/cubeknot.hpp"
#include "pearl/nerve.hpp"

using namespace pearl;

namespace {

CubicalKnot square() {
  auto k = sample_knot("trivial", 1);
  return k;
}

}  // namespace

TEST_CASE("sample knots validate") {
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    auto k = sample_knot("trivial", n);
    CHECK(k.ambient_dim == n + 2);
    CHECK(k.knot_dim == n);
    CHECK(k.cubes.size() == static_cast<std::size_t>(2 * (n + 1)));
    CHECK(validate_knot(k).pass());
    CHECK(cubical_homology(k.cubes, n).is_sphere(n));
  }
  auto t = sample_knot("trefoil", 1);
  CHECK(t.cubes.size() == 58);
  CHECK(validate_knot(t).pass());
  CHECK_THROWS_AS(sample_knot("trefoil", 2), InputError);
  CHECK_THROWS_AS(sample_knot("granny", 1), InputError);
  CHECK_THROWS_AS(sample_knot("trivial", 6), InputError);
}

TEST_CASE("trefoil is knotted, square is not (Fox 3-colorings)") {
  CHECK(oracle::fox_colorings(square()) == 3);
  CHECK(oracle::fox_colorings(sample_knot("trefoil", 1)) == 9);
}

TEST_CASE("vertex convention") {
  CHECK(vertex_convention_ok(IPoint{1, 0, 0}));
  CHECK(vertex_convention_ok(IPoint{-3, 2, -4}));
  CHECK_FALSE(vertex_convention_ok(IPoint{0, 0, 0}));
  CHECK_FALSE(vertex_convention_ok(IPoint{1, 1, 0}));
  CHECK_FALSE(vertex_convention_ok(IPoint{2, 0, 0}));
  for (const auto& c : sample_knot("trefoil", 1).cubes)
    for (const auto& v : vertices_of(c)) CHECK(vertex_convention_ok(v));
}

TEST_CASE("faces and boxes") {
  Cube c{IPoint{1, 0, 0}, {0, 1}};
  CHECK(vertices_of(c).size() == 4);
  auto fs = facets_of(c);
  REQUIRE(fs.size() == 4);
  for (const auto& f : fs) CHECK(f.dim() == 1);
  auto b = box_of(c);
  CHECK(b.lo == Point<Rational>{1, 0, 0});
  CHECK(b.hi == Point<Rational>{3, 2, 0});
}

TEST_CASE("turns and straight faces") {
  auto sq = square();
  CHECK(turns_of(sq).size() == 4);
  CHECK(straight_faces(sq).empty());
  auto t = sample_knot("trefoil", 1);
  auto turns = turns_of(t);
  CHECK(turns.size() == 20);
  CHECK(turns.size() + straight_faces(t).size() == t.cubes.size());
  for (const auto& r : turns) CHECK(r.first.axes != r.second.axes);
  // the n = 2 boundary of a 3-cube has its 12 edges as turns
  CHECK(turns_of(sample_knot("trivial", 2)).size() == 12);
}

TEST_CASE("broken knots are rejected") {
  auto k = square();
  k.cubes.pop_back();
  auto rep = validate_knot(k);
  CHECK_FALSE(rep.pass());

  auto bad = square();
  bad.cubes[0].base[0] += 1;  // off the C2 lattice
  CHECK_FALSE(validate_knot(bad).pass());

  auto two = square();  // two disjoint squares
  for (auto c : square().cubes) {
    c.base[2] += 8;
    two.cubes.push_back(c);
  }
  std::sort(two.cubes.begin(), two.cubes.end());
  CHECK_FALSE(validate_knot(two).pass());

  auto dims = square();
  dims.cubes.push_back({IPoint{1, 0, 4}, {0, 1}});
  CHECK_FALSE(validate_knot(dims).pass());
  CHECK_THROWS_AS(cubical_homology(dims.cubes, 1), GeometryError);
}

TEST_CASE("cubical homology agrees with the Kuhn subdivision") {
  std::vector<std::vector<Cube>> cases;
  for (int n = 1; n <= 4; ++n) cases.push_back(sample_knot("trivial", n).cubes);
  cases.push_back(sample_knot("trefoil", 1).cubes);
  // a solid square (disk) and an open path
  cases.push_back({Cube{IPoint{1, 0, 0}, {0, 1}}});
  cases.push_back({Cube{IPoint{1, 0, 0}, {0}}, Cube{IPoint{3, 0, 0}, {1}}});
  for (const auto& cubes : cases) {
    int n = cubes[0].dim();
    auto cub = cubical_homology(cubes, n);
    auto kuhn = simplicial_homology(kuhn_subdivision(cubes));
    // Kuhn's complex may report trailing zero groups up to its top dimension
    CHECK(cub.groups.size() == kuhn.groups.size());
    CHECK(cub == kuhn);
  }
}

TEST_CASE("Euler characteristic by rational rank") {
  // independent: f-vector of the cubical complex, alternating sum
  for (int n = 1; n <= 4; ++n) {
    auto k = sample_knot("trivial", n);
    auto h = cubical_homology(k.cubes, n);
    long chi = 0;
    for (std::size_t i = 0; i < h.groups.size(); ++i) chi += (i % 2 ? -1 : 1) * h.groups[i].rank;
    CHECK(chi == (n % 2 ? 0 : 2));
  }
}
