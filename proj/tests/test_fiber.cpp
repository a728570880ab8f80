#include "doctest.h"
#include "oracles.hpp"

#include "pearl/fiber.hpp"
#include "pearl/io.hpp"
#include "pearl/kleinian.hpp"

#include <random>

using namespace pearl;

namespace {

FiberedDescriptor fixture(const std::string& file) {
  std::string path = std::string(PEARL_DATA_DIR) + "/fibers/" + file;
  return parse_descriptor(read_file(path), path);
}

}  // namespace

TEST_CASE("spin keeps rank and monodromy") {
  auto t = fixture("trefoil.json");
  auto s = spin(t);
  CHECK(s.knot_dim == 2);
  CHECK(s.rank == 2);
  CHECK(s.monodromy == t.monodromy);
  auto five = t;
  for (int k = 0; k < 4; ++k) five = spin(five);
  CHECK(five.knot_dim == 5);
  auto triv = spin(fixture("trivial.json"));
  CHECK(triv.rank == 0);
  CHECK(triv.knot_dim == 2);
  for (const char* f : {"spun_trefoil_2.json", "spun_trefoil_3.json", "spun_trefoil_4.json",
                        "spun_trefoil_5.json"}) {
    CAPTURE(f);
    auto d = fixture(f);
    CHECK(d.monodromy == t.monodromy);
    CHECK(fiber_sum_rank(d, 7) == fiber_sum_rank(t, 7));
    CHECK(limit_presentation(d, 3).to_string() == limit_presentation(t, 3).to_string());
    CHECK(abelianization(limit_presentation(d, 3)) == abelianization(limit_presentation(t, 3)));
  }
}

TEST_CASE("fiber sum ranks") {
  auto t = fixture("trefoil.json");
  auto ks = knot_sum_ledger(4, 1);
  CHECK(fiber_sum_rank(t, ks.first + ks.second) == 32);
  CHECK(fiber_sum_rank(t, 1) == 2);
  CHECK(fiber_sum_rank(fixture("trivial.json"), 1000) == 0);
  CHECK(fiber_sum_rank(spin(t), 9) == fiber_sum_rank(t, 9));
  CHECK_THROWS_AS(fiber_sum_rank(t, 0), InputError);
}

TEST_CASE("presentation shapes") {
  auto id = fixture("identity.json");
  auto p = limit_presentation(id, 2);
  CHECK(p.to_string() == "<a1^1, a1^2, c | c a1^1 c^-1 = a1^1, c a1^2 c^-1 = a1^2>");
  auto t = limit_presentation(fixture("trefoil.json"), 3);
  CHECK(t.generators.size() == 7);
  CHECK(t.relations.size() == 6);
  // J = 1 is the mapping torus of the fiber
  auto one = limit_presentation(fixture("trefoil.json"), 1);
  CHECK(one.to_string() == "<a1^1, a2^1, c | c a1^1 c^-1 = a2^1, c a2^1 c^-1 = a1^1^-1 a2^1>");

  std::mt19937_64 g(20261014);
  for (int m = 1; m <= 4; ++m)
    for (int J = 1; J <= 6; ++J) {
      auto d = oracle::random_descriptor(m, g);
      auto lp = limit_presentation(d, J);
      CHECK(lp.generators.size() == static_cast<std::size_t>(m * J + 1));
      CHECK(lp.relations.size() == static_cast<std::size_t>(m * J));
    }
}

TEST_CASE("abelianization agrees with a rational-rank count") {
  CHECK(abelianization(limit_presentation(fixture("trefoil.json"), 3)) == HomologyGroup{1, {}});
  CHECK(abelianization(limit_presentation(fixture("figure_eight.json"), 4)) == HomologyGroup{1, {}});
  // identity monodromy: every fiber generator survives
  for (int J = 1; J <= 4; ++J)
    CHECK(abelianization(limit_presentation(fixture("identity.json"), J)) == HomologyGroup{J + 1, {}});

  std::mt19937_64 g(20261015);
  int meridian_only = 0;
  for (int n = 0; n < 60; ++n) {
    int m = 1 + n % 4, J = 1 + n % 5;
    auto d = oracle::random_descriptor(m, g);
    auto a = abelianization(limit_presentation(d, J));
    CHECK(a.rank == oracle::expected_rank(d, J, pearl::CopyReading::copy_index));
    meridian_only += a.rank == 1;
    // rank 1 exactly when I - M is invertible over Q
    CHECK((a.rank == 1) == (oracle::nullity_minus_identity(oracle::exponent_matrix(d)) == 0));
    auto it = abelianization(limit_presentation(d, J, CopyReading::iterate));
    CHECK(it.rank == oracle::expected_rank(d, J, CopyReading::iterate));
  }
  CHECK(meridian_only > 0);
  CHECK(abelianized_monodromy(fixture("trefoil.json")) == oracle::exponent_matrix(fixture("trefoil.json")));
}

TEST_CASE("the iterate reading differs from the copy-index reading") {
  // the trefoil monodromy has order 6 on H_1 of the fiber
  auto t = fixture("trefoil.json");
  auto copy = limit_presentation(t, 6);
  auto iter = limit_presentation(t, 6, CopyReading::iterate);
  CHECK(copy.generators == iter.generators);
  CHECK(copy.to_string() != iter.to_string());
  CHECK(abelianization(copy).rank == 1);
  CHECK(abelianization(iter).rank == 3);
  CHECK(limit_presentation(t, 1).to_string() == limit_presentation(t, 1, CopyReading::iterate).to_string());
}

TEST_CASE("wildness certificates") {
  auto c = wildness_certificate(fixture("trefoil.json"), {1, 2, 3});
  CHECK(c.pass);
  REQUIRE(c.rows.size() == 3);
  CHECK(c.rows[0].fiber_generators == 2);
  CHECK(c.rows[1].fiber_generators == 4);
  CHECK(c.rows[2].fiber_generators == 6);
  CHECK(c.report().pass());

  FiberedDescriptor four{"four", 1, 4, {{1}, {2}, {3}, {4}}};
  auto f = wildness_certificate(four, {1, 5});
  CHECK(f.pass);
  CHECK(f.rows[1].fiber_generators == 20);

  auto spun = wildness_certificate(fixture("spun_trefoil_5.json"), {1, 2, 3});
  CHECK(spun.report().machine()["data"] == c.report().machine()["data"]);

  try {
    wildness_certificate(fixture("trivial.json"), {1, 2});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::trivial_descriptor);
  }
  CHECK_THROWS_AS(wildness_certificate(fixture("trefoil.json"), {2, 2}), InputError);
  CHECK_THROWS_AS(wildness_certificate(fixture("trefoil.json"), {}), InputError);
}

TEST_CASE("descriptor validation") {
  try {
    validate_descriptor(fixture("bad_determinant.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_monodromy);
  }
  FiberedDescriptor empty_word{"x", 1, 2, {{1}, {}}};
  CHECK_THROWS_AS(validate_descriptor(empty_word), InputError);
  FiberedDescriptor alphabet{"x", 1, 1, {{2}}};
  CHECK_THROWS_AS(validate_descriptor(alphabet), InputError);
  CHECK_THROWS_AS(limit_presentation(fixture("trefoil.json"), 0), InputError);
  CHECK(reduce({1, 2, -2, -1, 3}) == FreeWord{3});
  CHECK(invert({1, -2}) == FreeWord{2, -1});
}
