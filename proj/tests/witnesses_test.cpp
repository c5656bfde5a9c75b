#include "doctest.h"

#include <random>

#include "prolim/witnesses.hpp"
#include "support.hpp"

using namespace prolim;
using prolim::testing::vec;

TEST_CASE("padic_phi examples") {
  CHECK(padic_phi(2, 10, vec({0, 0, 1})).residue() == 8);
  CHECK(padic_phi(3, 4, vec({1, 1, 1, 1, 1, 1})).residue() == 39);
  CHECK(padic_phi(5, 3, vec({})).is_zero());
  CHECK(padic_phi(2, 10, vec({0, 0, 0, 0, 0, 0, 0, 0, 0, 1})).is_zero());
  CHECK(padic_phi(2, 10, vec({-1})).residue() == 1022);
  CHECK_THROWS_AS(padic_phi(6, 4, vec({1})), InputError);
  CHECK_THROWS_AS(padic_phi(2, 1, vec({1})), InputError);
}

TEST_CASE("padic truncations form a ring with valuations") {
  const PadicTrunc a(3, 5, 18), b(3, 5, 7);
  CHECK(a.valuation() == 2);
  CHECK(b.valuation() == 0);
  CHECK((a * b).residue() == 126);
  CHECK((a - a).is_zero());
  CHECK((a - a).valuation() == 5);
  CHECK((a + b) == PadicTrunc(3, 5, 25));
  CHECK_THROWS_AS(a + PadicTrunc(3, 4, 1), InputError);
}

TEST_CASE("padic_phi is additive") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const IntVector x = prolim::testing::random_matrix(rng, 8, 1, -50, 50).column(0);
    const IntVector y = prolim::testing::random_matrix(rng, 8, 1, -50, 50).column(0);
    REQUIRE(padic_phi(3, 6, x + y) == padic_phi(3, 6, x) + padic_phi(3, 6, y));
  }
}

TEST_CASE("non-factoring report for p = 2, K = 10, window 8") {
  const NonFactoringReport r = non_factoring_report(2, 10, 8);
  CHECK(r.refuted == 8);
  Integer expected = 2;
  for (const LevelRefutation& l : r.levels) {
    expected *= 2;
    REQUIRE(l.witness.has_value());
    CHECK(l.verified);
    CHECK(l.witness->value == IntVector{expected});
  }
  CHECK(expected == 512);
}

TEST_CASE("high levels are truncation artifacts") {
  const NonFactoringReport r = non_factoring_report(2, 4, 5);
  CHECK(r.refuted == 2);
  for (std::size_t i = 3; i <= 5; ++i) {
    CHECK_FALSE(r.levels[i - 1].witness.has_value());
    CHECK(r.levels[i - 1].truncation_artifact);
  }
}

TEST_CASE("non-factoring report for p = 5, K = 3, window 1") {
  const NonFactoringReport r = non_factoring_report(5, 3, 1);
  REQUIRE(r.levels.size() == 1);
  CHECK(r.levels[0].verified);
  CHECK(r.levels[0].witness->value == vec({25}));
  CHECK(r.levels[0].witness->top == vec({0, 1}));
}

TEST_CASE("higman vectors") {
  const auto a = higman_vectors({2, 2, 2}, 4);
  CHECK(a[0] == vec({1, 2, 4, 8}));
  CHECK(a[1] == vec({0, 1, 2, 4}));
  CHECK(a[0] == unit_vector(4, 0) + Integer(2) * a[1]);
  const auto ones = higman_vectors({1, 1, 1}, 4);
  CHECK(ones[2] == vec({0, 0, 1, 1}));
  CHECK_THROWS_AS(higman_vectors({2}, 1), InputError);
  CHECK_THROWS_AS(higman_vectors({0, 1}, 3), InputError);
}

TEST_CASE("higman identity on random coefficient sequences") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> coeff(1, 9);
  std::uniform_int_distribution<std::size_t> depth(2, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = depth(rng);
    std::vector<Integer> n(d - 1);
    for (Integer& c : n) c = coeff(rng);
    const auto a = higman_vectors(n, d);
    for (std::size_t i = 0; i + 1 < d; ++i) REQUIRE(a[i] == unit_vector(d, i) + n[i] * a[i + 1]);
  }
}

TEST_CASE("higman_verify worked instance") {
  const FgAbGroup z = FgAbGroup::free(1);
  const HigmanSystem s{{2, 2, 2, 2}, FgAbHom(FgAbGroup::free(5), z, IntMatrix::from_rows({{1, 1, 1, 1, 1}}))};
  const HigmanSolution sol = higman_verify(s);
  CHECK(sol.verified);
  CHECK(sol.x[0] == vec({31}));
  CHECK(sol.x[1] == vec({15}));
  CHECK(sol.equations.size() == 4);
}

TEST_CASE("higman_verify with zero targets and in Z/7") {
  const HigmanSystem zero{{3, 3}, FgAbHom::zero(FgAbGroup::free(3), FgAbGroup::free(1))};
  const HigmanSolution z = higman_verify(zero);
  CHECK(z.verified);
  for (const IntVector& x : z.x) CHECK(x == vec({0}));

  const FgAbGroup z7 = FgAbGroup::cyclic(7);
  const HigmanSystem m{{3, 3, 3}, FgAbHom(FgAbGroup::free(4), z7, IntMatrix::from_rows({{1, 1, 1, 1}}))};
  const HigmanSolution sol = higman_verify(m);
  CHECK(sol.verified);
  // 1 + 3 + 9 + 27 = 40 = 5 mod 7.
  CHECK(z7.equal(sol.x[0], vec({5})));
}

TEST_CASE("higman_verify holds for arbitrary integer rows") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix row = prolim::testing::random_matrix(rng, 1, 6, -20, 20);
    const std::vector<Integer> n{2, 3, 1, 4, 5};
    REQUIRE(higman_verify({n, FgAbHom(FgAbGroup::free(6), FgAbGroup::free(1), row)}).verified);
  }
}
