#include "doctest.h"

#include <random>

#include "prolim/zlinalg.hpp"
#include "support.hpp"

using namespace prolim;
using prolim::testing::vec;

namespace {

bool is_diagonal_chain(const SmithForm& s) {
  const IntMatrix& d = s.d;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && sgn(d(i, j)) != 0) return false;
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (sgn(diag[i]) < 0) return false;
    if (i < s.rank && sgn(diag[i]) == 0) return false;
    if (i >= s.rank && sgn(diag[i]) != 0) return false;
    if (i + 1 < s.rank && !mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("snf of identity and zero") {
  const SmithForm id = snf(IntMatrix::identity(3));
  CHECK(id.d == IntMatrix::identity(3));
  CHECK(id.u == IntMatrix::identity(3));
  CHECK(id.v == IntMatrix::identity(3));

  const SmithForm z = snf(IntMatrix(2, 3));
  CHECK(z.d == IntMatrix(2, 3));
  CHECK(z.rank == 0);
}

TEST_CASE("snf of [[2,4],[6,8]] is diag(2,4)") {
  // Minor oracle: gcd of entries is 2, |det| = 8.
  const IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  CHECK(prolim::testing::invariant_factors_by_minors(a) == std::vector<Integer>{2, 4});
  const SmithForm s = snf(a);
  CHECK(s.d == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  CHECK(s.u * a * s.v == s.d);
  CHECK(s.u * s.u_inverse == IntMatrix::identity(2));
}

TEST_CASE("snf handles empty matrices") {
  const SmithForm a = snf(IntMatrix(0, 3));
  CHECK(a.v == IntMatrix::identity(3));
  CHECK(a.rank == 0);
  const SmithForm b = snf(IntMatrix(2, 0));
  CHECK(b.u == IntMatrix::identity(2));
}

TEST_CASE("snf random property: UAV = D, unimodular, divisibility") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix a = prolim::testing::random_matrix(rng, dim(rng), dim(rng), -20, 20);
    const SmithForm s = snf(a);
    REQUIRE(s.u * a * s.v == s.d);
    REQUIRE(is_diagonal_chain(s));
    REQUIRE(abs(prolim::testing::laplace_determinant(s.u)) == 1);
    REQUIRE(abs(prolim::testing::laplace_determinant(s.v)) == 1);
    REQUIRE(s.u * s.u_inverse == IntMatrix::identity(a.rows()));
  }
}

TEST_CASE("snf invariant factors agree with the minor-gcd oracle") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix a = prolim::testing::random_matrix(rng, dim(rng), dim(rng), -9, 9);
    const SmithForm s = snf(a);
    const auto diag = s.diagonal();
    const std::vector<Integer> got(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(s.rank));
    REQUIRE(got == prolim::testing::invariant_factors_by_minors(a));
  }
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(IntMatrix::identity(2)).cols() == 0);
  CHECK(kernel_basis(IntMatrix::identity(2)).rows() == 2);

  // 2*1 - 1*2 = 0, and (1,2) is primitive.
  const IntMatrix k = kernel_basis(IntMatrix::from_rows({{2, -1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k.column(0) == vec({1, 2}));

  CHECK(kernel_basis(IntMatrix::from_rows({{0, 0}})) == IntMatrix::identity(2));
}

TEST_CASE("kernel_basis matches small-solution enumeration") {
  // Every solution with entries in [-4,4] must be an integer combination of the basis.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix a = prolim::testing::random_matrix(rng, 1 + trial % 2, 3, -3, 3);
    const IntMatrix k = kernel_basis(a);
    for (std::size_t j = 0; j < k.cols(); ++j) REQUIRE(is_zero(a * k.column(j)));
    REQUIRE(rank(k) == k.cols());
    const Lattice lat(k);
    for (long x = -4; x <= 4; ++x)
      for (long y = -4; y <= 4; ++y)
        for (long z = -4; z <= 4; ++z) {
          const IntVector v = vec({x, y, z});
          if (is_zero(a * v)) REQUIRE(lat.contains(v));
        }
  }
}

TEST_CASE("solve examples") {
  CHECK(solve(IntMatrix::identity(2), vec({3, 5})) == vec({3, 5}));
  CHECK_FALSE(solve(IntMatrix::from_rows({{2}}), vec({3})).has_value());
  const auto x = solve(IntMatrix::from_rows({{2, 3}}), vec({1}));
  REQUIRE(x.has_value());
  CHECK(2 * (*x)[0] + 3 * (*x)[1] == 1);
  CHECK_THROWS_AS(solve(IntMatrix::identity(2), vec({1})), InputError);
}

TEST_CASE("solve and kernel are consistent") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix a = prolim::testing::random_matrix(rng, 3, 4, -6, 6);
    const IntVector x0 = prolim::testing::random_matrix(rng, 4, 1, -5, 5).column(0);
    const IntVector b = a * x0;
    const auto x = solve(a, b);
    REQUIRE(x.has_value());
    REQUIRE(a * *x == b);
    const IntMatrix k = kernel_basis(a);
    for (std::size_t j = 0; j < k.cols(); ++j) REQUIRE(a * (*x + Integer(3) * k.column(j)) == b);
  }
}

TEST_CASE("hermite basis is canonical for a lattice") {
  const IntMatrix g1 = IntMatrix::from_rows({{2, 0}, {0, 3}});
  const IntMatrix g2 = IntMatrix::from_rows({{2, 4, 2}, {3, 3, 0}});
  // Same lattice: (2,0),(0,3) vs (2,3),(4,3),(2,0).
  CHECK(hermite_basis(g1) == hermite_basis(g2));
  const Lattice l(g2);
  CHECK(l.contains(vec({4, 9})));
  CHECK_FALSE(l.contains(vec({1, 0})));
  CHECK(l.basis() * *l.coordinates(vec({4, 9})) == vec({4, 9}));
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(3);
  for (int n = 0; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix a = prolim::testing::random_matrix(rng, n, n, -7, 7);
      REQUIRE(determinant(a) == prolim::testing::laplace_determinant(a));
    }
  }
}

TEST_CASE("matrix construction rejects inconsistent sizes") {
  CHECK_THROWS_AS(IntMatrix(2, 2, std::vector<Integer>(3)), InputError);
  CHECK_THROWS_AS(IntMatrix::identity(2) * IntMatrix::identity(3), InputError);
}
