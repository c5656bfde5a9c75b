#include "doctest.h"

#include <random>

#include "prolim/simplicial.hpp"
#include "support.hpp"

using namespace prolim;
using prolim::testing::vec;

namespace {

CanonicalForm cf(std::size_t free_rank, std::vector<Integer> torsion = {}) {
  return CanonicalForm{free_rank, std::move(torsion)};
}

// Rank of an integer matrix by fraction-free elimination over Q, written
// independently of the normal-form code.
std::size_t rank_over_q(IntMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Integer f = a(i, c), piv = a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) * piv - a(r, j) * f;
    }
    ++r;
  }
  return r;
}

bool boundaries_compose_to_zero(const SimplicialComplex& k) {
  const auto ds = boundary_matrices(k);
  for (std::size_t i = 0; i + 1 < ds.size(); ++i)
    if (!(ds[i] * ds[i + 1]).is_zero()) return false;
  return true;
}

// Loop class of circle k in a bouquet, as a 1-chain.
IntVector bouquet_loop(const SimplicialComplex& b, std::size_t k) {
  IntVector z = zero_vector(b.count(1));
  z[*b.index_of({0, 2 * k - 1})] = 1;
  z[*b.index_of({2 * k - 1, 2 * k})] = 1;
  z[*b.index_of({0, 2 * k})] = -1;
  return z;
}

}  // namespace

TEST_CASE("complex validation") {
  CHECK_THROWS_AS(SimplicialComplex(3, {{0, 1, 2}}), InputError);
  CHECK_THROWS_AS(SimplicialComplex(2, {{0, 1}, {0, 1}}), InputError);
  CHECK_THROWS_AS(SimplicialComplex(2, {{1, 0}}), InputError);
  CHECK_THROWS_AS(SimplicialComplex(2, {{0, 2}}), InputError);
  const SimplicialComplex t = SimplicialComplex::from_facets(3, {{2, 0, 1}});
  CHECK(t.count(0) == 3);
  CHECK(t.count(1) == 3);
  CHECK(t.count(2) == 1);
  CHECK(t.dimension() == 2);
}

TEST_CASE("boundary matrices") {
  const SimplicialComplex c = circle(3);
  const IntMatrix d1 = boundary(c, 1);
  CHECK(d1.rows() == 3);
  CHECK(d1.cols() == 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(d1(0, j) + d1(1, j) + d1(2, j) == 0);
  CHECK(boundary_matrices(point()).empty());
  const SimplicialComplex filled = SimplicialComplex::from_facets(3, {{0, 1, 2}});
  CHECK((boundary(filled, 1) * boundary(filled, 2)).is_zero());
  for (const SimplicialComplex& k : {sphere2(), proj_plane(), wedge_spheres(3), bouquet(4)})
    CHECK(boundaries_compose_to_zero(k));
}

TEST_CASE("homology of the example zoo") {
  CHECK(homology(circle(3), 1).group().canonical_form() == cf(1));
  CHECK(homology(circle(3), 0).group().canonical_form() == cf(1));
  CHECK(homology(proj_plane(), 1).group().canonical_form() == cf(0, {2}));
  CHECK(homology(proj_plane(), 2).group().is_trivial());
  CHECK(homology(sphere2(), 2).group().canonical_form() == cf(1));
  CHECK(homology(sphere2(), 1).group().is_trivial());
  CHECK(homology(bouquet(3), 1).group().canonical_form() == cf(3));
  CHECK(homology(wedge_spheres(3), 2).group().canonical_form() == cf(3));
  CHECK(homology(wedge_spheres(3), 1).group().is_trivial());
  CHECK(homology(point(), 3).group().is_trivial());
}

TEST_CASE("projective plane: every edge lies on two faces") {
  const SimplicialComplex k = proj_plane();
  CHECK(k.count(0) == 6);
  CHECK(k.count(1) == 15);
  CHECK(k.count(2) == 10);
  const IntMatrix d2 = boundary(k, 2);
  for (std::size_t e = 0; e < d2.rows(); ++e) {
    int faces = 0;
    for (std::size_t f = 0; f < d2.cols(); ++f) faces += sgn(d2(e, f)) != 0;
    CHECK(faces == 2);
  }
}

TEST_CASE("cohomology examples") {
  const FgAbGroup z = FgAbGroup::free(1);
  CHECK(cohomology(proj_plane(), 2, z).group().canonical_form() == cf(0, {2}));
  CHECK(cohomology(proj_plane(), 1, z).group().is_trivial());
  CHECK(cohomology(circle(4), 1, z).group().canonical_form() == cf(1));
  const FgAbGroup z6 = FgAbGroup::cyclic(6);
  CHECK(cohomology(point(), 0, z6).group().canonical_form() == cf(0, {6}));
  CHECK(cohomology(point(), 1, z6).group().is_trivial());
  CHECK(cohomology(proj_plane(), 1, FgAbGroup::cyclic(2)).group().canonical_form() == cf(0, {2}));
}

TEST_CASE("cohomology splits as Ext plus Hom on the zoo") {
  const std::vector<SimplicialComplex> zoo{point(), circle(3), circle(5), bouquet(2), sphere2(), wedge_spheres(2),
                                           proj_plane()};
  const std::vector<FgAbGroup> coeffs{FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(6),
                                      FgAbGroup::free(2)};
  for (const SimplicialComplex& k : zoo)
    for (const FgAbGroup& g : coeffs)
      for (std::size_t n = 0; n <= 2; ++n) {
        const FgAbGroup lower = n == 0 ? FgAbGroup::free(0) : homology(k, n - 1).group();
        const FgAbGroup expected =
            direct_sum(ext_group(lower, g).group(), hom_group(homology(k, n).group(), g).group());
        REQUIRE(cohomology(k, n, g).group().canonical_form() == expected.canonical_form());
      }
}

TEST_CASE("Euler characteristic on random complexes") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> vert(2, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = vert(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1), size(1, std::min<std::size_t>(n, 4));
    std::vector<Simplex> facets;
    for (int f = 0; f < 4; ++f) {
      Simplex s;
      const std::size_t want = size(rng);
      while (s.size() < want) {
        const std::size_t v = pick(rng);
        if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
      }
      facets.push_back(s);
    }
    const SimplicialComplex k = SimplicialComplex::from_facets(n, facets);
    REQUIRE(boundaries_compose_to_zero(k));
    long alternating = 0, betti_sum = 0;
    for (int d = 0; d <= k.dimension(); ++d) {
      const std::size_t dd = static_cast<std::size_t>(d);
      const long sign = d % 2 == 0 ? 1 : -1;
      alternating += sign * static_cast<long>(k.count(dd));
      const long rank_in = dd == 0 ? 0 : static_cast<long>(rank_over_q(boundary(k, dd)));
      const long rank_out = static_cast<long>(rank_over_q(boundary(k, dd + 1)));
      const long betti = static_cast<long>(k.count(dd)) - rank_in - rank_out;
      REQUIRE(static_cast<long>(homology(k, dd).group().canonical_form().free_rank) == betti);
      betti_sum += sign * betti;
    }
    REQUIRE(alternating == betti_sum);
  }
}

TEST_CASE("maps validate and compose") {
  CHECK_THROWS_AS(SimplicialMap(circle(4), circle(3), {0, 1, 2}), InputError);
  const SimplicialComplex path(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(SimplicialMap(circle(4), path, {0, 2, 1, 1}), InputError);
  CHECK_NOTHROW(SimplicialMap(circle(4), path, {0, 1, 2, 1}));
  const SimplicialMap f = degree_map(2, 6);
  const SimplicialMap g = degree_map(2, 3);
  const SimplicialMap gf = compose(g, f);
  CHECK(gf.dom() == circle(12));
  CHECK(gf.cod() == circle(3));
  CHECK_THROWS_AS(compose(f, g), InputError);
}

TEST_CASE("induced maps on homology") {
  const FgAbHom id = induced_map(SimplicialMap::identity(proj_plane()), 1);
  CHECK(id.equals(FgAbHom::identity(id.dom())));

  const FgAbHom twice = induced_map(degree_map(2, 3), 1);
  REQUIRE(twice.dom().canonical_form() == cf(1));
  // Oracle: the hexagon cycle wraps the triangle cycle twice.
  CHECK(abs(twice.matrix()(0, 0)) == 2);

  const SimplicialMap c = collapse(2);
  const FgAbHom proj = induced_map(c, 1);
  const Subquotient h2 = homology(bouquet(2), 1);
  const Subquotient h1 = homology(bouquet(1), 1);
  // Loops of the two circles go to the loop of the first and to zero.
  CHECK(h1.group().equal(proj.apply(h2.class_of(bouquet_loop(bouquet(2), 1))), h1.class_of(bouquet_loop(bouquet(1), 1))));
  CHECK(h1.group().is_zero(proj.apply(h2.class_of(bouquet_loop(bouquet(2), 2)))));
}

TEST_CASE("induced maps are functorial") {
  const SimplicialMap f = degree_map(3, 6);
  const SimplicialMap g = degree_map(2, 3);
  CHECK(induced_map(compose(g, f), 1).equals(compose(induced_map(g, 1), induced_map(f, 1))));
  const FgAbGroup z = FgAbGroup::free(1);
  CHECK(induced_cohomology_map(compose(g, f), 1, z)
            .equals(compose(induced_cohomology_map(f, 1, z), induced_cohomology_map(g, 1, z))));
  CHECK(induced_map(compose(collapse(2), collapse(3)), 1).equals(compose(induced_map(collapse(2), 1), induced_map(collapse(3), 1))));
}

TEST_CASE("degenerate simplices map to zero") {
  const SimplicialMap c = collapse(1);
  CHECK(chain_map(c, 1).is_zero());
  CHECK(induced_map(c, 1).is_zero());
}

TEST_CASE("polyhedral towers") {
  const PolyhedralTower s = solenoid_polyhedra(2, 4);
  CHECK(s.level(4).vertex_count() == 24);
  CHECK(s.bond(3).dom() == s.level(4));
  const PolyhedralTower h = hawaiian_polyhedra(4);
  CHECK(h.level(3).count(1) == 9);
  CHECK_THROWS_AS(h.level(5), InputError);
  CHECK_THROWS_AS(PolyhedralTower({circle(3), circle(3)}, {degree_map(2, 3)}), InputError);
  CHECK(constant_polyhedra(proj_plane(), 3).window() == 3);
}
