#include "doctest.h"

#include "prolim/cech.hpp"
#include "support.hpp"

using namespace prolim;
using prolim::testing::vec;

namespace {

CanonicalForm cf(std::size_t free_rank, std::vector<Integer> torsion = {}) {
  return CanonicalForm{free_rank, std::move(torsion)};
}

}  // namespace

TEST_CASE("homology tower of the hawaiian polyhedra is the hawaiian tower") {
  const InverseTower t = homology_tower(hawaiian_polyhedra(4), 1);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(t.group(i).canonical_form() == cf(i));
  for (std::size_t i = 1; i < 4; ++i) {
    // Projection: onto, with a rank-one kernel.
    const KernelImageCokernel k = kic(t.bond(i));
    CHECK(k.cokernel().is_trivial());
    CHECK(k.kernel().canonical_form() == cf(1));
  }
  const MLReport r = is_mittag_leffler(t);
  CHECK(r.certified);
  CHECK(r.levels[0].stabilization_index == 2);
}

TEST_CASE("homology tower of the solenoid polyhedra multiplies by p") {
  const InverseTower t = homology_tower(solenoid_polyhedra(2, 4), 1);
  for (std::size_t i = 1; i < 4; ++i) CHECK(abs(t.bond(i).matrix()(0, 0)) == 2);
  const MLReport r = is_mittag_leffler(t);
  CHECK_FALSE(r.certified);
  CHECK(r.levels[0].chain_indices.back() == Integer(8));
}

TEST_CASE("degree zero homology tower is constant Z") {
  for (const PolyhedralTower& pt : {hawaiian_polyhedra(3), solenoid_polyhedra(3, 3)}) {
    const InverseTower t = homology_tower(pt, 0);
    for (std::size_t i = 1; i <= 3; ++i) CHECK(t.group(i).canonical_form() == cf(1));
    for (std::size_t i = 1; i < 3; ++i) CHECK(t.bond(i).is_isomorphism());
  }
}

TEST_CASE("cohomology systems") {
  const FgAbGroup z = FgAbGroup::free(1);
  const DirectSystem s = cohomology_system(solenoid_polyhedra(2, 3), 1, z);
  for (std::size_t i = 1; i < 3; ++i) CHECK(abs(s.bond(i).matrix()(0, 0)) == 2);

  const DirectSystem h = cohomology_system(hawaiian_polyhedra(4), 1, z);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(h.group(i).canonical_form() == cf(i));
  for (std::size_t i = 1; i < 4; ++i) CHECK(kic(h.bond(i)).kernel().is_trivial());

  const DirectSystem top = cohomology_system(hawaiian_polyhedra(3), 2, z);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(top.group(i).is_trivial());
}

TEST_CASE("uct ladder on the constant projective plane") {
  const UctReport r = uct_ladder(constant_polyhedra(proj_plane(), 3), 2, FgAbGroup::free(1));
  CHECK(r.stages_exact());
  CHECK(r.squares_commute());
  CHECK(r.colimit_exact);
  for (const StageSequence& s : r.stages) {
    CHECK(s.ext_to_cohomology.dom().canonical_form() == cf(0, {2}));
    CHECK(s.ext_to_cohomology.cod().canonical_form() == cf(0, {2}));
    CHECK(s.cohomology_to_hom.cod().is_trivial());
  }
}

TEST_CASE("uct ladder on the hawaiian polyhedra") {
  const UctReport r = uct_ladder(hawaiian_polyhedra(5), 1, FgAbGroup::free(1));
  CHECK(r.stages_exact());
  CHECK(r.squares_commute());
  CHECK(r.colimit_exact);
  CHECK(r.ml.certified);
  CHECK(r.identification == FindingStatus::Certified);
  for (std::size_t i = 1; i <= 5; ++i) {
    CHECK(r.stages[i - 1].ext_to_cohomology.dom().is_trivial());
    CHECK(r.hom_system.group(i).canonical_form() == cf(i));
  }
  REQUIRE(r.image_hom.size() == 3);
  CHECK(r.image_hom[2].canonical_form() == cf(3));
}

TEST_CASE("uct ladder on the dyadic solenoid withholds the identification") {
  const UctReport r = uct_ladder(solenoid_polyhedra(2, 5), 1, FgAbGroup::free(1));
  CHECK(r.stages_exact());
  CHECK(r.squares_commute());
  CHECK_FALSE(r.ml.certified);
  CHECK(r.identification == FindingStatus::Unknown);
  CHECK(r.nabla.findings[2].status == FindingStatus::Refuted);
  CHECK(r.image_hom.empty());
}

TEST_CASE("stage exactness over the zoo with several coefficients") {
  const std::vector<SimplicialComplex> zoo{circle(3), bouquet(2), sphere2(), wedge_spheres(2), proj_plane()};
  const std::vector<FgAbGroup> coeffs{FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(6),
                                      FgAbGroup::free(2)};
  for (const SimplicialComplex& k : zoo)
    for (const FgAbGroup& g : coeffs)
      for (std::size_t n = 0; n <= 2; ++n) {
        const UctReport r = uct_ladder(constant_polyhedra(k, 2), n, g);
        REQUIRE(r.stages_exact());
        REQUIRE(r.squares_commute());
      }
}

TEST_CASE("torsion coefficients never certify the identification") {
  const UctReport r = uct_ladder(hawaiian_polyhedra(4), 1, FgAbGroup::cyclic(2));
  CHECK(r.stages_exact());
  CHECK(r.ml.certified);
  CHECK(r.identification == FindingStatus::Unknown);
}

TEST_CASE("specker check") {
  const SpeckerReport one = specker_check(1);
  CHECK(one.independent_classes == 1);
  const SpeckerReport five = specker_check(5);
  CHECK(five.independent_classes == 5);
  CHECK(five.pairwise_distinct);
  CHECK(five.evaluation_is_identity);
  CHECK(five.factored_consistent);
  CHECK_THROWS_AS(specker_check(0), InputError);
}
