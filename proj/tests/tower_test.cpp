#include "doctest.h"

#include "prolim/tower.hpp"
#include "support.hpp"

using namespace prolim;
using prolim::testing::vec;

namespace {

IntMatrix scalar(long k) { return IntMatrix::from_rows({{k}}); }

// Z <- Z <- ... with the given multipliers as bonds.
InverseTower integer_tower(const std::vector<long>& multipliers) {
  const FgAbGroup z = FgAbGroup::free(1);
  std::vector<FgAbHom> bonds;
  for (long m : multipliers) bonds.emplace_back(z, z, scalar(m));
  return InverseTower(std::vector<FgAbGroup>(multipliers.size() + 1, z), std::move(bonds));
}

}  // namespace

TEST_CASE("tower construction validates bonds") {
  const FgAbGroup z = FgAbGroup::free(1);
  const FgAbGroup z2 = FgAbGroup::free(2);
  CHECK_THROWS_AS(InverseTower({z, z}, {}), InputError);
  CHECK_THROWS_AS(InverseTower({z, z}, {FgAbHom(z, z2, IntMatrix(2, 1))}), InputError);
  CHECK_THROWS_AS(InverseTower({}, {}), InputError);
  const InverseTower t = hawaii_tower(3);
  CHECK_THROWS_AS(t.group(0), InputError);
  CHECK_THROWS_AS(t.group(4), InputError);
  CHECK_THROWS_AS(t.bond(3), InputError);
  CHECK_THROWS_AS(t.composite(3, 2), InputError);
}

TEST_CASE("composites multiply bonds") {
  const InverseTower t = solenoid_tower(3, 5);
  CHECK(t.composite(2, 5).matrix() == scalar(27));
  CHECK(t.composite(4, 4).matrix() == scalar(1));
  const InverseTower h = hawaii_tower(4);
  CHECK(h.composite(2, 4).matrix() == IntMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(h.truncated(2).window() == 2);
}

TEST_CASE("threads are compatible and determined by the top level") {
  const InverseTower t = hawaii_tower(4);
  const Thread th = thread_from_top(t, vec({5, -1, 2, 7}));
  CHECK(th.at(1) == vec({5}));
  CHECK(th.at(3) == vec({5, -1, 2}));
  CHECK(is_compatible(t, th));
  Thread bad = th;
  bad.components[1] = vec({4, -1});
  CHECK_FALSE(is_compatible(t, bad));
  CHECK(generating_threads(t).size() == 4);

  const InverseTower s = solenoid_tower(2, 4);
  const Thread g = generating_threads(s).front();
  CHECK(g.at(1) == vec({8}));
  CHECK(g.at(4) == vec({1}));
}

TEST_CASE("hawaiian tower stabilizes one step later") {
  const MLReport r = is_mittag_leffler(hawaii_tower(5));
  CHECK(r.certified);
  REQUIRE(r.levels.size() == 5);
  for (std::size_t i = 1; i <= 3; ++i) {
    CHECK(r.levels[i - 1].stabilization_index == i + 1);
    for (const auto& idx : r.levels[i - 1].chain_indices) CHECK(idx == Integer(1));
  }
  CHECK_FALSE(r.levels[3].stabilization_index.has_value());
  CHECK_FALSE(r.levels[4].stabilization_index.has_value());
  CHECK(r.levels[4].chain_indices.empty());
}

TEST_CASE("solenoid images never stabilize and indices double") {
  const InverseTower t = solenoid_tower(2, 6);
  const MLReport r = is_mittag_leffler(t);
  CHECK_FALSE(r.certified);
  CHECK_FALSE(lim1_status(t).vanishes);
  for (std::size_t i = 1; i <= 6; ++i) {
    const LevelStability& l = r.levels[i - 1];
    CHECK_FALSE(l.stabilization_index.has_value());
    for (std::size_t j = i + 1; j <= 6; ++j) {
      Integer expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), 2, j - i);
      CHECK(l.chain_indices[j - i - 1] == expected);
    }
  }
  CHECK_FALSE(stable_image(t, 1).has_value());
}

TEST_CASE("constant torsion tower is Mittag-Leffler") {
  const InverseTower t = constant_tower(FgAbGroup::cyclic(4), 4);
  const MLReport r = is_mittag_leffler(t);
  CHECK(r.certified);
  CHECK(r.levels[0].stabilization_index == 2);
  CHECK(r.levels[1].stabilization_index == 3);
  CHECK(lim1_status(t).vanishes);
}

TEST_CASE("stable image of x2 followed by identities is 2Z") {
  const InverseTower t = integer_tower({2, 1, 1, 1});
  const auto s = stable_image(t, 1);
  REQUIRE(s.has_value());
  CHECK(s->equals(Subgroup(FgAbGroup::free(1), scalar(2))));
  CHECK(level_stability(t, 1).stabilization_index == 2);
  CHECK(is_mittag_leffler(t).certified);
}

TEST_CASE("a late non-surjective bond breaks certification of a larger window") {
  const InverseTower t = integer_tower({1, 1, 2});
  CHECK(is_mittag_leffler(t.truncated(3)).certified);
  CHECK_FALSE(is_mittag_leffler(t).certified);
}

TEST_CASE("windows too short to confirm are not certified") {
  CHECK_FALSE(is_mittag_leffler(constant_tower(FgAbGroup::free(1), 2)).certified);
  CHECK_FALSE(is_mittag_leffler(constant_tower(FgAbGroup::free(1), 1)).certified);
}

TEST_CASE("images descend and agree across windows") {
  const InverseTower t = integer_tower({3, 1, 2, 1, 1, 1});
  for (std::size_t i = 1; i <= t.window(); ++i)
    for (std::size_t j = i; j < t.window(); ++j) CHECK(t.image(i, j).contains(t.image(i, j + 1)));
  const auto full = level_stability(t, 1);
  const auto part = level_stability(t.truncated(5), 1);
  REQUIRE(full.stabilization_index.has_value());
  CHECK(full.stabilization_index == part.stabilization_index);
  CHECK(full.stabilization_index == 4);
}

TEST_CASE("direct systems push classes forward") {
  const FgAbGroup z = FgAbGroup::free(1);
  const DirectSystem d({z, z, z}, {FgAbHom(z, z, scalar(2)), FgAbHom(z, z, scalar(3))});
  CHECK(push(d, {1, vec({1})}, 3) == vec({6}));
  CHECK(d.composite(1, 3).matrix() == scalar(6));
  CHECK_THROWS_AS(push(d, {3, vec({1})}, 2), InputError);

  const ColimQuery q = colim_query(d, {1, vec({1})}, {2, vec({2})});
  CHECK(q.equal);
  CHECK(q.agreement_stage == 2);
  CHECK_FALSE(q.iso_from.has_value());
  CHECK_FALSE(colim_query(d, {1, vec({1})}, {3, vec({5})}).equal);
}

TEST_CASE("direct system classes that die become equal") {
  const FgAbGroup z4 = FgAbGroup::cyclic(4);
  const FgAbGroup z2 = FgAbGroup::cyclic(2);
  // Z/4 -> Z/2 (reduction) -> Z/2 (identity).
  const DirectSystem d({z4, z2, z2}, {FgAbHom(z4, z2, scalar(1)), FgAbHom::identity(z2)});
  const ColimQuery q = colim_query(d, {1, vec({1})}, {1, vec({3})});
  CHECK(q.equal);
  CHECK(q.agreement_stage == 2);
  CHECK(q.iso_from == 2);
  REQUIRE(q.colimit.has_value());
  CHECK(q.colimit->canonical_form() == CanonicalForm{0, {2}});
}

TEST_CASE("hom system of the hawaiian tower grows") {
  const HomSystem h = hom_system(hawaii_tower(4), FgAbGroup::free(1));
  for (std::size_t i = 1; i <= 4; ++i) CHECK(h.system.group(i).canonical_form() == CanonicalForm{i, {}});
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK_FALSE(h.system.bond(i).is_isomorphism());
    // Precomposition with a projection is injective.
    CHECK(kic(h.system.bond(i)).kernel().is_trivial());
  }
  CHECK_FALSE(eventual_isomorphism_stage(h.system).has_value());
}

TEST_CASE("hom system of the solenoid multiplies by p") {
  const InverseTower t = solenoid_tower(2, 3);
  const FgAbGroup z = FgAbGroup::free(1);
  const HomSystem h = hom_system(t, z);
  const FgAbHom id = FgAbHom::identity(z);
  const FgAbHom twice(z, z, scalar(2));
  const IntVector pushed = push(h.system, {1, h.stages[0].coordinates(id)}, 2);
  CHECK(h.system.group(2).equal(pushed, h.stages[1].coordinates(twice)));
  CHECK(h.stages[1].realize(pushed).equals(twice));
}

TEST_CASE("ext system of a torsion tower") {
  // Z/4 <-x2- Z/4 <-x2- Z/4 : Ext(Z/4, Z) = Z/4 with induced x2.
  const FgAbGroup z4 = FgAbGroup::cyclic(4);
  const FgAbHom twice(z4, z4, scalar(2));
  const InverseTower t({z4, z4, z4}, {twice, twice});
  const ExtSystem e = ext_system(t, FgAbGroup::free(1));
  CHECK(e.system.group(1).canonical_form() == CanonicalForm{0, {4}});
  CHECK_FALSE(e.system.bond(1).is_zero());
  CHECK(e.system.composite(1, 3).is_zero());

  const ExtSystem s = ext_system(solenoid_tower(3, 3), FgAbGroup::free(1));
  for (std::size_t i = 1; i <= 3; ++i) CHECK(s.system.group(i).is_trivial());

  const ExtSystem c = ext_system(constant_tower(z4, 3), FgAbGroup::free(1));
  CHECK(eventual_isomorphism_stage(c.system) == 1);
}

TEST_CASE("thread homomorphisms") {
  const InverseTower t = hawaii_tower(3);
  const FgAbGroup z = FgAbGroup::free(1);
  const ThreadHom f = nabla_apply(2, FgAbHom(t.group(2), z, IntMatrix::from_rows({{0, 1}})));
  CHECK(f.is_factored());
  CHECK(f.stage() == 2);
  const Thread th = thread_from_top(t, vec({4, 5, 6}));
  CHECK(f.evaluate(th) == vec({5}));
  CHECK_FALSE(f.kills(th));
  CHECK(f.kills(thread_from_top(t, vec({4, 0, 6}))));

  const ThreadHom g = ThreadHom::formula(
      z, [](const Thread& x) { return x.at(3); }, "third");
  CHECK_FALSE(g.is_factored());
  CHECK(g.label() == "third");
  CHECK_THROWS_AS(g.evaluate(th), InputError);
  const ThreadHom h = ThreadHom::formula(
      z, [](const Thread& x) { return IntVector{x.at(3)[2]}; }, "last");
  CHECK(h.evaluate(th) == vec({6}));
  CHECK_THROWS_AS(g.stage(), std::bad_variant_access);
}
