#include "prolim/cech.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace prolim {

namespace {

// H_{n-1} with H_{-1} = 0.
Subquotient lower_homology(const SimplicialComplex& k, std::size_t n) {
  if (n > 0) return homology(k, n - 1);
  const FgAbGroup none = FgAbGroup::free(0);
  return Subquotient(boundary_hom(k, 0), FgAbHom::zero(none, none));
}

FgAbHom lower_map(const SimplicialMap& f, std::size_t n, const Subquotient& from, const Subquotient& to) {
  if (n == 0) return FgAbHom::zero(from.group(), to.group());
  return induced_map(f, n - 1, from, to);
}

struct Stage {
  Subquotient lower;
  Subquotient upper;
  Subquotient coh;
  ExtGroup ext;
  HomGroup hom;
  FgAbHom iota;
  FgAbHom h;
};

// Ext(H_{n-1}, G) -> H^n: e goes to the cochain sigma -> sum_t a_t(sigma) e_t,
// where a(sigma) expresses the class lift of d(sigma) in the relator basis.
FgAbHom ext_to_cohomology(const SimplicialComplex& k, std::size_t n, const FgAbGroup& g, const Subquotient& lower,
                          const ExtGroup& ext, const Subquotient& coh) {
  const IntMatrix d = boundary(k, n);
  const std::size_t s = ext.relator_basis().cols();
  IntMatrix a(s, k.count(n));
  for (std::size_t sigma = 0; sigma < k.count(n); ++sigma) {
    const auto coords = ext.relator_lattice().coordinates(lower.lift(d.column(sigma)));
    if (!coords) throw std::logic_error("boundary class is not a relation of H_{n-1}");
    for (std::size_t t = 0; t < s; ++t) a(t, sigma) = (*coords)[t];
  }
  return FgAbHom(ext.group(), coh.group(), coh.classes_of(kron_identity(a.transpose(), g.ngens())));
}

// H^n -> Hom(H_n, G): evaluate cocycle representatives on cycle representatives.
FgAbHom cohomology_to_hom(const FgAbGroup& g, const Subquotient& upper, const Subquotient& coh, const HomGroup& hom) {
  const std::size_t m = g.ngens();
  const IntMatrix& cycles = upper.representatives();
  const IntMatrix& cocycles = coh.representatives();
  IntMatrix out(hom.group().ngens(), coh.group().ngens());
  for (std::size_t j = 0; j < cocycles.cols(); ++j) {
    IntMatrix values(m, cycles.cols());
    for (std::size_t q = 0; q < cycles.cols(); ++q)
      for (std::size_t sigma = 0; sigma < cycles.rows(); ++sigma) {
        if (sgn(cycles(sigma, q)) == 0) continue;
        for (std::size_t r = 0; r < m; ++r) values(r, q) += cycles(sigma, q) * cocycles(sigma * m + r, j);
      }
    const IntVector c = hom.coordinates(FgAbHom(upper.group(), g, std::move(values)));
    for (std::size_t r = 0; r < c.size(); ++r) out(r, j) = c[r];
  }
  return FgAbHom(coh.group(), hom.group(), std::move(out));
}

Stage make_stage(const SimplicialComplex& k, std::size_t n, const FgAbGroup& g) {
  Subquotient lower = lower_homology(k, n);
  Subquotient upper = homology(k, n);
  Subquotient coh = cohomology(k, n, g);
  ExtGroup ext(lower.group(), g);
  HomGroup hom(upper.group(), g);
  FgAbHom iota = ext_to_cohomology(k, n, g, lower, ext, coh);
  FgAbHom h = cohomology_to_hom(g, upper, coh, hom);
  return Stage{std::move(lower), std::move(upper), std::move(coh), std::move(ext), std::move(hom), std::move(iota),
               std::move(h)};
}

std::optional<IntVector> first_nonzero_column(const FgAbGroup& g, const IntMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!g.is_zero(m.column(c))) return g.reduce(m.column(c));
  return std::nullopt;
}

StageSequence check_stage(std::size_t index, const Stage& st) {
  StageSequence s{index, st.iota, st.h, false, false, false, std::nullopt};
  const KernelImageCokernel ki = kic(st.iota);
  const KernelImageCokernel kh = kic(st.h);
  s.injective = ki.kernel().is_trivial();
  if (!s.injective) s.counterexample = first_nonzero_column(st.iota.dom(), ki.kernel_inclusion.matrix());

  const Subgroup image = Subgroup::image(st.iota);
  const Subgroup kernel = Subgroup::image(kh.kernel_inclusion);
  s.exact_middle = image.equals(kernel);
  if (!s.exact_middle && !s.counterexample) {
    const IntMatrix& gens = kh.kernel_inclusion.matrix();
    for (std::size_t c = 0; c < gens.cols() && !s.counterexample; ++c)
      if (!image.contains(gens.column(c))) s.counterexample = gens.column(c);
    const IntMatrix& imgs = st.iota.matrix();
    for (std::size_t c = 0; c < imgs.cols() && !s.counterexample; ++c)
      if (!kernel.contains(imgs.column(c))) s.counterexample = imgs.column(c);
  }

  s.surjective = kh.cokernel().is_trivial();
  if (!s.surjective && !s.counterexample) {
    const std::size_t n = st.h.cod().ngens();
    for (std::size_t c = 0; c < n && !s.counterexample; ++c)
      if (!kh.cokernel().is_zero(kh.cokernel_projection.apply(unit_vector(n, c)))) s.counterexample = unit_vector(n, c);
  }
  return s;
}

}  // namespace

InverseTower homology_tower(const PolyhedralTower& pt, std::size_t n) {
  std::vector<Subquotient> levels;
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 1; i <= pt.window(); ++i) {
    levels.push_back(homology(pt.level(i), n));
    groups.push_back(levels.back().group());
  }
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 1; i < pt.window(); ++i) bonds.push_back(induced_map(pt.bond(i), n, levels[i], levels[i - 1]));
  return InverseTower(std::move(groups), std::move(bonds));
}

DirectSystem cohomology_system(const PolyhedralTower& pt, std::size_t n, const FgAbGroup& g) {
  std::vector<Subquotient> stages;
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 1; i <= pt.window(); ++i) {
    stages.push_back(cohomology(pt.level(i), n, g));
    groups.push_back(stages.back().group());
  }
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 1; i < pt.window(); ++i)
    bonds.push_back(induced_cohomology_map(pt.bond(i), n, g, stages[i - 1], stages[i]));
  return DirectSystem(std::move(groups), std::move(bonds));
}

bool UctReport::stages_exact() const {
  for (const StageSequence& s : stages)
    if (!s.exact()) return false;
  return true;
}

bool UctReport::squares_commute() const {
  for (const LadderSquare& s : squares)
    if (!s.commutes) return false;
  return true;
}

UctReport uct_ladder(const PolyhedralTower& pt, std::size_t n, const FgAbGroup& g) {
  std::vector<Stage> stages;
  for (std::size_t i = 1; i <= pt.window(); ++i) stages.push_back(make_stage(pt.level(i), n, g));

  std::vector<StageSequence> sequences;
  for (std::size_t i = 1; i <= pt.window(); ++i) sequences.push_back(check_stage(i, stages[i - 1]));

  std::vector<LadderSquare> squares;
  std::vector<FgAbGroup> ext_groups, coh_groups, hom_groups, homology_groups;
  for (const Stage& st : stages) {
    ext_groups.push_back(st.ext.group());
    coh_groups.push_back(st.coh.group());
    hom_groups.push_back(st.hom.group());
    homology_groups.push_back(st.upper.group());
  }
  std::vector<FgAbHom> ext_bonds, coh_bonds, hom_bonds, homology_bonds;
  for (std::size_t i = 1; i < pt.window(); ++i) {
    const Stage& here = stages[i - 1];
    const Stage& next = stages[i];
    const SimplicialMap& f = pt.bond(i);
    const FgAbHom down_lower = lower_map(f, n, next.lower, here.lower);
    const FgAbHom down_upper = induced_map(f, n, next.upper, here.upper);
    ext_bonds.push_back(ext_map(here.ext, next.ext, down_lower));
    coh_bonds.push_back(induced_cohomology_map(f, n, g, here.coh, next.coh));
    hom_bonds.push_back(hom_precompose(here.hom, next.hom, down_upper));
    homology_bonds.push_back(down_upper);
    squares.push_back(
        {i, "ext", compose(next.iota, ext_bonds.back()).equals(compose(coh_bonds.back(), here.iota))});
    squares.push_back({i, "hom", compose(next.h, coh_bonds.back()).equals(compose(hom_bonds.back(), here.h))});
  }

  const InverseTower tower(std::move(homology_groups), std::move(homology_bonds));
  UctReport r{n,
              pt.window(),
              std::move(sequences),
              std::move(squares),
              DirectSystem(std::move(ext_groups), std::move(ext_bonds)),
              DirectSystem(std::move(coh_groups), std::move(coh_bonds)),
              DirectSystem(std::move(hom_groups), std::move(hom_bonds)),
              false,
              is_mittag_leffler(tower),
              nabla_diagnostics(tower, g),
              FindingStatus::Unknown,
              {},
              {}};
  r.colimit_exact = r.stages.back().exact() && r.squares_commute();

  for (const LevelStability& l : r.ml.levels) {
    if (!l.stabilization_index) continue;
    const Subgroup s = tower.image(l.level, *l.stabilization_index);
    r.image_hom.push_back(HomGroup(s.as_group().dom(), g).group());
  }

  if (!r.ml.certified) {
    r.identification_reason = "homology tower does not stabilize inside the window";
  } else if (!g.is_free()) {
    r.identification_reason = "coefficients have torsion; stage factoring is not available";
  } else if (r.nabla.findings[1].status != FindingStatus::Certified) {
    r.identification_reason = "bonds between stable images are not onto";
  } else {
    r.identification = FindingStatus::Certified;
    r.identification_reason = "Mittag-Leffler with stable images mapped onto each other and free coefficients";
  }
  return r;
}

SpeckerReport specker_check(std::size_t n) {
  if (n == 0) throw InputError("specker check needs a window of at least 1");
  const InverseTower t = hawaii_tower(n);
  const FgAbGroup z = FgAbGroup::free(1);
  const HomSystem hs = hom_system(t, z);
  const HomGroup& top = hs.stages.back();
  const auto threads = generating_threads(t);

  SpeckerReport r;
  r.window = n;
  r.evaluation = IntMatrix(top.basis().size(), threads.size());
  for (std::size_t b = 0; b < top.basis().size(); ++b) {
    const ThreadHom phi = nabla_apply(n, top.basis()[b]);
    for (std::size_t k = 0; k < threads.size(); ++k) r.evaluation(b, k) = phi.evaluate(threads[k])[0];
  }
  r.independent_classes = rank(r.evaluation);
  std::set<IntVector> rows;
  for (std::size_t b = 0; b < r.evaluation.rows(); ++b) rows.insert(r.evaluation.row(b));
  r.pairwise_distinct = rows.size() == r.evaluation.rows();
  r.evaluation_is_identity = r.evaluation == IntMatrix::identity(n);

  r.factored_consistent = true;
  for (std::size_t i = 1; i <= n && r.factored_consistent; ++i) {
    const HomGroup& stage = hs.stages[i - 1];
    for (const FgAbHom& phi : stage.basis()) {
      const IntVector pushed = push(hs.system, {i, stage.coordinates(phi)}, n);
      const ThreadHom here = nabla_apply(i, phi);
      const ThreadHom there = nabla_apply(n, top.realize(pushed));
      for (const Thread& th : threads)
        if (here.evaluate(th) != there.evaluate(th)) r.factored_consistent = false;
    }
  }
  return r;
}

}  // namespace prolim
