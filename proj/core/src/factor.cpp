#include "prolim/factor.hpp"

#include <stdexcept>
#include <utility>

namespace prolim {

namespace {

// Minimal level at which the thread of x is nonzero; J+1 when x = 0 in H_J.
std::size_t first_nonzero_level(const InverseTower& t, const IntVector& x) {
  for (std::size_t l = 1; l <= t.window(); ++l)
    if (!t.group(l).is_zero(t.project_from_top(l, x))) return l;
  return t.window() + 1;
}

// Generators of ker(p_level^J) as elements of H_J.
IntMatrix kernel_generators(const InverseTower& t, std::size_t level) {
  return kic(t.composite(level, t.window())).kernel_inclusion.matrix();
}

std::optional<IntMatrix> solve_rows(const IntMatrix& a, const IntMatrix& b) {
  // m * a = b, one row of m at a time.
  const IntMatrix at = a.transpose();
  IntMatrix m(b.rows(), a.rows());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    const auto row = solve(at, b.row(r));
    if (!row) return std::nullopt;
    for (std::size_t c = 0; c < a.rows(); ++c) m(r, c) = (*row)[c];
  }
  return m;
}

Subgroup value_subgroup(const FgAbHom& phi, const IntMatrix& through) {
  return Subgroup(phi.cod(), phi.matrix() * through);
}

}  // namespace

TorsionFreeReplacement torsion_free_tower(const InverseTower& t) {
  std::vector<FgAbHom> quotients;
  std::vector<FgAbGroup> groups;
  for (std::size_t i = 1; i <= t.window(); ++i) {
    quotients.push_back(torsion_and_free(t.group(i)).free_quotient);
    groups.push_back(quotients.back().cod());
  }
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 1; i < t.window(); ++i) {
    const FgAbHom& upper = quotients[i];
    const IntMatrix down = quotients[i - 1].matrix() * t.bond(i).matrix();
    const std::size_t r = upper.cod().ngens();
    IntMatrix m(groups[i - 1].ngens(), r);
    for (std::size_t k = 0; k < r; ++k) {
      const auto section = solve(upper.matrix(), unit_vector(r, k));
      if (!section) throw std::logic_error("torsion-free quotient map is not surjective");
      const IntVector col = down * *section;
      for (std::size_t row = 0; row < col.size(); ++row) m(row, k) = col[row];
    }
    bonds.emplace_back(groups[i], groups[i - 1], std::move(m));
  }
  return TorsionFreeReplacement{InverseTower(std::move(groups), std::move(bonds)), std::move(quotients)};
}

PurifiedTower purified_tower(const InverseTower& t) {
  for (std::size_t i = 1; i <= t.window(); ++i)
    if (!t.group(i).is_free()) throw InputError("purified tower needs free levels; level " + std::to_string(i) + " has torsion");
  PurifiedTower out;
  if (t.window() < 3) {
    out.unstabilized.push_back(1);
    return out;
  }
  for (std::size_t i = 1; i + 2 <= t.window(); ++i) {
    auto s = stable_image(t, i);
    if (!s) {
      out.unstabilized.push_back(i);
      continue;
    }
    out.levels.push_back(purify(*s));
  }
  if (!out.unstabilized.empty()) out.levels.clear();
  return out;
}

std::optional<StabilizationCertificate> stabilization_index(const InverseTower& t, const PurifiedTower& p,
                                                            std::size_t k) {
  if (!p.ok() || k < 1 || k > p.levels.size()) return std::nullopt;
  const auto stable = stable_image(t, k);
  if (!stable) return std::nullopt;
  std::optional<StabilizationCertificate> cert;
  std::vector<Integer> chain;
  for (std::size_t n = k + 1; n <= t.window(); ++n) {
    const IntMatrix through = n <= p.levels.size() ? p.levels[n - 1].generators()
                                                   : IntMatrix::identity(t.group(n).ngens());
    const Subgroup img(t.group(k), t.composite(k, n).matrix() * through);
    const auto idx = index(*stable, img);
    if (!idx) throw std::logic_error("purified image has infinite index over the stable image");
    chain.push_back(*idx);
    if (!cert && *idx == 1) cert = StabilizationCertificate{k, n, img, {}};
  }
  if (cert) cert->chain = std::move(chain);
  return cert;
}

IntMatrix top_matrix(const InverseTower& t, const ThreadHom& phi) {
  if (phi.is_factored()) {
    if (phi.stage() > t.window()) throw InputError("factoring stage lies beyond the window");
    if (phi.map().dom().ngens() != t.group(phi.stage()).ngens())
      throw InputError("stage map does not start at the stage group");
    return phi.map().matrix() * t.composite(phi.stage(), t.window()).matrix();
  }
  const auto threads = generating_threads(t);
  std::vector<IntVector> cols;
  cols.reserve(threads.size());
  for (const Thread& th : threads) cols.push_back(phi.evaluate(th));
  return IntMatrix::from_columns(phi.codomain().ngens(), cols);
}

std::optional<NoFactorWitness> find_kernel_witness(const InverseTower& t, const ThreadHom& phi,
                                                   std::size_t level) {
  const IntMatrix top = top_matrix(t, phi);
  const FgAbGroup& g = phi.codomain();
  const IntMatrix ker = kernel_generators(t, level);
  std::optional<NoFactorWitness> best;
  std::size_t best_depth = 0;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    const IntVector x = ker.column(c);
    const IntVector v = top * x;
    if (g.is_zero(v)) continue;
    const std::size_t depth = first_nonzero_level(t, x);
    if (!best || depth < best_depth) {
      best = NoFactorWitness{level, thread_from_top(t, x), x, g.reduce(v)};
      best_depth = depth;
    }
  }
  return best;
}

FactorResult factor_hom(const InverseTower& t, const ThreadHom& phi, const FgAbGroup& g) {
  if (!g.is_free()) throw InputError("factoring needs a torsion-free target, got " + g.canonical_form().to_string());
  if (phi.codomain().ngens() != g.ngens() || !(phi.codomain().relations() == g.relations()))
    throw InputError("thread homomorphism codomain differs from the target group");
  const std::size_t top_level = t.window();
  FactorResult out;
  for (std::size_t m = 1; m <= top_level; ++m) {
    if (auto w = find_kernel_witness(t, phi, m)) {
      out.witnesses.push_back(std::move(*w));
      continue;
    }
    out.kernel_level = m;
    break;
  }

  // phi vanishes on ker p_m, so it is defined on p_m(H_J); look for a stage
  // whose whole group admits the extension.
  const Standardization st = standardize(g);
  const IntMatrix target = st.to_standard.matrix() * top_matrix(t, phi);
  for (std::size_t n = out.kernel_level; n <= top_level; ++n) {
    const FgAbGroup& h = t.group(n);
    const IntMatrix a = hcat(h.relations(), t.composite(n, top_level).matrix());
    const IntMatrix b = hcat(IntMatrix(target.rows(), h.relations().cols()), target);
    if (auto m = solve_rows(a, b)) {
      out.stage = n;
      out.map = FgAbHom(h, g, st.from_standard.matrix() * *m);
      break;
    }
  }
  if (!out.map) throw std::logic_error("no stage admits a factorization, not even the top");
  out.window_edge = out.stage == top_level && top_level > 1;
  return out;
}

std::string to_string(FindingStatus s) {
  switch (s) {
    case FindingStatus::Certified:
      return "Certified";
    case FindingStatus::Refuted:
      return "Refuted";
    case FindingStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

NablaReport nabla_diagnostics(const InverseTower& t, const FgAbGroup& g) {
  NablaReport r;
  r.ml = is_mittag_leffler(t);
  r.findings.push_back({"surjectivity", FindingStatus::Certified,
                        "every factored thread homomorphism is the image of its stage class", std::nullopt});
  if (g.is_trivial()) {
    r.findings.push_back({"image_injectivity", FindingStatus::Certified, "trivial coefficients", std::nullopt});
    r.findings.push_back({"raw_injectivity", FindingStatus::Certified, "trivial coefficients", std::nullopt});
    return r;
  }

  NablaFinding image{"image_injectivity", FindingStatus::Unknown, "images do not stabilize inside the window",
                     std::nullopt};
  if (r.ml.certified) {
    bool epi = true;
    const std::size_t last = t.window() - 2;
    for (std::size_t i = 1; i < last && epi; ++i) {
      const Subgroup lower = t.image(i, *r.ml.levels[i - 1].stabilization_index);
      const Subgroup upper = t.image(i + 1, *r.ml.levels[i].stabilization_index);
      epi = lower.equals(Subgroup(t.group(i), t.bond(i).matrix() * upper.generators()));
    }
    image.status = epi ? FindingStatus::Certified : FindingStatus::Unknown;
    image.reason = epi ? "stable images exist and the bonds map them onto each other"
                       : "a bond between stable images is not onto";
  }
  r.findings.push_back(std::move(image));

  NablaFinding raw{"raw_injectivity", FindingStatus::Unknown, "no decision inside the window", std::nullopt};
  if (r.ml.certified) {
    raw.status = FindingStatus::Certified;
    raw.reason = "a stage class dies in the colimit exactly when it vanishes on the stable image";
  } else {
    const std::size_t top = t.window();
    for (std::size_t i = 1; i < top && !raw.witness; ++i) {
      const HomGroup hg(t.group(i), g);
      for (const FgAbHom& phi : hg.basis()) {
        std::vector<Subgroup> values;
        for (std::size_t j = i; j <= top; ++j) values.push_back(value_subgroup(phi, t.composite(i, j).matrix()));
        if (values.back().generators().cols() == 0 || Subgroup::trivial(g).contains(values.back())) continue;
        bool strict = true;
        for (std::size_t k = 0; k + 1 < values.size() && strict; ++k) strict = !values[k + 1].contains(values[k]);
        if (!strict) continue;
        const auto depth = index(values.back(), values.front());
        if (!depth) continue;
        raw.witness = NablaWitness{i, hg.coordinates(phi), zero_vector(hg.group().ngens()), *depth};
        break;
      }
    }
    if (raw.witness) {
      raw.status = FindingStatus::Refuted;
      raw.reason =
          "candidate: the stage class differs from zero at every window stage, yet its values on threads shrink "
          "at every step and are divisible by the depth on every window thread";
    }
  }
  r.findings.push_back(std::move(raw));
  return r;
}

DiagonalWitness diagonal_witness(const InverseTower& t, const ThreadHom& phi, std::optional<std::size_t> max_rounds) {
  const IntMatrix top = top_matrix(t, phi);
  const FgAbGroup& g = phi.codomain();
  DiagonalWitness out;
  std::size_t k = 1;
  while (true) {
    if (max_rounds && out.rounds.size() >= *max_rounds) {
      out.diagnostic = "round limit " + std::to_string(*max_rounds) + " reached";
      return out;
    }
    const IntMatrix ker = kernel_generators(t, k);
    std::optional<IntVector> a, b;
    std::size_t a_depth = 0, b_depth = 0;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      const IntVector x = ker.column(c);
      const std::size_t d = first_nonzero_level(t, x);
      if (d > t.window()) continue;
      if (!b || d < b_depth) b = x, b_depth = d;
      if (!g.is_zero(top * x) && (!a || d < a_depth)) a = x, a_depth = d;
    }
    if (!a) {
      if (k == t.window()) {
        out.diagnostic = "window exhausted at level " + std::to_string(k);
      } else {
        out.diagnostic = "phi vanishes on ker p_" + std::to_string(k) + ": it factors at level " + std::to_string(k);
        out.factors = true;
      }
      return out;
    }
    IntVector u = *a;
    if (b_depth < a_depth) {
      // p_{b_depth}(a) = 0, so a +- b is first nonzero where b is.
      for (const IntVector& cand : {*a + *b, *a - *b}) {
        if (!g.is_zero(top * cand)) {
          u = cand;
          break;
        }
      }
    }
    const std::size_t depth = first_nonzero_level(t, u);
    out.rounds.push_back(DiagonalRound{k, depth, thread_from_top(t, u), u, g.reduce(top * u)});
    k = depth;
  }
}

}  // namespace prolim
