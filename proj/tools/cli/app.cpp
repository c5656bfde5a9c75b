#include "cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli/builders.hpp"

namespace prolim::cli {

namespace {

std::string joined(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

std::string text(const FgAbGroup& g) { return g.canonical_form().to_string(); }

/// Files and inline JSON carry their own length; builder names do not.
bool self_sized(const std::string& desc) {
  const auto first = desc.find_first_not_of(" \t\n");
  if (first != std::string::npos && (desc[first] == '{' || desc[first] == '[')) return true;
  std::error_code ec;
  return std::filesystem::is_regular_file(desc, ec);
}

std::size_t checked_window(std::size_t window) {
  if (window < 2) throw InputError("window must be at least 2");
  if (window > window_max())
    throw InputError("window " + std::to_string(window) + " exceeds PROLIM_WINDOW_MAX = " + std::to_string(window_max()));
  return window;
}

/// Window from --window, or `fallback` when it is absent.
std::size_t window_or(const RunConfig& c, std::size_t fallback) { return checked_window(c.window.value_or(fallback)); }

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string("missing --") + flag);
  return value;
}

template <class T>
const T& required(const std::optional<T>& value, const char* flag) {
  if (!value) throw InputError(std::string("missing --") + flag);
  return *value;
}

InverseTower tower_argument(const RunConfig& c) {
  const std::string& desc = required(c.tower, "tower");
  if (!c.window && !self_sized(desc)) throw InputError("builder towers need --window");
  InverseTower t = build_tower(desc, c.window.value_or(window_max()));
  checked_window(t.window());
  return t;
}

int status_exit(FindingStatus s) {
  switch (s) {
    case FindingStatus::Certified: return kOk;
    case FindingStatus::Refuted: return kClaimFailed;
    case FindingStatus::Unknown: return kWindowInsufficient;
  }
  return kClaimFailed;
}

int nabla_exit(const NablaReport& r) {
  int code = kOk;
  for (const NablaFinding& f : r.findings) {
    if (f.status == FindingStatus::Unknown) return kWindowInsufficient;
    if (f.status == FindingStatus::Refuted) code = kClaimFailed;
  }
  return code;
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

RunResult cmd_snf(const RunConfig& c) {
  const IntMatrix a = build_matrix(required(c.matrix, "matrix"));
  const SmithForm s = snf(a);
  const std::vector<Integer> diag = s.diagonal();
  std::vector<Integer> factors(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(s.rank));
  bool chain = true;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i)
    chain = chain && mpz_divisible_p(factors[i + 1].get_mpz_t(), factors[i].get_mpz_t()) != 0;
  const bool product = s.u * a * s.v == s.d;
  const bool unimodular = is_unimodular(s.u) && is_unimodular(s.v);
  Json checks{{"uav_equals_d", product}, {"unimodular", unimodular}, {"divisibility_chain", chain}};
  RunResult r;
  r.report = Json{{"input", to_json(a)},
                  {"d", to_json(s.d)},
                  {"u", to_json(s.u)},
                  {"v", to_json(s.v)},
                  {"rank", s.rank},
                  {"invariant_factors", to_json(IntVector(factors))},
                  {"checks", checks}};
  r.exit_code = product && unimodular && chain ? kOk : kClaimFailed;
  std::ostringstream summary;
  summary << "rank " << s.rank << ", invariant factors";
  for (const Integer& f : factors) summary << ' ' << f;
  r.summary = summary.str();
  return r;
}

RunResult cmd_group_canon(const RunConfig& c) {
  const FgAbGroup g = build_group(required(c.group, "group"));
  const auto order = g.order();
  RunResult r;
  r.report = Json{{"group", to_json(g)}, {"order", order ? to_json(*order) : Json("infinite")}};
  r.summary = text(g);
  return r;
}

RunResult cmd_hom(const RunConfig& c) {
  const FgAbGroup a = build_group(required(c.source, "source"));
  const FgAbGroup b = build_group(required(c.target, "target"));
  const HomGroup h = hom_group(a, b);
  Json basis = Json::array();
  for (const FgAbHom& f : h.basis()) basis.push_back(to_json(f.matrix()));
  const auto order = h.group().order();
  RunResult r;
  r.report = Json{{"source", text(a)},
                  {"target", text(b)},
                  {"hom", to_json(h.group().canonical_form())},
                  {"order", order ? to_json(*order) : Json("infinite")},
                  {"basis", basis}};
  r.summary = "Hom(" + text(a) + ", " + text(b) + ") = " + text(h.group());
  return r;
}

RunResult cmd_ext(const RunConfig& c) {
  const FgAbGroup a = build_group(required(c.source, "source"));
  const FgAbGroup b = build_group(required(c.target, "target"));
  const ExtGroup e = ext_group(a, b);
  const auto order = e.group().order();
  RunResult r;
  r.report = Json{{"source", text(a)},
                  {"target", text(b)},
                  {"ext", to_json(e.group().canonical_form())},
                  {"order", order ? to_json(*order) : Json("infinite")},
                  {"relator_basis", to_json(e.relator_basis())}};
  r.summary = "Ext(" + text(a) + ", " + text(b) + ") = " + text(e.group());
  return r;
}

RunResult cmd_purify(const RunConfig& c) {
  const FgAbGroup h = build_group(required(c.group, "group"));
  const Subgroup b(h, build_matrix(required(c.matrix, "matrix")));
  const Subgroup sat = purify(b);
  const auto idx = index(b, sat);
  const FgAbGroup quotient(h.ngens(), hcat(h.relations(), sat.lattice().basis()));
  const bool contains = sat.contains(b);
  const bool finite = idx.has_value();
  const bool torsion_free = quotient.is_free();
  RunResult r;
  r.report = Json{{"subgroup", to_json(b.generators())},
                  {"saturation", to_json(sat.lattice().basis())},
                  {"index", idx ? to_json(*idx) : Json(nullptr)},
                  {"quotient", text(quotient)},
                  {"checks", Json{{"contains_subgroup", contains},
                                  {"finite_index", finite},
                                  {"torsion_free_quotient", torsion_free}}}};
  r.exit_code = contains && finite && torsion_free ? kOk : kClaimFailed;
  r.summary = "saturation of index " + (idx ? idx->get_str() : std::string("infinity")) + ", quotient " +
              text(quotient);
  return r;
}

Json stable_images_json(const InverseTower& t) {
  Json out = Json::array();
  for (std::size_t i = 1; i <= t.window(); ++i) {
    const auto s = stable_image(t, i);
    out.push_back(s ? to_json(s->lattice().basis()) : Json(nullptr));
  }
  return out;
}

RunResult cmd_tower_analyze(const RunConfig& c) {
  const InverseTower t = tower_argument(c);
  const MLReport ml = is_mittag_leffler(t);
  Json groups = Json::array();
  for (std::size_t i = 1; i <= t.window(); ++i) groups.push_back(text(t.group(i)));
  RunResult r;
  r.report = Json{{"groups", groups},
                  {"mittag_leffler", to_json(ml)},
                  {"stable_images", stable_images_json(t)},
                  {"lim1", lim1_status(t).vanishes ? "vanishes" : "unknown"}};
  r.exit_code = ml.certified ? kOk : kWindowInsufficient;
  r.summary = ml.certified ? "Mittag-Leffler certified in window " + std::to_string(t.window())
                           : "NotStabilizedInWindow (window " + std::to_string(t.window()) + ")";
  return r;
}

RunResult cmd_tower_nabla(const RunConfig& c) {
  const InverseTower t = tower_argument(c);
  const NablaReport n = nabla_diagnostics(t, build_group(c.coeff));
  RunResult r;
  r.report = to_json(n);
  r.exit_code = nabla_exit(n);
  for (const NablaFinding& f : n.findings) r.summary += f.finding + ": " + to_string(f.status) + "\n";
  if (!r.summary.empty()) r.summary.pop_back();
  return r;
}

ThreadHom formula_argument(const InverseTower& t, const std::string& formula) {
  const auto colon = formula.find(':');
  const std::string name = formula.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : formula.substr(colon + 1);
  if (name == "coordinate") {
    const std::vector<Integer> k = parse_integer_list(arg);
    if (k.size() != 1 || sgn(k[0]) <= 0 || k[0] > Integer(t.group(t.window()).ngens()))
      throw InputError("coordinate needs an index between 1 and the top rank");
    const std::size_t index = k[0].get_ui() - 1;
    return ThreadHom::formula(
        FgAbGroup::free(1), [index](const Thread& th) { return IntVector{th.components.back()[index]}; },
        "coordinate " + arg + " of the top component");
  }
  if (name == "padic") {
    const std::vector<Integer> pk = parse_integer_list(arg);
    if (pk.size() != 2 || sgn(pk[1]) <= 0) throw InputError("padic formula is padic:p,K");
    return padic_thread_hom(pk[0], static_cast<unsigned>(pk[1].get_ui()));
  }
  throw InputError("unknown formula \"" + formula + "\"");
}

RunResult cmd_tower_factor(const RunConfig& c) {
  const InverseTower t = tower_argument(c);
  std::optional<ThreadHom> phi;
  if (!c.formula.empty()) {
    phi = formula_argument(t, c.formula);
  } else {
    const std::size_t stage = required(c.stage, "stage");
    if (stage == 0 || stage > t.window()) throw InputError("stage out of range");
    const FgAbHom map(t.group(stage), build_group(c.coeff), build_matrix(required(c.functional, "functional")));
    phi = nabla_apply(stage, map);
  }
  RunResult r;
  r.report["phi"] = phi->label();
  std::vector<std::string> failures;

  Json witnesses = Json::array();
  if (phi->codomain().is_free()) {
    const FactorResult f = factor_hom(t, *phi, phi->codomain());
    r.report["factor"] = to_json(f);
    if (f.map) {
      for (const Thread& th : generating_threads(t))
        if (!f.map->cod().equal(f.map->apply(th.at(f.stage)), phi->evaluate(th)))
          failures.push_back("factorization disagrees on a generating thread");
      r.exit_code = f.window_edge ? kWindowInsufficient : kOk;
      r.summary = "factors through stage " + std::to_string(f.stage) + (f.window_edge ? " (window edge)" : "");
    } else {
      r.exit_code = kWindowInsufficient;
      r.summary = "no factorization inside window " + std::to_string(t.window());
    }
    for (const NoFactorWitness& w : f.witnesses) {
      if (!is_zero(t.project_from_top(w.level, w.top)) || phi->codomain().is_zero(w.value))
        failures.push_back("witness at level " + std::to_string(w.level) + " is invalid");
      if (f.map && w.level >= f.kernel_level) failures.push_back("witness co-occurs with a factorization");
    }
  } else {
    // Torsion targets: kernel test only.
    std::optional<std::size_t> passes;
    for (std::size_t i = 1; i <= t.window(); ++i) {
      const auto w = find_kernel_witness(t, *phi, i);
      if (!w) {
        passes = i;
        break;
      }
      witnesses.push_back(to_json(*w));
    }
    r.report["kernel_witnesses"] = witnesses;
    r.report["kernel_level"] = passes ? Json(*passes) : Json(nullptr);
    r.exit_code = passes && *passes < t.window() ? kOk : kWindowInsufficient;
    r.summary = passes ? "kernel test passes at level " + std::to_string(*passes)
                       : "kernel test fails at every level of the window";
  }
  if (c.rounds) r.report["diagonal"] = to_json(diagonal_witness(t, *phi, *c.rounds));
  if (!failures.empty()) {
    r.report["failures"] = failures;
    r.exit_code = kClaimFailed;
  }
  return r;
}

std::vector<std::size_t> dimensions(const SimplicialComplex& k, const std::optional<std::size_t>& dim) {
  if (dim) return {*dim};
  std::vector<std::size_t> out;
  for (std::size_t n = 0; static_cast<int>(n) <= k.dimension(); ++n) out.push_back(n);
  return out;
}

Json complex_json(const SimplicialComplex& k) {
  Json counts = Json::array();
  for (std::size_t n = 0; static_cast<int>(n) <= k.dimension(); ++n) counts.push_back(k.count(n));
  return Json{{"vertices", k.vertex_count()}, {"dimension", k.dimension()}, {"simplex_counts", counts}};
}

RunResult cmd_complex(const RunConfig& c, bool co) {
  const SimplicialComplex k = build_complex(required(c.complex, "complex"));
  const FgAbGroup g = build_group(c.coeff);
  Json groups = Json::array();
  RunResult r;
  for (std::size_t n : dimensions(k, c.dim)) {
    const FgAbGroup h = co ? cohomology(k, n, g).group() : homology(k, n).group();
    groups.push_back(Json{{"dim", n}, {"group", text(h)}});
    r.summary += (co ? "H^" : "H_") + std::to_string(n) + " = " + text(h) + "\n";
  }
  if (!r.summary.empty()) r.summary.pop_back();
  r.report = Json{{"complex", complex_json(k)}, {co ? "cohomology" : "homology", groups}};
  if (co) r.report["coeff"] = text(g);
  return r;
}

/// Two parts: the stagewise exact sequences and the limit identification.
RunResult uct_result(const UctReport& u) {
  Json full = to_json(u);
  const bool stage_ok = u.stages_exact() && u.squares_commute() && u.colimit_exact;
  Json stage_suite{{"exit_code", stage_ok ? kOk : kClaimFailed}};
  for (const char* key : {"stages", "squares", "stages_exact", "squares_commute", "colimit_exact", "colim_ext",
                          "cohomology_system", "hom_system"})
    stage_suite[key] = full.at(key);
  const int ident_code = status_exit(u.identification);
  Json identification = full.at("identification");
  identification["exit_code"] = ident_code;
  identification["nabla"] = full.at("nabla");
  identification["image_restricted_hom"] = full.at("image_restricted_hom");
  RunResult r;
  r.report = Json{{"dim", u.dim}, {"window", u.window}, {"stage_suite", stage_suite}, {"identification", identification}};
  r.exit_code = stage_ok ? ident_code : kClaimFailed;
  r.summary = std::string("stage suite: ") + (stage_ok ? "exact" : "FAILED") +
              "\nidentification: " + to_string(u.identification) + " (" + u.identification_reason + ")";
  return r;
}

RunResult cmd_cech_uct(const RunConfig& c) {
  const std::string& desc = required(c.tower, "tower");
  if (!c.window && !self_sized(desc)) throw InputError("builder towers need --window");
  const PolyhedralTower pt = build_polyhedra(desc, c.window.value_or(window_max()));
  checked_window(pt.window());
  return uct_result(uct_ladder(pt, required(c.dim, "dim"), build_group(c.coeff)));
}

RunResult cmd_demo_hawaiian(const RunConfig& c) {
  const std::size_t window = window_or(c, 6);
  const MLReport ml = is_mittag_leffler(hawaii_tower(window));
  bool indices = ml.certified;
  for (const LevelStability& l : ml.levels)
    if (l.level + 2 <= window) indices = indices && l.stabilization_index == l.level + 1;
  RunResult uct = uct_result(uct_ladder(hawaiian_polyhedra(window), 1, FgAbGroup::free(1)));
  RunResult r;
  r.report = Json{{"mittag_leffler", to_json(ml)}, {"stabilization_is_next_level", indices}, {"uct", uct.report}};
  r.exit_code = !ml.certified ? kWindowInsufficient : (indices ? uct.exit_code : kClaimFailed);
  r.summary = std::string("ML ") + (ml.certified ? "certified" : "not certified") + "\n" + uct.summary;
  return r;
}

RunResult cmd_demo_solenoid(const RunConfig& c) {
  const std::size_t window = window_or(c, 8);
  const std::vector<Integer> p_list = parse_integer_list(c.p);
  if (p_list.size() != 1 || p_list[0] < 2) throw InputError("solenoid degree must be at least 2");
  const Integer p = p_list[0];
  const MLReport ml = is_mittag_leffler(solenoid_tower(p, window));
  // [Z : p^{j-i} Z] = p^{j-i} along every chain.
  bool indices = true;
  for (const LevelStability& l : ml.levels) {
    Integer expected = 1;
    for (const auto& idx : l.chain_indices) {
      expected *= p;
      indices = indices && idx && *idx == expected;
    }
    indices = indices && !l.stabilization_index;
  }
  RunResult uct = uct_result(uct_ladder(solenoid_polyhedra(p.get_ui(), window), 1, FgAbGroup::free(1)));
  RunResult r;
  r.report = Json{{"mittag_leffler", to_json(ml)}, {"image_indices_verified", indices}, {"uct", uct.report}};
  const bool stage_ok = uct.report["stage_suite"]["exit_code"] == kOk;
  r.exit_code = indices && stage_ok ? uct.exit_code : kClaimFailed;
  r.summary = std::string("NotStabilizedInWindow at every level; image indices ") +
              (indices ? "verified" : "WRONG") + "\n" + uct.summary;
  return r;
}

RunResult cmd_demo_projplane(const RunConfig& c) {
  const std::size_t window = window_or(c, 2);
  const SimplicialComplex k = proj_plane();
  const FgAbGroup g = build_group(c.coeff);
  Json homology_json = Json::array(), cohomology_json = Json::array();
  for (std::size_t n = 0; n <= 2; ++n) {
    homology_json.push_back(text(homology(k, n).group()));
    cohomology_json.push_back(text(cohomology(k, n, g).group()));
  }
  const UctReport u = uct_ladder(constant_polyhedra(k, window), 2, g);
  const StageSequence& s = u.stages.front();
  RunResult r;
  r.report = Json{{"coeff", text(g)},
                  {"homology", homology_json},
                  {"cohomology", cohomology_json},
                  {"h2_sequence", Json{{"ext", text(s.ext_to_cohomology.dom())},
                                       {"cohomology", text(s.ext_to_cohomology.cod())},
                                       {"hom", text(s.cohomology_to_hom.cod())},
                                       {"exact", s.exact()}}}};
  bool ok = u.stages_exact() && u.squares_commute();
  if (g.canonical_form() == FgAbGroup::free(1).canonical_form()) {
    const bool expected = text(s.ext_to_cohomology.dom()) == "Z/2" && text(s.ext_to_cohomology.cod()) == "Z/2" &&
                          s.cohomology_to_hom.cod().is_trivial();
    r.report["h2_is_ext_of_z2"] = expected;
    ok = ok && expected;
  }
  r.exit_code = ok ? kOk : kClaimFailed;
  r.summary = "H^2(RP^2; " + text(g) + ") = " + text(s.ext_to_cohomology.cod()) + " via Ext " +
              text(s.ext_to_cohomology.dom());
  return r;
}

RunResult cmd_demo_padic(const RunConfig& c) {
  const std::size_t window = window_or(c, 8);
  const std::vector<Integer> p = parse_integer_list(c.p);
  if (p.size() != 1) throw InputError("--p takes one prime");
  const NonFactoringReport n = non_factoring_report(p[0], c.precision, window);
  const std::size_t expected = std::min<std::size_t>(window, c.precision >= 2 ? c.precision - 2 : 0);
  bool ok = n.refuted == expected;
  for (const LevelRefutation& l : n.levels)
    if (l.level <= expected) ok = ok && l.verified;
  RunResult r;
  r.report = to_json(n);
  r.report["expected_refuted_levels"] = expected;
  r.exit_code = ok ? kOk : kClaimFailed;
  r.summary = std::to_string(n.refuted) + " of " + std::to_string(window) + " levels refuted";
  return r;
}

RunResult cmd_demo_higman(const RunConfig& c) {
  const std::vector<Integer> n = parse_integer_list(required(c.n, "n"));
  const std::vector<Integer> b = parse_integer_list(required(c.b, "b"));
  const FgAbGroup g = build_group(c.coeff);
  if (g.ngens() != 1) throw InputError("higman demo needs a cyclic coefficient group given by one generator");
  if (b.size() < 2) throw InputError("--b needs at least two entries");
  const HigmanSolution s = higman_verify({n, FgAbHom(FgAbGroup::free(b.size()), g, IntMatrix(1, b.size(), b))});
  RunResult r;
  r.report = to_json(s);
  r.report["coefficients"] = to_json(IntVector(n));
  r.report["b"] = to_json(IntVector(b));
  r.report["coeff"] = text(g);
  r.exit_code = s.verified ? kOk : kClaimFailed;
  r.summary = "x_1 = " + s.x.front().front().get_str() + (s.verified ? ", all equations hold" : ", FAILED");
  return r;
}

RunResult cmd_demo_specker(const RunConfig& c) {
  const std::size_t window = window_or(c, 5);
  const SpeckerReport s = specker_check(window);
  RunResult r;
  r.report = to_json(s);
  const bool ok =
      s.independent_classes == window && s.pairwise_distinct && s.evaluation_is_identity && s.factored_consistent;
  r.exit_code = ok ? kOk : kClaimFailed;
  r.summary = std::to_string(s.independent_classes) + " independent classes";
  return r;
}

RunResult dispatch(const RunConfig& c) {
  const std::string cmd = joined(c.command);
  if (cmd == "snf") return cmd_snf(c);
  if (cmd == "group canon") return cmd_group_canon(c);
  if (cmd == "hom") return cmd_hom(c);
  if (cmd == "ext") return cmd_ext(c);
  if (cmd == "purify") return cmd_purify(c);
  if (cmd == "tower analyze") return cmd_tower_analyze(c);
  if (cmd == "tower nabla") return cmd_tower_nabla(c);
  if (cmd == "tower factor") return cmd_tower_factor(c);
  if (cmd == "complex homology") return cmd_complex(c, false);
  if (cmd == "complex cohomology") return cmd_complex(c, true);
  if (cmd == "cech uct") return cmd_cech_uct(c);
  if (cmd == "demo hawaiian") return cmd_demo_hawaiian(c);
  if (cmd == "demo solenoid") return cmd_demo_solenoid(c);
  if (cmd == "demo projplane") return cmd_demo_projplane(c);
  if (cmd == "demo padic") return cmd_demo_padic(c);
  if (cmd == "demo higman") return cmd_demo_higman(c);
  if (cmd == "demo specker") return cmd_demo_specker(c);
  throw InputError("unknown command \"" + cmd + "\"");
}

}  // namespace

std::size_t window_max() {
  const char* env = std::getenv("PROLIM_WINDOW_MAX");
  if (env == nullptr || *env == '\0') return 64;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) return 64;
  return v;
}

RunResult run(const RunConfig& config) {
  RunResult r;
  try {
    r = dispatch(config);
  } catch (const std::exception& e) {
    r = RunResult{kInputError, Json{{"error", e.what()}}, std::string("error: ") + e.what()};
  }
  r.report["command"] = joined(config.command);
  r.report["exit_code"] = r.exit_code;
  return r;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace prolim::cli
