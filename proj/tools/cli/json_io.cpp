#include "cli/json_io.hpp"

#include <fstream>
#include <sstream>

namespace prolim::cli {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json optional_integer(const std::optional<Integer>& x) { return x ? to_json(*x) : Json(nullptr); }

Json optional_size(const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json data = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(m(r, c).get_str());
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Json to_json(const CanonicalForm& f) {
  return Json{{"free_rank", f.free_rank}, {"torsion", to_json(IntVector(f.torsion.begin(), f.torsion.end()))},
              {"text", f.to_string()}};
}

Json to_json(const FgAbGroup& g) {
  return Json{{"ngens", g.ngens()}, {"relations", to_json(g.relations())}, {"canonical", to_json(g.canonical_form())}};
}

Json to_json(const FgAbHom& f) {
  return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"matrix", to_json(f.matrix())}};
}

Json to_json(const Subgroup& s) {
  return Json{{"generators", to_json(s.lattice().basis())}, {"as_group", to_json(s.as_group().dom().canonical_form())}};
}

Json to_json(const Thread& t) {
  Json out = Json::array();
  for (const IntVector& c : t.components) out.push_back(to_json(c));
  return out;
}

Json to_json(const MLReport& r) {
  Json levels = Json::array();
  for (const LevelStability& l : r.levels) {
    Json chain = Json::array();
    for (const auto& c : l.chain_indices) chain.push_back(optional_integer(c));
    levels.push_back(Json{{"level", l.level},
                          {"status", l.stabilization_index ? "Stabilized" : "NotStabilizedInWindow"},
                          {"stabilization_index", optional_size(l.stabilization_index)},
                          {"chain_indices", chain}});
  }
  return Json{{"window", r.window}, {"certified", r.certified}, {"levels", levels}};
}

Json to_json(const NablaReport& r) {
  Json findings = Json::array();
  for (const NablaFinding& f : r.findings) {
    Json item{{"finding", f.finding}, {"status", to_string(f.status)}, {"reason", f.reason}};
    if (f.witness) {
      item["witness"] = Json{{"stage", f.witness->stage},
                             {"first_class", to_json(f.witness->first)},
                             {"second_class", to_json(f.witness->second)}};
      item["depth"] = to_json(f.witness->depth);
    } else {
      item["depth"] = nullptr;
    }
    findings.push_back(item);
  }
  return Json{{"findings", findings}, {"mittag_leffler", to_json(r.ml)}};
}

Json to_json(const NoFactorWitness& w) {
  return Json{{"level", w.level}, {"thread", to_json(w.thread)}, {"top", to_json(w.top)}, {"value", to_json(w.value)}};
}

Json to_json(const FactorResult& r) {
  Json witnesses = Json::array();
  for (const NoFactorWitness& w : r.witnesses) witnesses.push_back(to_json(w));
  return Json{{"kernel_level", r.kernel_level},
              {"stage", r.stage},
              {"map", r.map ? to_json(*r.map) : Json(nullptr)},
              {"witnesses", witnesses},
              {"window_edge", r.window_edge}};
}

Json to_json(const DiagonalWitness& d) {
  Json rounds = Json::array();
  for (const DiagonalRound& r : d.rounds)
    rounds.push_back(Json{{"kernel_level", r.kernel_level},
                          {"k", r.k},
                          {"top", to_json(r.top)},
                          {"value", to_json(r.value)}});
  return Json{{"rounds", rounds}, {"diagnostic", d.diagnostic}, {"factors", d.factors}};
}

Json to_json(const DirectSystem& d) {
  Json groups = Json::array(), bonds = Json::array();
  for (std::size_t i = 1; i <= d.window(); ++i) groups.push_back(d.group(i).canonical_form().to_string());
  for (std::size_t i = 1; i < d.window(); ++i) bonds.push_back(to_json(d.bond(i).matrix()));
  return Json{{"groups", groups}, {"bonds", bonds}, {"iso_from", optional_size(eventual_isomorphism_stage(d))}};
}

Json to_json(const UctReport& r) {
  Json stages = Json::array();
  for (const StageSequence& s : r.stages) {
    stages.push_back(Json{{"stage", s.stage},
                          {"ext", s.ext_to_cohomology.dom().canonical_form().to_string()},
                          {"cohomology", s.ext_to_cohomology.cod().canonical_form().to_string()},
                          {"hom", s.cohomology_to_hom.cod().canonical_form().to_string()},
                          {"injective", s.injective},
                          {"exact_middle", s.exact_middle},
                          {"surjective", s.surjective},
                          {"counterexample", s.counterexample ? to_json(*s.counterexample) : Json(nullptr)}});
  }
  Json squares = Json::array();
  for (const LadderSquare& s : r.squares)
    squares.push_back(Json{{"stage", s.stage}, {"square", s.square}, {"commutes", s.commutes}});
  Json image_hom = Json::array();
  for (const FgAbGroup& g : r.image_hom) image_hom.push_back(g.canonical_form().to_string());
  return Json{{"dim", r.dim},
              {"window", r.window},
              {"stages", stages},
              {"squares", squares},
              {"colim_ext", to_json(r.ext_system)},
              {"cohomology_system", to_json(r.cohomology_system)},
              {"hom_system", to_json(r.hom_system)},
              {"stages_exact", r.stages_exact()},
              {"squares_commute", r.squares_commute()},
              {"colimit_exact", r.colimit_exact},
              {"nabla", to_json(r.nabla)},
              {"identification", Json{{"status", to_string(r.identification)}, {"reason", r.identification_reason}}},
              {"image_restricted_hom", image_hom}};
}

Json to_json(const SpeckerReport& r) {
  return Json{{"window", r.window},
              {"independent_classes", r.independent_classes},
              {"pairwise_distinct", r.pairwise_distinct},
              {"evaluation_is_identity", r.evaluation_is_identity},
              {"factored_consistent", r.factored_consistent},
              {"evaluation", to_json(r.evaluation)}};
}

Json to_json(const NonFactoringReport& r) {
  Json levels = Json::array();
  for (const LevelRefutation& l : r.levels) {
    Json item{{"level", l.level}, {"verified", l.verified}, {"truncation_artifact", l.truncation_artifact}};
    item["witness"] = l.witness ? to_json(*l.witness) : Json(nullptr);
    levels.push_back(item);
  }
  return Json{{"p", to_json(r.p)},
              {"precision", r.precision},
              {"window", r.window},
              {"refuted_levels", r.refuted},
              {"levels", levels},
              {"silent_beyond_level", r.precision >= 2 ? r.precision - 2 : 0}};
}

Json to_json(const HigmanSolution& s) {
  Json x = Json::array();
  for (const IntVector& v : s.x) x.push_back(to_json(v));
  return Json{{"x", x}, {"equations", s.equations}, {"verified", s.verified}, {"boundary", "equation D is unconstrained"}};
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: " + j.get<std::string>());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer list, got " + j.dump());
  IntVector v;
  for (const Json& x : j) v.push_back(integer_from_json(x));
  return v;
}

IntMatrix matrix_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<IntVector> rows;
    for (const Json& r : j) rows.push_back(vector_from_json(r));
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }
  const std::size_t rows = size_from_json(field(j, "rows"), "rows");
  const std::size_t cols = size_from_json(field(j, "cols"), "cols");
  IntMatrix m(rows, cols);
  if (j.contains("entries")) {
    const IntMatrix e = matrix_from_json(j.at("entries"));
    if (e.rows() != rows || (rows > 0 && e.cols() != cols)) throw InputError("entries do not match rows/cols");
    return rows == 0 ? m : e;
  }
  const IntVector data = vector_from_json(field(j, "data"));
  if (data.size() != rows * cols) throw InputError("matrix data has the wrong length");
  return IntMatrix(rows, cols, data);
}

FgAbGroup group_from_json(const Json& j) {
  const std::size_t n = size_from_json(field(j, "ngens"), "ngens");
  IntMatrix rel = j.contains("relations") ? matrix_from_json(j.at("relations")) : IntMatrix(n, 0);
  if (rel.rows() == 0 && rel.cols() == 0) rel = IntMatrix(n, 0);
  if (rel.rows() != n) throw InputError("relations need one row per generator");
  return FgAbGroup(n, std::move(rel));
}

InverseTower tower_from_json(const Json& j) {
  std::vector<FgAbGroup> groups;
  for (const Json& g : field(j, "groups")) groups.push_back(group_from_json(g));
  if (j.contains("window") && size_from_json(j.at("window"), "window") != groups.size())
    throw InputError("window does not match the number of groups");
  const Json& bonds_json = field(j, "bonds");
  if (!bonds_json.is_array() || bonds_json.size() + 1 != groups.size())
    throw InputError("a tower of J groups needs J-1 bonds");
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 0; i < bonds_json.size(); ++i)
    bonds.emplace_back(groups[i + 1], groups[i], matrix_from_json(bonds_json[i]));
  return InverseTower(std::move(groups), std::move(bonds));
}

SimplicialComplex complex_from_json(const Json& j) {
  const std::size_t n = size_from_json(field(j, "vertices"), "vertices");
  std::vector<Simplex> facets;
  for (const Json& s : field(j, "simplices")) {
    Simplex simplex;
    for (const Json& v : s) simplex.push_back(size_from_json(v, "vertex"));
    facets.push_back(std::move(simplex));
  }
  return SimplicialComplex::from_facets(n, facets);
}

PolyhedralTower polyhedral_from_json(const Json& j) {
  std::vector<SimplicialComplex> levels;
  for (const Json& c : field(j, "complexes")) levels.push_back(complex_from_json(c));
  const Json& maps = field(j, "maps");
  if (!maps.is_array() || maps.size() + 1 != levels.size()) throw InputError("a tower of J complexes needs J-1 maps");
  std::vector<SimplicialMap> bonds;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::vector<std::size_t> v;
    for (const Json& x : maps[i]) v.push_back(size_from_json(x, "vertex"));
    bonds.emplace_back(levels[i + 1], levels[i], std::move(v));
  }
  return PolyhedralTower(std::move(levels), std::move(bonds));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace prolim::cli
