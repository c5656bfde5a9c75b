#pragma once

#include <string>

#include <json.hpp>

#include "prolim/cech.hpp"
#include "prolim/factor.hpp"
#include "prolim/fgab.hpp"
#include "prolim/simplicial.hpp"
#include "prolim/tower.hpp"
#include "prolim/witnesses.hpp"

namespace prolim::cli {

using Json = nlohmann::json;

/// Numbers when they fit in a long, decimal strings otherwise.
Json to_json(const Integer& x);
Json to_json(const IntVector& v);
/// {"rows", "cols", "data": [decimal strings, row-major]}
Json to_json(const IntMatrix& m);
Json to_json(const CanonicalForm& f);
/// {"ngens", "relations", "canonical"}
Json to_json(const FgAbGroup& g);
/// {"dom", "cod", "matrix"}
Json to_json(const FgAbHom& f);
Json to_json(const Subgroup& s);
Json to_json(const Thread& t);
Json to_json(const MLReport& r);
Json to_json(const NablaReport& r);
Json to_json(const NoFactorWitness& w);
Json to_json(const FactorResult& r);
Json to_json(const DiagonalWitness& d);
Json to_json(const UctReport& r);
Json to_json(const SpeckerReport& r);
Json to_json(const NonFactoringReport& r);
Json to_json(const HigmanSolution& s);
Json to_json(const DirectSystem& d);

Integer integer_from_json(const Json& j);
IntVector vector_from_json(const Json& j);
/// Accepts {"rows", "cols", "entries"}, {"rows", "cols", "data"} (row-major)
/// or a bare list of rows.
IntMatrix matrix_from_json(const Json& j);
/// {"ngens", "relations"}
FgAbGroup group_from_json(const Json& j);
/// {"window", "groups", "bonds"}; bonds[i] maps group i+1 to group i.
InverseTower tower_from_json(const Json& j);
/// {"vertices", "simplices"}; simplices may be facets only.
SimplicialComplex complex_from_json(const Json& j);
/// {"complexes": [...], "maps": [[vertex images], ...]}; maps[i] sends
/// complex i+1 to complex i.
PolyhedralTower polyhedral_from_json(const Json& j);

/// Parses a file; throws InputError on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace prolim::cli
