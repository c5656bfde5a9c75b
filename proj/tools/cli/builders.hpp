#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prolim/fgab.hpp"
#include "prolim/simplicial.hpp"
#include "prolim/tower.hpp"

namespace prolim::cli {

/// "0", "Z", "Z^3", "Z/6", "Z/2^2", sums like "Z+Z/2", inline JSON or a
/// JSON file path.
FgAbGroup build_group(const std::string& desc);

/// Inline rows "1,2;3,4", inline JSON or a JSON file path.
IntMatrix build_matrix(const std::string& desc);

/// Comma separated integers.
std::vector<Integer> parse_integer_list(const std::string& text);

/// "hawaii" (or "hawaiian"), "solenoid:p", "const:<group>" or a tower file.
/// Files are truncated to `window` when it is smaller than their length.
InverseTower build_tower(const std::string& desc, std::size_t window);

/// "point", "circle:m", "bouquet:i", "sphere2", "wedge_spheres:i",
/// "proj_plane" or a complex file.
SimplicialComplex build_complex(const std::string& desc);

/// "hawaiian", "solenoid:p", "const:<complex>" or a polyhedral tower file.
PolyhedralTower build_polyhedra(const std::string& desc, std::size_t window);

}  // namespace prolim::cli
