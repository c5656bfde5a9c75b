#include "cli/builders.hpp"

#include <charconv>
#include <filesystem>
#include <sstream>

#include "cli/json_io.hpp"

namespace prolim::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(trim(part));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Integer parse_integer(const std::string& text) {
  Integer x;
  const std::string t = trim(text);
  if (t.empty() || x.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) throw InputError("not an integer: \"" + text + "\"");
  return x;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InputError(what + " must be a non-negative integer, got \"" + text + "\"");
  return out;
}

bool looks_like_json(const std::string& s) {
  const std::string t = trim(s);
  return !t.empty() && (t.front() == '{' || t.front() == '[');
}

/// Inline JSON or the contents of an existing file; nullopt otherwise.
std::optional<Json> json_argument(const std::string& desc) {
  if (looks_like_json(desc)) {
    try {
      return Json::parse(desc);
    } catch (const Json::exception& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(desc, ec)) return read_json_file(desc);
  return std::nullopt;
}

/// Splits "name:arg" into its parts; arg is empty when absent.
std::pair<std::string, std::string> builder_name(const std::string& desc) {
  const auto colon = desc.find(':');
  if (colon == std::string::npos) return {desc, {}};
  return {desc.substr(0, colon), desc.substr(colon + 1)};
}

FgAbGroup group_term(const std::string& term) {
  std::string base = term;
  std::size_t power = 1;
  if (const auto caret = term.find('^'); caret != std::string::npos) {
    base = trim(term.substr(0, caret));
    power = parse_size(trim(term.substr(caret + 1)), "group exponent");
  }
  if (base == "0") return FgAbGroup::free(0);
  if (base == "Z") return FgAbGroup::free(power);
  if (base.rfind("Z/", 0) == 0) {
    const Integer order = parse_integer(base.substr(2));
    if (sgn(order) <= 0) throw InputError("cyclic order must be positive in \"" + term + "\"");
    return direct_power(FgAbGroup::cyclic(order), power);
  }
  throw InputError("unknown group term \"" + term + "\"");
}

}  // namespace

FgAbGroup build_group(const std::string& desc) {
  try {
    if (auto j = json_argument(desc)) return group_from_json(*j);
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad group JSON: ") + e.what());
  }
  const std::string text = trim(desc);
  if (text.empty()) throw InputError("empty group");
  FgAbGroup out = FgAbGroup::free(0);
  for (const std::string& term : split(text, '+')) out = direct_sum(out, group_term(term));
  return out;
}

IntMatrix build_matrix(const std::string& desc) {
  try {
    if (auto j = json_argument(desc)) return matrix_from_json(*j);
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad matrix JSON: ") + e.what());
  }
  std::vector<std::vector<Integer>> rows;
  for (const std::string& row : split(desc, ';')) rows.push_back(parse_integer_list(row));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Integer> data;
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError("ragged matrix rows in \"" + desc + "\"");
    data.insert(data.end(), r.begin(), r.end());
  }
  return IntMatrix(rows.size(), cols, std::move(data));
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  if (trim(text).empty()) throw InputError("empty integer list");
  std::vector<Integer> out;
  for (const std::string& part : split(text, ',')) out.push_back(parse_integer(part));
  return out;
}

InverseTower build_tower(const std::string& desc, std::size_t window) {
  if (auto j = json_argument(desc)) {
    try {
      InverseTower t = tower_from_json(*j);
      return window < t.window() ? t.truncated(window) : t;
    } catch (const Json::exception& e) {
      throw InputError(std::string("bad tower JSON: ") + e.what());
    }
  }
  const auto [name, arg] = builder_name(desc);
  if (name == "hawaii" || name == "hawaiian") return hawaii_tower(window);
  if (name == "solenoid") {
    const Integer p = arg.empty() ? Integer(2) : parse_integer(arg);
    if (sgn(p) <= 0) throw InputError("solenoid degree must be positive");
    return solenoid_tower(p, window);
  }
  if (name == "const") return constant_tower(build_group(arg), window);
  throw InputError("unknown tower \"" + desc + "\"");
}

SimplicialComplex build_complex(const std::string& desc) {
  if (auto j = json_argument(desc)) {
    try {
      return complex_from_json(*j);
    } catch (const Json::exception& e) {
      throw InputError(std::string("bad complex JSON: ") + e.what());
    }
  }
  const auto [name, arg] = builder_name(desc);
  const auto count = [&](std::size_t fallback) { return arg.empty() ? fallback : parse_size(arg, name); };
  if (name == "point") return point();
  if (name == "circle") {
    const std::size_t m = count(3);
    if (m < 3) throw InputError("a circle needs at least 3 vertices");
    return circle(m);
  }
  if (name == "bouquet") return bouquet(count(2));
  if (name == "sphere2" || name == "octahedron") return sphere2();
  if (name == "wedge_spheres") return wedge_spheres(count(2));
  if (name == "proj_plane" || name == "rp2") return proj_plane();
  throw InputError("unknown complex \"" + desc + "\"");
}

PolyhedralTower build_polyhedra(const std::string& desc, std::size_t window) {
  if (auto j = json_argument(desc)) {
    try {
      const PolyhedralTower full = polyhedral_from_json(*j);
      if (window >= full.window()) return full;
      std::vector<SimplicialComplex> levels;
      std::vector<SimplicialMap> bonds;
      for (std::size_t i = 1; i <= window; ++i) levels.push_back(full.level(i));
      for (std::size_t i = 1; i < window; ++i) bonds.push_back(full.bond(i));
      return PolyhedralTower(std::move(levels), std::move(bonds));
    } catch (const Json::exception& e) {
      throw InputError(std::string("bad polyhedral tower JSON: ") + e.what());
    }
  }
  const auto [name, arg] = builder_name(desc);
  if (name == "hawaii" || name == "hawaiian") return hawaiian_polyhedra(window);
  if (name == "solenoid") {
    const std::size_t p = arg.empty() ? 2 : parse_size(arg, "solenoid degree");
    if (p == 0) throw InputError("solenoid degree must be positive");
    return solenoid_polyhedra(p, window);
  }
  if (name == "const") return constant_polyhedra(build_complex(arg), window);
  throw InputError("unknown polyhedral tower \"" + desc + "\"");
}

}  // namespace prolim::cli
