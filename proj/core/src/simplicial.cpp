#include "prolim/simplicial.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace prolim {

struct SimplicialComplex::Data {
  std::size_t vertices = 0;
  std::vector<std::vector<Simplex>> by_dim;
  std::vector<std::map<Simplex, std::size_t>> index;
};

namespace {

std::string describe(const Simplex& s) {
  std::string out = "[";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "]";
}

Simplex drop(const Simplex& s, std::size_t k) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != k) f.push_back(s[j]);
  return f;
}

// Sorts s in place; returns the permutation sign, or 0 on a repeated vertex.
int sort_with_sign(Simplex& s) {
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return 0;
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  return sign;
}

Simplex image_of(const std::vector<std::size_t>& vmap, const Simplex& s) {
  Simplex out;
  out.reserve(s.size());
  for (std::size_t v : s) out.push_back(vmap[v]);
  return out;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::size_t vertices, std::vector<Simplex> simplices) {
  auto d = std::make_shared<Data>();
  d->vertices = vertices;
  std::set<Simplex> seen;
  for (std::size_t v = 0; v < vertices; ++v) seen.insert(Simplex{v});
  for (Simplex& s : simplices) {
    if (s.empty()) throw InputError("empty simplex");
    for (std::size_t v : s)
      if (v >= vertices) throw InputError("simplex " + describe(s) + " uses a vertex outside 0.." + std::to_string(vertices - 1));
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InputError("simplex " + describe(s) + " is not a strictly increasing vertex list");
    if (s.size() == 1) continue;
    if (!seen.insert(s).second) throw InputError("duplicate simplex " + describe(s));
  }
  for (const Simplex& s : seen) {
    if (s.size() < 2) continue;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!seen.count(drop(s, k))) throw InputError("face " + describe(drop(s, k)) + " of " + describe(s) + " is missing");
  }
  for (const Simplex& s : seen) {
    const std::size_t dim = s.size() - 1;
    if (d->by_dim.size() <= dim) d->by_dim.resize(dim + 1);
    d->by_dim[dim].push_back(s);
  }
  d->index.resize(d->by_dim.size());
  for (std::size_t dim = 0; dim < d->by_dim.size(); ++dim)
    for (std::size_t k = 0; k < d->by_dim[dim].size(); ++k) d->index[dim].emplace(d->by_dim[dim][k], k);
  data_ = std::move(d);
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t vertices, const std::vector<Simplex>& facets) {
  std::set<Simplex> all;
  std::vector<Simplex> stack;
  for (Simplex s : facets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("simplex " + describe(s) + " repeats a vertex");
    stack.push_back(std::move(s));
  }
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    if (s.empty() || !all.insert(s).second) continue;
    if (s.size() > 1)
      for (std::size_t k = 0; k < s.size(); ++k) stack.push_back(drop(s, k));
  }
  return SimplicialComplex(vertices, std::vector<Simplex>(all.begin(), all.end()));
}

std::size_t SimplicialComplex::vertex_count() const { return data_->vertices; }

int SimplicialComplex::dimension() const { return static_cast<int>(data_->by_dim.size()) - 1; }

std::size_t SimplicialComplex::count(std::size_t dim) const {
  return dim < data_->by_dim.size() ? data_->by_dim[dim].size() : 0;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t dim) const {
  static const std::vector<Simplex> none;
  return dim < data_->by_dim.size() ? data_->by_dim[dim] : none;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > data_->index.size()) return std::nullopt;
  const auto& idx = data_->index[s.size() - 1];
  const auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
  return data_ == other.data_ || (data_->vertices == other.data_->vertices && data_->by_dim == other.data_->by_dim);
}

SimplicialMap::SimplicialMap(SimplicialComplex dom, SimplicialComplex cod, std::vector<std::size_t> vertex_map)
    : dom_(std::move(dom)), cod_(std::move(cod)), vertex_map_(std::move(vertex_map)) {
  if (vertex_map_.size() != dom_.vertex_count())
    throw InputError("vertex map has " + std::to_string(vertex_map_.size()) + " entries for " +
                     std::to_string(dom_.vertex_count()) + " vertices");
  for (std::size_t v : vertex_map_)
    if (v >= cod_.vertex_count()) throw InputError("vertex map leaves the codomain");
  for (int dim = 1; dim <= dom_.dimension(); ++dim) {
    for (const Simplex& s : dom_.simplices(static_cast<std::size_t>(dim))) {
      Simplex img = image_of(vertex_map_, s);
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!cod_.contains(img)) throw InputError("image of " + describe(s) + " is not a simplex");
    }
  }
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& k) {
  std::vector<std::size_t> v(k.vertex_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return SimplicialMap(k, k, std::move(v));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (!(f.cod() == g.dom())) throw InputError("simplicial maps do not compose");
  return SimplicialMap(f.dom(), g.cod(), image_of(g.vertex_map(), f.vertex_map()));
}

IntMatrix boundary(const SimplicialComplex& k, std::size_t n) {
  if (n == 0) return IntMatrix(0, k.count(0));
  IntMatrix d(k.count(n - 1), k.count(n));
  const auto& cells = k.simplices(n);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t j = 0; j < cells[c].size(); ++j) d(*k.index_of(drop(cells[c], j)), c) = (j % 2 == 0) ? 1 : -1;
  return d;
}

std::vector<IntMatrix> boundary_matrices(const SimplicialComplex& k) {
  std::vector<IntMatrix> out;
  for (int n = 1; n <= k.dimension(); ++n) out.push_back(boundary(k, static_cast<std::size_t>(n)));
  return out;
}

FgAbHom boundary_hom(const SimplicialComplex& k, std::size_t n) {
  const std::size_t below = n == 0 ? 0 : k.count(n - 1);
  return FgAbHom(FgAbGroup::free(k.count(n)), FgAbGroup::free(below), boundary(k, n));
}

FgAbHom coboundary_hom(const SimplicialComplex& k, std::size_t n, const FgAbGroup& g) {
  return FgAbHom(direct_power(g, k.count(n)), direct_power(g, k.count(n + 1)),
                 kron_identity(boundary(k, n + 1).transpose(), g.ngens()));
}

Subquotient homology(const SimplicialComplex& k, std::size_t n) {
  return Subquotient(boundary_hom(k, n + 1), boundary_hom(k, n));
}

Subquotient cohomology(const SimplicialComplex& k, std::size_t n, const FgAbGroup& g) {
  const FgAbHom incoming = n == 0 ? FgAbHom::zero(FgAbGroup::free(0), direct_power(g, k.count(0)))
                                  : coboundary_hom(k, n - 1, g);
  return Subquotient(incoming, coboundary_hom(k, n, g));
}

IntMatrix chain_map(const SimplicialMap& f, std::size_t n) {
  IntMatrix m(f.cod().count(n), f.dom().count(n));
  const auto& cells = f.dom().simplices(n);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Simplex img = image_of(f.vertex_map(), cells[c]);
    const int sign = sort_with_sign(img);
    if (sign == 0) continue;
    m(*f.cod().index_of(img), c) = sign;
  }
  return m;
}

FgAbHom induced_map(const SimplicialMap& f, std::size_t n) {
  return induced_map(f, n, homology(f.dom(), n), homology(f.cod(), n));
}

FgAbHom induced_map(const SimplicialMap& f, std::size_t n, const Subquotient& from, const Subquotient& to) {
  return FgAbHom(from.group(), to.group(), to.classes_of(chain_map(f, n) * from.representatives()));
}

FgAbHom induced_cohomology_map(const SimplicialMap& f, std::size_t n, const FgAbGroup& g) {
  return induced_cohomology_map(f, n, g, cohomology(f.cod(), n, g), cohomology(f.dom(), n, g));
}

FgAbHom induced_cohomology_map(const SimplicialMap& f, std::size_t n, const FgAbGroup& g, const Subquotient& from,
                               const Subquotient& to) {
  const IntMatrix pullback = kron_identity(chain_map(f, n).transpose(), g.ngens());
  return FgAbHom(from.group(), to.group(), to.classes_of(pullback * from.representatives()));
}

PolyhedralTower::PolyhedralTower(std::vector<SimplicialComplex> levels, std::vector<SimplicialMap> bonds)
    : levels_(std::move(levels)), bonds_(std::move(bonds)) {
  if (levels_.empty()) throw InputError("polyhedral tower needs at least one complex");
  if (bonds_.size() + 1 != levels_.size()) throw InputError("polyhedral tower bond count mismatch");
  for (std::size_t i = 0; i < bonds_.size(); ++i)
    if (!(bonds_[i].dom() == levels_[i + 1]) || !(bonds_[i].cod() == levels_[i]))
      throw InputError("polyhedral bond " + std::to_string(i + 1) + " has the wrong endpoints");
}

const SimplicialComplex& PolyhedralTower::level(std::size_t i) const {
  if (i < 1 || i > levels_.size()) throw InputError("level " + std::to_string(i) + " outside the window");
  return levels_[i - 1];
}

const SimplicialMap& PolyhedralTower::bond(std::size_t i) const {
  if (i < 1 || i > bonds_.size()) throw InputError("bond " + std::to_string(i) + " outside the window");
  return bonds_[i - 1];
}

SimplicialComplex point() { return SimplicialComplex(1, {}); }

SimplicialComplex circle(std::size_t m) {
  if (m < 3) throw InputError("a simplicial circle needs at least 3 vertices");
  std::vector<Simplex> edges;
  for (std::size_t k = 0; k < m; ++k) edges.push_back(Simplex{std::min(k, (k + 1) % m), std::max(k, (k + 1) % m)});
  return SimplicialComplex::from_facets(m, edges);
}

SimplicialComplex bouquet(std::size_t i) {
  std::vector<Simplex> edges;
  for (std::size_t k = 1; k <= i; ++k) {
    edges.push_back({0, 2 * k - 1});
    edges.push_back({0, 2 * k});
    edges.push_back({2 * k - 1, 2 * k});
  }
  return SimplicialComplex::from_facets(2 * i + 1, edges);
}

SimplicialMap collapse(std::size_t i) {
  if (i == 0) throw InputError("collapse needs at least one circle");
  std::vector<std::size_t> v(2 * i + 1);
  for (std::size_t k = 0; k + 2 < v.size(); ++k) v[k] = k;
  return SimplicialMap(bouquet(i), bouquet(i - 1), std::move(v));
}

SimplicialMap degree_map(std::size_t p, std::size_t m) {
  if (p == 0) throw InputError("degree must be positive");
  std::vector<std::size_t> v(p * m);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = k % m;
  return SimplicialMap(circle(p * m), circle(m), std::move(v));
}

SimplicialComplex sphere2() {
  std::vector<Simplex> faces;
  for (std::size_t a : {0, 1})
    for (std::size_t b : {2, 3})
      for (std::size_t c : {4, 5}) faces.push_back({a, b, c});
  return SimplicialComplex::from_facets(6, faces);
}

SimplicialComplex wedge_spheres(std::size_t i) {
  std::vector<Simplex> faces;
  for (std::size_t k = 1; k <= i; ++k) {
    const Simplex tet{0, 3 * k - 2, 3 * k - 1, 3 * k};
    for (std::size_t j = 0; j < 4; ++j) faces.push_back(drop(tet, j));
  }
  return SimplicialComplex::from_facets(3 * i + 1, faces);
}

SimplicialComplex proj_plane() {
  return SimplicialComplex::from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

PolyhedralTower hawaiian_polyhedra(std::size_t window) {
  std::vector<SimplicialComplex> levels;
  std::vector<SimplicialMap> bonds;
  for (std::size_t i = 1; i <= window; ++i) levels.push_back(bouquet(i));
  for (std::size_t i = 1; i < window; ++i) bonds.push_back(collapse(i + 1));
  return PolyhedralTower(std::move(levels), std::move(bonds));
}

PolyhedralTower solenoid_polyhedra(std::size_t p, std::size_t window) {
  if (p < 2) throw InputError("solenoid degree must be at least 2");
  std::vector<SimplicialComplex> levels;
  std::vector<SimplicialMap> bonds;
  std::size_t m = 3;
  for (std::size_t i = 1; i <= window; ++i) {
    levels.push_back(circle(m));
    if (i < window) bonds.push_back(degree_map(p, m));
    m *= p;
  }
  return PolyhedralTower(std::move(levels), std::move(bonds));
}

PolyhedralTower constant_polyhedra(const SimplicialComplex& k, std::size_t window) {
  return PolyhedralTower(std::vector<SimplicialComplex>(window, k),
                         std::vector<SimplicialMap>(window > 0 ? window - 1 : 0, SimplicialMap::identity(k)));
}

}  // namespace prolim
