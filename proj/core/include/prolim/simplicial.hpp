#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

/// Sorted vertex list.
using Simplex = std::vector<std::size_t>;

/// Finite simplicial complex on vertices 0..n-1. Every vertex is a
/// 0-simplex; simplices of each dimension are kept in lexicographic order,
/// which fixes the chain bases and orientations.
class SimplicialComplex {
 public:
  /// The full simplex list; throws InputError unless it is face-closed and
  /// duplicate-free. Vertices are added automatically.
  SimplicialComplex(std::size_t vertices, std::vector<Simplex> simplices);
  /// Closure of the given simplices.
  static SimplicialComplex from_facets(std::size_t vertices, const std::vector<Simplex>& facets);

  std::size_t vertex_count() const;
  /// -1 for the empty complex.
  int dimension() const;
  std::size_t count(std::size_t dim) const;
  const std::vector<Simplex>& simplices(std::size_t dim) const;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  bool operator==(const SimplicialComplex& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Vertex map whose simplex images (repeats collapsed) are simplices.
class SimplicialMap {
 public:
  SimplicialMap(SimplicialComplex dom, SimplicialComplex cod, std::vector<std::size_t> vertex_map);
  static SimplicialMap identity(const SimplicialComplex& k);

  const SimplicialComplex& dom() const { return dom_; }
  const SimplicialComplex& cod() const { return cod_; }
  const std::vector<std::size_t>& vertex_map() const { return vertex_map_; }

 private:
  SimplicialComplex dom_;
  SimplicialComplex cod_;
  std::vector<std::size_t> vertex_map_;
};

/// g after f.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// d_n : C_n -> C_{n-1}, count(n-1) x count(n); d_0 has zero rows.
IntMatrix boundary(const SimplicialComplex& k, std::size_t n);
/// d_1, ..., d_dim.
std::vector<IntMatrix> boundary_matrices(const SimplicialComplex& k);

/// d_n as a map of free groups.
FgAbHom boundary_hom(const SimplicialComplex& k, std::size_t n);
/// delta^n : Hom(C_n, G) -> Hom(C_{n+1}, G), cochains stored simplex-major
/// in G^count(n).
FgAbHom coboundary_hom(const SimplicialComplex& k, std::size_t n, const FgAbGroup& g);

/// ker d_n / im d_{n+1} with cycle representatives.
Subquotient homology(const SimplicialComplex& k, std::size_t n);
/// ker delta^n / im delta^{n-1} with cocycle representatives.
Subquotient cohomology(const SimplicialComplex& k, std::size_t n, const FgAbGroup& g);

/// Chain map in degree n; degenerate images vanish, orientation by sign of
/// the sorting permutation.
IntMatrix chain_map(const SimplicialMap& f, std::size_t n);
/// H_n(dom) -> H_n(cod) in the bases of homology().
FgAbHom induced_map(const SimplicialMap& f, std::size_t n);
/// Same, with the homology of dom and cod already computed.
FgAbHom induced_map(const SimplicialMap& f, std::size_t n, const Subquotient& from, const Subquotient& to);
/// H^n(cod; G) -> H^n(dom; G) in the bases of cohomology().
FgAbHom induced_cohomology_map(const SimplicialMap& f, std::size_t n, const FgAbGroup& g);
/// Same, with from = H^n(cod; G) and to = H^n(dom; G) already computed.
FgAbHom induced_cohomology_map(const SimplicialMap& f, std::size_t n, const FgAbGroup& g, const Subquotient& from,
                               const Subquotient& to);

/// A tower X_1 <- X_2 <- ... of complexes; bond(i) : X_{i+1} -> X_i.
class PolyhedralTower {
 public:
  PolyhedralTower(std::vector<SimplicialComplex> levels, std::vector<SimplicialMap> bonds);

  std::size_t window() const { return levels_.size(); }
  const SimplicialComplex& level(std::size_t i) const;
  const SimplicialMap& bond(std::size_t i) const;

 private:
  std::vector<SimplicialComplex> levels_;
  std::vector<SimplicialMap> bonds_;
};

SimplicialComplex point();
/// m-gon, m >= 3.
SimplicialComplex circle(std::size_t m);
/// i triangles sharing vertex 0; circle k uses vertices 2k-1 and 2k.
SimplicialComplex bouquet(std::size_t i);
/// bouquet(i) -> bouquet(i-1) sending the last circle to the base point.
SimplicialMap collapse(std::size_t i);
/// (p m)-gon -> m-gon, k -> k mod m; wraps p times.
SimplicialMap degree_map(std::size_t p, std::size_t m);
/// Boundary of the octahedron.
SimplicialComplex sphere2();
/// i tetrahedron boundaries sharing vertex 0.
SimplicialComplex wedge_spheres(std::size_t i);
/// Six-vertex triangulation of the projective plane.
SimplicialComplex proj_plane();

/// Bouquets of i circles with collapse bonds.
PolyhedralTower hawaiian_polyhedra(std::size_t window);
/// Circles of 3 p^{i-1} vertices with degree-p bonds.
PolyhedralTower solenoid_polyhedra(std::size_t p, std::size_t window);
/// k at every level with identity bonds.
PolyhedralTower constant_polyhedra(const SimplicialComplex& k, std::size_t window);

}  // namespace prolim
