#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prolim/zlinalg.hpp"

namespace prolim {

/// Structure-theorem invariants: Z^free_rank + Z/t_1 + ... + Z/t_k with
/// 1 < t_1 | t_2 | ... | t_k.
struct CanonicalForm {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// A finitely generated abelian group Z^ngens / (column span of relations).
///
/// Elements are integer vectors of length ngens. The Smith data of the
/// relation matrix is computed once at construction and shared between
/// copies, so groups are cheap to pass by value.
///
/// The Smith data also gives a "component" view: the group is isomorphic to
/// a direct sum of cyclic components Z/o_k (o_k = 0 meaning Z), finite ones
/// first. Hom and Ext are built on that view.
class FgAbGroup {
 public:
  FgAbGroup();
  FgAbGroup(std::size_t ngens, IntMatrix relations);

  static FgAbGroup free(std::size_t rank);
  /// Z/order; order 0 gives Z.
  static FgAbGroup cyclic(const Integer& order);
  static FgAbGroup from_canonical(const CanonicalForm& form);

  std::size_t ngens() const;
  const IntMatrix& relations() const;
  const CanonicalForm& canonical_form() const;

  bool is_trivial() const { return canonical_form().is_trivial(); }
  bool is_free() const { return canonical_form().torsion.empty(); }
  bool is_finite() const { return canonical_form().free_rank == 0; }
  /// Order of a finite group; nullopt when infinite.
  std::optional<Integer> order() const;

  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const;
  /// Canonical representative: equal elements reduce to identical vectors.
  IntVector reduce(const IntVector& x) const;

  std::size_t component_count() const;
  /// o_k for each component; 0 for infinite cyclic.
  const std::vector<Integer>& component_orders() const;
  /// Rows: x -> component coordinates (unreduced). component_count x ngens.
  const IntMatrix& to_components() const;
  /// Columns: component generators as elements. ngens x component_count.
  const IntMatrix& from_components() const;
  /// Component coordinates reduced into [0, o_k) for finite components.
  IntVector component_coordinates(const IntVector& x) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
/// G^n with generators ordered block by block.
FgAbGroup direct_power(const FgAbGroup& g, std::size_t n);

/// Homomorphism given by its action on generators: column j of `matrix` is
/// the image of generator j of dom, in cod generator coordinates.
class FgAbHom {
 public:
  /// Throws InputError unless matrix * dom.relations() vanishes in cod.
  FgAbHom(FgAbGroup dom, FgAbGroup cod, IntMatrix matrix);

  static FgAbHom zero(const FgAbGroup& dom, const FgAbGroup& cod);
  static FgAbHom identity(const FgAbGroup& g);

  const FgAbGroup& dom() const { return dom_; }
  const FgAbGroup& cod() const { return cod_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }
  bool is_zero() const;
  bool equals(const FgAbHom& other) const;
  bool is_isomorphism() const;

 private:
  FgAbGroup dom_;
  FgAbGroup cod_;
  IntMatrix matrix_;
};

/// g after f.
FgAbHom compose(const FgAbHom& g, const FgAbHom& f);

/// A subgroup given by generating elements of the ambient group.
class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, IntMatrix generators);

  static Subgroup whole(const FgAbGroup& g);
  static Subgroup trivial(const FgAbGroup& g);
  static Subgroup image(const FgAbHom& f);

  const FgAbGroup& ambient() const { return ambient_; }
  const IntMatrix& generators() const { return generators_; }

  bool contains(const IntVector& x) const;
  bool contains(const Subgroup& other) const;
  /// Mutual containment.
  bool equals(const Subgroup& other) const;

  /// Preimage lattice of the subgroup in Z^ngens (contains the relations).
  const Lattice& lattice() const { return *lattice_; }

  /// Presentation of the subgroup as a group together with its inclusion.
  /// The presentation's generators are the Hermite basis of lattice().
  FgAbHom as_group() const;

 private:
  FgAbGroup ambient_;
  IntMatrix generators_;
  std::shared_ptr<const Lattice> lattice_;
};

struct KernelImageCokernel {
  FgAbHom kernel_inclusion;
  Subgroup image;
  FgAbHom cokernel_projection;

  const FgAbGroup& kernel() const { return kernel_inclusion.dom(); }
  const FgAbGroup& cokernel() const { return cokernel_projection.cod(); }
};

KernelImageCokernel kic(const FgAbHom& f);

/// Rewrites a group in component form: generators are the nontrivial
/// cyclic components, relations diag(o_k) for the finite ones.
struct Standardization {
  FgAbGroup standard;
  FgAbHom to_standard;
  FgAbHom from_standard;
};
Standardization standardize(const FgAbGroup& g);

/// ker(g) / im(f) for A --f--> B --g--> C with g o f = 0, presented in
/// component form. Generators are represented by explicit elements of B.
class Subquotient {
 public:
  Subquotient(const FgAbHom& f, const FgAbHom& g);

  const FgAbGroup& group() const { return group_; }
  /// Column k: an element of B representing generator k.
  const IntMatrix& representatives() const { return representatives_; }
  /// Linear lift of an element of ker(g) to group coordinates (unreduced).
  IntVector lift(const IntVector& b) const;
  /// Reduced class of an element of ker(g).
  IntVector class_of(const IntVector& b) const { return group_.reduce(lift(b)); }
  /// Class map for a list of kernel elements given as columns.
  IntMatrix classes_of(const IntMatrix& columns) const;

 private:
  FgAbGroup ambient_;
  Lattice kernel_lattice_;
  IntMatrix coordinate_change_;
  FgAbGroup group_;
  IntMatrix representatives_;
};

/// Hom(A, B) with each generator realized as an explicit homomorphism.
/// Generators pair a component of A with a component of B.
class HomGroup {
 public:
  HomGroup(FgAbGroup source, FgAbGroup target);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const FgAbGroup& group() const { return group_; }
  const std::vector<FgAbHom>& basis() const { return basis_; }

  /// Coordinates of f in the basis (reduced).
  IntVector coordinates(const FgAbHom& f) const;
  FgAbHom realize(const IntVector& coords) const;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  FgAbGroup group_;
  std::vector<FgAbHom> basis_;
  // Per basis element: (source component, target component, generator value in target component).
  struct Slot {
    std::size_t source_component;
    std::size_t target_component;
    Integer step;
    Integer order;
  };
  std::vector<Slot> slots_;
};

HomGroup hom_group(const FgAbGroup& a, const FgAbGroup& b);

/// Precomposition f^*: Hom(A, G) -> Hom(A', G) for f : A' -> A.
FgAbHom hom_precompose(const HomGroup& from, const HomGroup& to, const FgAbHom& f);

/// Ext(A, B) from the resolution 0 -> Z^s --L--> Z^n -> A -> 0, where L is
/// the Hermite basis of A's relation lattice. Elements are tuples in B^s,
/// one entry per basis relator.
class ExtGroup {
 public:
  ExtGroup(FgAbGroup source, FgAbGroup target);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const FgAbGroup& group() const { return group_; }
  /// ngens(A) x s, columns are basis relators.
  const IntMatrix& relator_basis() const { return relators_.basis(); }
  const Lattice& relator_lattice() const { return relators_; }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  Lattice relators_;
  FgAbGroup group_;
};

ExtGroup ext_group(const FgAbGroup& a, const FgAbGroup& b);

/// Contravariant map Ext(A, G) -> Ext(A', G) induced by f : A' -> A.
FgAbHom ext_map(const ExtGroup& from, const ExtGroup& to, const FgAbHom& f);

struct TorsionSplit {
  Subgroup torsion;
  FgAbHom free_quotient;  // G -> Z^free_rank, kernel = torsion

  const FgAbGroup& free_part() const { return free_quotient.cod(); }
};

TorsionSplit torsion_and_free(const FgAbGroup& g);

/// Saturation of b inside a torsion-free group: the largest subgroup
/// C >= B with C/B finite. Throws InputError when the ambient group has
/// torsion.
Subgroup purify(const Subgroup& b);

/// [a : b] for b <= a; nullopt when infinite. Throws InputError if b is not
/// contained in a.
std::optional<Integer> index(const Subgroup& b, const Subgroup& a);

}  // namespace prolim
