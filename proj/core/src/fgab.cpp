#include "prolim/fgab.hpp"

#include <numeric>
#include <utility>

namespace prolim {

std::string CanonicalForm::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  auto append = [&out](const std::string& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  if (free_rank == 1) append("Z");
  if (free_rank > 1) append("Z^" + std::to_string(free_rank));
  for (const Integer& t : torsion) append("Z/" + t.get_str());
  return out;
}

struct FgAbGroup::Data {
  std::size_t ngens = 0;
  IntMatrix relations;
  CanonicalForm canonical;
  std::vector<Integer> orders;
  IntMatrix to_components;
  IntMatrix from_components;
};

FgAbGroup::FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}

FgAbGroup::FgAbGroup(std::size_t ngens, IntMatrix relations) {
  if (relations.rows() != ngens) {
    throw InputError("relation matrix has " + std::to_string(relations.rows()) + " rows for " +
                     std::to_string(ngens) + " generators");
  }
  auto data = std::make_shared<Data>();
  data->ngens = ngens;
  data->relations = std::move(relations);

  const SmithForm s = snf(data->relations);
  std::vector<std::size_t> finite, infinite;
  for (std::size_t j = 0; j < ngens; ++j) {
    if (j < s.rank) {
      if (s.d(j, j) > 1) {
        finite.push_back(j);
        data->canonical.torsion.push_back(s.d(j, j));
      }
    } else {
      infinite.push_back(j);
    }
  }
  data->canonical.free_rank = infinite.size();
  std::vector<std::size_t> components = finite;
  components.insert(components.end(), infinite.begin(), infinite.end());
  for (std::size_t j : finite) data->orders.push_back(s.d(j, j));
  data->orders.resize(components.size());  // infinite components carry order 0
  data->to_components = s.u.select_rows(components);
  data->from_components = s.u_inverse.select_columns(components);
  data_ = std::move(data);
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  if (sgn(order) == 0) return free(1);
  IntMatrix r(1, 1);
  r(0, 0) = abs(order);
  return FgAbGroup(1, std::move(r));
}

FgAbGroup FgAbGroup::from_canonical(const CanonicalForm& form) {
  const std::size_t t = form.torsion.size();
  const std::size_t n = t + form.free_rank;
  IntMatrix r(n, t);
  for (std::size_t i = 0; i < t; ++i) r(i, i) = form.torsion[i];
  return FgAbGroup(n, std::move(r));
}

std::size_t FgAbGroup::ngens() const { return data_->ngens; }
const IntMatrix& FgAbGroup::relations() const { return data_->relations; }
const CanonicalForm& FgAbGroup::canonical_form() const { return data_->canonical; }
std::size_t FgAbGroup::component_count() const { return data_->orders.size(); }
const std::vector<Integer>& FgAbGroup::component_orders() const { return data_->orders; }
const IntMatrix& FgAbGroup::to_components() const { return data_->to_components; }
const IntMatrix& FgAbGroup::from_components() const { return data_->from_components; }

std::optional<Integer> FgAbGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer n = 1;
  for (const Integer& t : canonical_form().torsion) n *= t;
  return n;
}

IntVector FgAbGroup::component_coordinates(const IntVector& x) const {
  if (x.size() != ngens()) {
    throw InputError("element has " + std::to_string(x.size()) + " coordinates, group has " +
                     std::to_string(ngens()) + " generators");
  }
  IntVector c = data_->to_components * x;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Integer& o = data_->orders[k];
    if (sgn(o) != 0) mpz_fdiv_r(c[k].get_mpz_t(), c[k].get_mpz_t(), o.get_mpz_t());
  }
  return c;
}

bool FgAbGroup::is_zero(const IntVector& x) const { return prolim::is_zero(component_coordinates(x)); }

bool FgAbGroup::equal(const IntVector& x, const IntVector& y) const { return is_zero(x - y); }

IntVector FgAbGroup::reduce(const IntVector& x) const {
  return data_->from_components * component_coordinates(x);
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(a.ngens() + b.ngens(), block_diagonal(a.relations(), b.relations()));
}

FgAbGroup direct_power(const FgAbGroup& g, std::size_t n) {
  return FgAbGroup(g.ngens() * n, identity_kron(n, g.relations()));
}

// ---------------------------------------------------------------------------

FgAbHom::FgAbHom(FgAbGroup dom, FgAbGroup cod, IntMatrix matrix)
    : dom_(std::move(dom)), cod_(std::move(cod)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != cod_.ngens() || matrix_.cols() != dom_.ngens()) {
    throw InputError("homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " + std::to_string(cod_.ngens()) +
                     "x" + std::to_string(dom_.ngens()));
  }
  const IntMatrix images = matrix_ * dom_.relations();
  for (std::size_t j = 0; j < images.cols(); ++j) {
    if (!cod_.is_zero(images.column(j))) {
      throw InputError("homomorphism is not well defined: relator " + std::to_string(j) +
                       " does not map to zero");
    }
  }
}

FgAbHom FgAbHom::zero(const FgAbGroup& dom, const FgAbGroup& cod) {
  return FgAbHom(dom, cod, IntMatrix(cod.ngens(), dom.ngens()));
}

FgAbHom FgAbHom::identity(const FgAbGroup& g) {
  return FgAbHom(g, g, IntMatrix::identity(g.ngens()));
}

bool FgAbHom::is_zero() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!cod_.is_zero(matrix_.column(j))) return false;
  return true;
}

bool FgAbHom::equals(const FgAbHom& other) const {
  if (matrix_.rows() != other.matrix_.rows() || matrix_.cols() != other.matrix_.cols()) return false;
  const IntMatrix diff = matrix_ - other.matrix_;
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!cod_.is_zero(diff.column(j))) return false;
  return true;
}

bool FgAbHom::is_isomorphism() const {
  const KernelImageCokernel k = kic(*this);
  return k.kernel().is_trivial() && k.cokernel().is_trivial();
}

FgAbHom compose(const FgAbHom& g, const FgAbHom& f) {
  if (f.cod().ngens() != g.dom().ngens()) throw InputError("composition of incompatible homomorphisms");
  return FgAbHom(f.dom(), g.cod(), g.matrix() * f.matrix());
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(FgAbGroup ambient, IntMatrix generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  if (generators_.rows() != ambient_.ngens()) {
    throw InputError("subgroup generators have " + std::to_string(generators_.rows()) +
                     " rows, ambient group has " + std::to_string(ambient_.ngens()) + " generators");
  }
  lattice_ = std::make_shared<const Lattice>(hcat(generators_, ambient_.relations()));
}

Subgroup Subgroup::whole(const FgAbGroup& g) { return Subgroup(g, IntMatrix::identity(g.ngens())); }

Subgroup Subgroup::trivial(const FgAbGroup& g) { return Subgroup(g, IntMatrix(g.ngens(), 0)); }

Subgroup Subgroup::image(const FgAbHom& f) { return Subgroup(f.cod(), f.matrix()); }

bool Subgroup::contains(const IntVector& x) const { return lattice_->contains(x); }

bool Subgroup::contains(const Subgroup& other) const {
  if (other.ambient_.ngens() != ambient_.ngens()) return false;
  for (std::size_t j = 0; j < other.generators_.cols(); ++j)
    if (!contains(other.generators_.column(j))) return false;
  return true;
}

bool Subgroup::equals(const Subgroup& other) const { return contains(other) && other.contains(*this); }

FgAbHom Subgroup::as_group() const {
  const IntMatrix& basis = lattice_->basis();
  const IntMatrix& rel = ambient_.relations();
  IntMatrix coords(basis.cols(), rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    const IntVector y = *lattice_->coordinates(rel.column(j));
    for (std::size_t i = 0; i < y.size(); ++i) coords(i, j) = y[i];
  }
  return FgAbHom(FgAbGroup(basis.cols(), std::move(coords)), ambient_, basis);
}

// ---------------------------------------------------------------------------

namespace {

// Coordinates of the columns of `m` in `lattice`; every column must lie in it.
IntMatrix lattice_coordinates(const Lattice& lattice, const IntMatrix& m, const char* what) {
  IntMatrix out(lattice.rank(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto y = lattice.coordinates(m.column(j));
    if (!y) throw InputError(std::string(what) + ": column " + std::to_string(j) + " outside lattice");
    for (std::size_t i = 0; i < y->size(); ++i) out(i, j) = (*y)[i];
  }
  return out;
}

// {x : M x lies in the relation lattice of cod}
Lattice preimage_of_zero(const FgAbHom& f) {
  const std::size_t n = f.dom().ngens();
  const IntMatrix k = kernel_basis(hcat(f.matrix(), f.cod().relations()));
  return Lattice(k.row_range(0, n));
}

}  // namespace

KernelImageCokernel kic(const FgAbHom& f) {
  const Lattice kernel = preimage_of_zero(f);
  const IntMatrix rel = lattice_coordinates(kernel, f.dom().relations(), "kernel relations");
  FgAbHom inclusion(FgAbGroup(kernel.rank(), rel), f.dom(), kernel.basis());

  const FgAbGroup& b = f.cod();
  FgAbGroup coker(b.ngens(), hcat(b.relations(), f.matrix()));
  FgAbHom projection(b, coker, IntMatrix::identity(b.ngens()));
  return KernelImageCokernel{std::move(inclusion), Subgroup::image(f), std::move(projection)};
}

Standardization standardize(const FgAbGroup& g) {
  const auto& orders = g.component_orders();
  const std::size_t c = orders.size();
  std::size_t finite = 0;
  while (finite < c && sgn(orders[finite]) != 0) ++finite;
  IntMatrix rel(c, finite);
  for (std::size_t k = 0; k < finite; ++k) rel(k, k) = orders[k];
  FgAbGroup standard(c, std::move(rel));
  FgAbHom to(g, standard, g.to_components());
  FgAbHom from(standard, g, g.from_components());
  return Standardization{std::move(standard), std::move(to), std::move(from)};
}

Subquotient::Subquotient(const FgAbHom& f, const FgAbHom& g)
    : ambient_(g.dom()), kernel_lattice_(preimage_of_zero(g)) {
  if (f.cod().ngens() != g.dom().ngens()) throw InputError("subquotient: incompatible maps");
  const IntMatrix rel = hcat(lattice_coordinates(kernel_lattice_, ambient_.relations(), "subquotient"),
                             lattice_coordinates(kernel_lattice_, f.matrix(), "image not in kernel"));
  const FgAbGroup raw(kernel_lattice_.rank(), rel);
  Standardization s = standardize(raw);
  coordinate_change_ = s.to_standard.matrix();
  representatives_ = kernel_lattice_.basis() * s.from_standard.matrix();
  group_ = std::move(s.standard);
}

IntVector Subquotient::lift(const IntVector& b) const {
  const auto y = kernel_lattice_.coordinates(b);
  if (!y) throw InputError("subquotient: element is not in the kernel");
  return coordinate_change_ * *y;
}

IntMatrix Subquotient::classes_of(const IntMatrix& columns) const {
  std::vector<IntVector> out;
  out.reserve(columns.cols());
  for (std::size_t j = 0; j < columns.cols(); ++j) out.push_back(class_of(columns.column(j)));
  return IntMatrix::from_columns(group_.ngens(), out);
}

// ---------------------------------------------------------------------------

HomGroup::HomGroup(FgAbGroup source, FgAbGroup target)
    : source_(std::move(source)), target_(std::move(target)) {
  const auto& a = source_.component_orders();
  const auto& b = target_.component_orders();
  std::vector<Integer> orders;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      Integer step = 1;
      Integer order = b[l];
      if (sgn(a[k]) != 0) {
        if (sgn(b[l]) == 0) continue;  // finite into Z: only zero
        Integer g;
        mpz_gcd(g.get_mpz_t(), a[k].get_mpz_t(), b[l].get_mpz_t());
        if (g == 1) continue;
        step = b[l] / g;
        order = g;
      }
      IntMatrix m(target_.ngens(), source_.ngens());
      for (std::size_t i = 0; i < target_.ngens(); ++i) {
        const Integer& t = target_.from_components()(i, l);
        if (sgn(t) == 0) continue;
        for (std::size_t j = 0; j < source_.ngens(); ++j)
          m(i, j) = t * step * source_.to_components()(k, j);
      }
      basis_.emplace_back(source_, target_, std::move(m));
      slots_.push_back(Slot{k, l, step, order});
      orders.push_back(order);
    }
  }
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (sgn(orders[i]) != 0) finite.push_back(i);
  IntMatrix rel(orders.size(), finite.size());
  for (std::size_t t = 0; t < finite.size(); ++t) rel(finite[t], t) = orders[finite[t]];
  group_ = FgAbGroup(orders.size(), std::move(rel));
}

IntVector HomGroup::coordinates(const FgAbHom& f) const {
  if (f.dom().ngens() != source_.ngens() || f.cod().ngens() != target_.ngens())
    throw InputError("Hom coordinates: homomorphism has the wrong source or target");
  IntVector coords(slots_.size());
  std::vector<IntVector> images;
  images.reserve(source_.component_count());
  for (std::size_t k = 0; k < source_.component_count(); ++k)
    images.push_back(target_.component_coordinates(f.apply(source_.from_components().column(k))));
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    Integer c = images[s.source_component][s.target_component];
    if (!mpz_divisible_p(c.get_mpz_t(), s.step.get_mpz_t()))
      throw InputError("Hom coordinates: homomorphism is not well defined");
    c /= s.step;
    if (sgn(s.order) != 0) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), s.order.get_mpz_t());
    coords[i] = c;
  }
  return coords;
}

FgAbHom HomGroup::realize(const IntVector& coords) const {
  if (coords.size() != basis_.size()) throw InputError("Hom realize: coordinate length mismatch");
  IntMatrix m(target_.ngens(), source_.ngens());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    const IntMatrix& b = basis_[i].matrix();
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) += coords[i] * b(r, c);
  }
  return FgAbHom(source_, target_, std::move(m));
}

HomGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) { return HomGroup(a, b); }

FgAbHom hom_precompose(const HomGroup& from, const HomGroup& to, const FgAbHom& f) {
  if (f.cod().ngens() != from.source().ngens() || f.dom().ngens() != to.source().ngens())
    throw InputError("hom_precompose: map does not connect the Hom sources");
  std::vector<IntVector> cols;
  cols.reserve(from.basis().size());
  for (const FgAbHom& phi : from.basis()) {
    const FgAbHom pulled(to.source(), to.target(), phi.matrix() * f.matrix());
    cols.push_back(to.coordinates(pulled));
  }
  return FgAbHom(from.group(), to.group(), IntMatrix::from_columns(to.group().ngens(), cols));
}

// ---------------------------------------------------------------------------

ExtGroup::ExtGroup(FgAbGroup source, FgAbGroup target)
    : source_(std::move(source)), target_(std::move(target)), relators_(source_.relations()) {
  const std::size_t s = relators_.rank();
  const std::size_t m = target_.ngens();
  const IntMatrix rel = hcat(identity_kron(s, target_.relations()),
                             kron_identity(relators_.basis().transpose(), m));
  group_ = FgAbGroup(s * m, rel);
}

ExtGroup ext_group(const FgAbGroup& a, const FgAbGroup& b) { return ExtGroup(a, b); }

FgAbHom ext_map(const ExtGroup& from, const ExtGroup& to, const FgAbHom& f) {
  if (f.cod().ngens() != from.source().ngens() || f.dom().ngens() != to.source().ngens())
    throw InputError("ext_map: map does not connect the Ext sources");
  if (from.target().ngens() != to.target().ngens())
    throw InputError("ext_map: coefficient groups differ");
  // Lift f to the relator modules: M L' = L F1.
  const IntMatrix lifted = f.matrix() * to.relator_basis();
  const IntMatrix f1 = lattice_coordinates(from.relator_lattice(), lifted, "ext_map relator lift");
  return FgAbHom(from.group(), to.group(), kron_identity(f1.transpose(), from.target().ngens()));
}

// ---------------------------------------------------------------------------

TorsionSplit torsion_and_free(const FgAbGroup& g) {
  const auto& orders = g.component_orders();
  std::vector<std::size_t> finite, infinite;
  for (std::size_t k = 0; k < orders.size(); ++k) (sgn(orders[k]) != 0 ? finite : infinite).push_back(k);
  Subgroup torsion(g, g.from_components().select_columns(finite));
  FgAbHom q(g, FgAbGroup::free(infinite.size()), g.to_components().select_rows(infinite));
  return TorsionSplit{std::move(torsion), std::move(q)};
}

Subgroup purify(const Subgroup& b) {
  const FgAbGroup& h = b.ambient();
  if (!h.is_free()) throw InputError("purify: ambient group has torsion");
  // Torsion-free: every component is infinite cyclic, so components give H = Z^r.
  const IntMatrix gens = h.to_components() * b.generators();
  const SmithForm s = snf(gens);
  const IntMatrix saturated = s.u_inverse.column_range(0, s.rank);
  return Subgroup(h, hermite_basis(h.from_components() * saturated));
}

std::optional<Integer> index(const Subgroup& b, const Subgroup& a) {
  if (!a.contains(b)) throw InputError("index: subgroup is not contained in the larger group");
  const FgAbHom incl = a.as_group();
  const FgAbGroup& ag = incl.dom();
  const IntMatrix y = lattice_coordinates(a.lattice(), b.generators(), "index");
  const FgAbGroup quotient(ag.ngens(), hcat(ag.relations(), y));
  return quotient.order();
}

}  // namespace prolim
