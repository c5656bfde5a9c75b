#include "prolim/witnesses.hpp"

#include <utility>

namespace prolim {

namespace {

Integer power(const Integer& p, unsigned k) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), k);
  return out;
}

}  // namespace

PadicTrunc::PadicTrunc(Integer p, unsigned precision, const Integer& value)
    : p_(std::move(p)), precision_(precision), modulus_(power(p_, precision)) {
  if (sgn(p_) <= 0 || mpz_probab_prime_p(p_.get_mpz_t(), 30) == 0)
    throw InputError(p_.get_str() + " is not a prime");
  if (precision_ == 0) throw InputError("precision must be positive");
  mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
}

unsigned PadicTrunc::valuation() const {
  if (is_zero()) return precision_;
  unsigned v = 0;
  Integer r = residue_;
  while (mpz_divisible_p(r.get_mpz_t(), p_.get_mpz_t())) {
    r /= p_;
    ++v;
  }
  return v;
}

PadicTrunc PadicTrunc::operator+(const PadicTrunc& o) const {
  if (!(p_ == o.p_) || precision_ != o.precision_) throw InputError("mixed p-adic precisions");
  return PadicTrunc(p_, precision_, residue_ + o.residue_);
}

PadicTrunc PadicTrunc::operator-(const PadicTrunc& o) const {
  if (!(p_ == o.p_) || precision_ != o.precision_) throw InputError("mixed p-adic precisions");
  return PadicTrunc(p_, precision_, residue_ - o.residue_);
}

PadicTrunc PadicTrunc::operator*(const PadicTrunc& o) const {
  if (!(p_ == o.p_) || precision_ != o.precision_) throw InputError("mixed p-adic precisions");
  return PadicTrunc(p_, precision_, residue_ * o.residue_);
}

PadicTrunc padic_phi(const Integer& p, unsigned precision, const IntVector& x) {
  if (precision < 2) throw InputError("p-adic precision must be at least 2");
  Integer sum = 0;
  Integer weight = p;
  // Terms with i >= K vanish mod p^K.
  for (std::size_t i = 0; i < x.size() && i + 1 < precision; ++i) {
    sum += x[i] * weight;
    weight *= p;
  }
  return PadicTrunc(p, precision, sum);
}

ThreadHom padic_thread_hom(const Integer& p, unsigned precision) {
  const PadicTrunc check = padic_phi(p, precision, {});
  return ThreadHom::formula(
      FgAbGroup::cyclic(check.modulus()),
      [p, precision](const Thread& t) { return IntVector{padic_phi(p, precision, t.components.back()).residue()}; },
      "truncated p-adic sum, p = " + p.get_str() + ", K = " + std::to_string(precision));
}

NonFactoringReport non_factoring_report(const Integer& p, unsigned precision, std::size_t window) {
  if (window == 0) throw InputError("window must be positive");
  const InverseTower t = hawaii_tower(window + 1);
  const ThreadHom phi = padic_thread_hom(p, precision);
  NonFactoringReport r{p, precision, window, {}, 0};
  for (std::size_t i = 1; i <= window; ++i) {
    LevelRefutation l;
    l.level = i;
    l.witness = find_kernel_witness(t, phi, i);
    if (l.witness) {
      const IntVector expected_top = unit_vector(window + 1, i);
      const Integer expected_value = power(p, static_cast<unsigned>(i + 1));
      l.verified = l.witness->top == expected_top && is_zero(l.witness->thread.at(i)) &&
                   l.witness->value == IntVector{expected_value} && i + 1 < precision;
      if (l.verified) ++r.refuted;
    } else {
      l.truncation_artifact = i + 1 >= precision;
    }
    r.levels.push_back(std::move(l));
  }
  return r;
}

std::vector<IntVector> higman_vectors(const std::vector<Integer>& n, std::size_t depth) {
  if (depth < 2) throw InputError("Higman depth must be at least 2");
  if (n.size() + 1 < depth) throw InputError("need at least D-1 coefficients");
  for (const Integer& c : n)
    if (sgn(c) <= 0) throw InputError("Higman coefficients must be positive");
  std::vector<IntVector> a(depth, zero_vector(depth));
  for (std::size_t i = 0; i < depth; ++i) {
    Integer running = 1;
    a[i][i] = 1;
    for (std::size_t k = i + 1; k < depth; ++k) {
      running *= n[k - 1];
      a[i][k] = running;
    }
  }
  return a;
}

HigmanSolution higman_verify(const HigmanSystem& s) {
  const std::size_t depth = s.phi.dom().ngens();
  if (!s.phi.dom().is_free() || s.phi.dom().relations().cols() != 0)
    throw InputError("Higman map must start at a free group Z^D");
  const FgAbGroup& h = s.phi.cod();
  const auto a = higman_vectors(s.coefficients, depth);
  HigmanSolution out;
  for (const IntVector& ai : a) out.x.push_back(h.reduce(s.phi.apply(ai)));
  out.verified = true;
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    const IntVector b = s.phi.apply(unit_vector(depth, i));
    const bool ok = h.equal(out.x[i], b + s.coefficients[i] * out.x[i + 1]);
    out.equations.push_back(ok);
    out.verified = out.verified && ok;
  }
  return out;
}

}  // namespace prolim
