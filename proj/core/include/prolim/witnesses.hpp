#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prolim/factor.hpp"
#include "prolim/tower.hpp"

namespace prolim {

/// A residue modulo p^K.
class PadicTrunc {
 public:
  /// Throws InputError unless p is prime and K >= 1.
  PadicTrunc(Integer p, unsigned precision, const Integer& value);

  const Integer& prime() const { return p_; }
  unsigned precision() const { return precision_; }
  const Integer& residue() const { return residue_; }
  const Integer& modulus() const { return modulus_; }
  /// Largest k <= K with p^k dividing the residue.
  unsigned valuation() const;
  bool is_zero() const { return sgn(residue_) == 0; }

  PadicTrunc operator+(const PadicTrunc& o) const;
  PadicTrunc operator-(const PadicTrunc& o) const;
  PadicTrunc operator*(const PadicTrunc& o) const;
  bool operator==(const PadicTrunc& o) const = default;

 private:
  Integer p_;
  unsigned precision_;
  Integer modulus_;
  Integer residue_;
};

/// sum_{i>=1} x_i p^i mod p^K, x_1 first. Needs K >= 2.
PadicTrunc padic_phi(const Integer& p, unsigned precision, const IntVector& x);

/// padic_phi on the top coordinates of hawaiian threads, into Z/p^K.
ThreadHom padic_thread_hom(const Integer& p, unsigned precision);

struct LevelRefutation {
  std::size_t level = 0;
  std::optional<NoFactorWitness> witness;
  /// Witness is e_{level+1}, dies at level, and phi(u) = p^{level+1}.
  bool verified = false;
  /// No witness because p^{level+1} vanishes mod p^K.
  bool truncation_artifact = false;
};

struct NonFactoringReport {
  Integer p;
  unsigned precision = 0;
  std::size_t window = 0;
  std::vector<LevelRefutation> levels;
  std::size_t refuted = 0;
};

/// Levels 1..J of the hawaiian tower (built one level deeper so that
/// e_{J+1} exists).
NonFactoringReport non_factoring_report(const Integer& p, unsigned precision, std::size_t window);

/// a_1..a_D with a_i = (0,..,0, 1, n_i, n_i n_{i+1}, ...), length D.
std::vector<IntVector> higman_vectors(const std::vector<Integer>& n, std::size_t depth);

struct HigmanSystem {
  std::vector<Integer> coefficients;  // n_1..n_{D-1} at least
  FgAbHom phi;                        // Z^D -> H, phi(e_i) = b_i
};

struct HigmanSolution {
  std::vector<IntVector> x;
  /// x_i = b_i + n_i x_{i+1} for i < D.
  std::vector<bool> equations;
  bool verified = false;
};

HigmanSolution higman_verify(const HigmanSystem& s);

}  // namespace prolim
