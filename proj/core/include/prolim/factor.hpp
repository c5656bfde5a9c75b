#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prolim/tower.hpp"

namespace prolim {

/// H_i / torsion with the level-wise quotient maps q_i : H_i -> H_i/T_i.
struct TorsionFreeReplacement {
  InverseTower tower;
  std::vector<FgAbHom> quotients;
};

TorsionFreeReplacement torsion_free_tower(const InverseTower& t);

/// Purified subgroups H'_i of a tower of free groups.
///
/// Only levels i <= J-2 can carry a confirmed stable image, so `levels`
/// holds H'_1..H'_{J-2}. Empty `levels` together with a non-empty
/// `unstabilized` means the window was insufficient.
struct PurifiedTower {
  std::vector<Subgroup> levels;
  std::vector<std::size_t> unstabilized;

  bool ok() const { return unstabilized.empty() && !levels.empty(); }
};

/// Throws InputError when some level has torsion.
PurifiedTower purified_tower(const InverseTower& t);

struct StabilizationCertificate {
  std::size_t level = 0;
  std::size_t index = 0;  // n_k
  /// p_k^{n_k}(H'_{n_k}); equals the stable image at level k.
  Subgroup image;
  /// [p_k^n(H'_n) : stable image] for n = k+1..J (levels past J-2 use H_n).
  std::vector<Integer> chain;
};

/// nullopt when the window is insufficient at level k.
std::optional<StabilizationCertificate> stabilization_index(const InverseTower& t, const PurifiedTower& p,
                                                            std::size_t k);

/// A window thread u with p_level(u) = 0 and phi(u) != 0.
struct NoFactorWitness {
  std::size_t level = 0;
  Thread thread;
  IntVector top;  // u as an element of H_J
  IntVector value;
};

/// phi on H_J, one column per top generator.
IntMatrix top_matrix(const InverseTower& t, const ThreadHom& phi);

/// Tests ker(p_level) inside ker(phi) on a generating set of the kernel.
/// Works for any codomain.
std::optional<NoFactorWitness> find_kernel_witness(const InverseTower& t, const ThreadHom& phi,
                                                   std::size_t level);

struct FactorResult {
  /// First level passing the kernel test.
  std::size_t kernel_level = 0;
  /// Stage through which phi factors as map o p_stage.
  std::size_t stage = 0;
  std::optional<FgAbHom> map;
  /// One per level below kernel_level.
  std::vector<NoFactorWitness> witnesses;
  /// Factoring only at the top level says nothing: window threads are H_J.
  bool window_edge = false;
};

/// Throws InputError when g has torsion.
FactorResult factor_hom(const InverseTower& t, const ThreadHom& phi, const FgAbGroup& g);

enum class FindingStatus { Certified, Refuted, Unknown };

std::string to_string(FindingStatus s);

/// Two stage-i classes of colim Hom(H_i, G) that are distinct in the window
/// while the first one's values on window threads shrink at every step.
struct NablaWitness {
  std::size_t stage = 0;
  IntVector first;
  IntVector second;
  /// [phi(H_i) : phi(p_i^J H_J)], how deep threads must reach before
  /// phi's values become this divisible.
  Integer depth;
};

struct NablaFinding {
  std::string finding;
  FindingStatus status = FindingStatus::Unknown;
  std::string reason;
  std::optional<NablaWitness> witness;
};

struct NablaReport {
  std::vector<NablaFinding> findings;  // surjectivity, image_injectivity, raw_injectivity
  MLReport ml;
};

NablaReport nabla_diagnostics(const InverseTower& t, const FgAbGroup& g);

struct DiagonalRound {
  std::size_t kernel_level = 0;  // u lies in ker p_{kernel_level}
  std::size_t k = 0;             // minimal level with p_k(u) != 0
  Thread thread;
  IntVector top;
  IntVector value;
};

struct DiagonalWitness {
  std::vector<DiagonalRound> rounds;
  /// Why the construction stopped.
  std::string diagnostic;
  /// True when phi factors at the level where the kernel search failed.
  bool factors = false;
};

/// Greedy u_1, u_2, ... with u_r in ker p_{k_{r-1}}, phi(u_r) != 0 and k_r
/// minimal. Stops at max_rounds when given.
DiagonalWitness diagonal_witness(const InverseTower& t, const ThreadHom& phi,
                                 std::optional<std::size_t> max_rounds = std::nullopt);

}  // namespace prolim
