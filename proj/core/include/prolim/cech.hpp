#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prolim/factor.hpp"
#include "prolim/simplicial.hpp"
#include "prolim/tower.hpp"

namespace prolim {

/// H_n(X_1) <- H_n(X_2) <- ... with induced bonds.
InverseTower homology_tower(const PolyhedralTower& pt, std::size_t n);

/// H^n(X_1; G) -> H^n(X_2; G) -> ... with induced bonds.
DirectSystem cohomology_system(const PolyhedralTower& pt, std::size_t n, const FgAbGroup& g);

/// 0 -> Ext(H_{n-1}(X_i), G) -> H^n(X_i; G) -> Hom(H_n(X_i), G) -> 0.
struct StageSequence {
  std::size_t stage = 0;
  FgAbHom ext_to_cohomology;
  FgAbHom cohomology_to_hom;
  bool injective = false;
  bool exact_middle = false;
  bool surjective = false;
  /// First failing element: in Ext for injectivity, in H^n for the middle,
  /// in Hom for surjectivity.
  std::optional<IntVector> counterexample;

  bool exact() const { return injective && exact_middle && surjective; }
};

struct LadderSquare {
  std::size_t stage = 0;  // square between stages i and i+1
  std::string square;     // "ext" or "hom"
  bool commutes = false;
};

struct UctReport {
  std::size_t dim = 0;
  std::size_t window = 0;
  std::vector<StageSequence> stages;
  std::vector<LadderSquare> squares;
  DirectSystem ext_system;
  DirectSystem cohomology_system;
  DirectSystem hom_system;
  /// Stage-J sequence exact and every square commuting.
  bool colimit_exact = false;

  MLReport ml;
  NablaReport nabla;
  /// Hom of the limit against colim Hom(im p_i, G).
  FindingStatus identification = FindingStatus::Unknown;
  std::string identification_reason;
  /// Hom(S_i, G) for the stable images S_i that exist in the window.
  std::vector<FgAbGroup> image_hom;

  bool stages_exact() const;
  bool squares_commute() const;
};

UctReport uct_ladder(const PolyhedralTower& pt, std::size_t n, const FgAbGroup& g);

struct SpeckerReport {
  std::size_t window = 0;
  /// Rank of the stage-N evaluation matrix on generating threads.
  std::size_t independent_classes = 0;
  bool pairwise_distinct = false;
  bool evaluation_is_identity = false;
  /// Every stage-i basis functional, pushed to stage N, evaluates as before.
  bool factored_consistent = false;
  IntMatrix evaluation;
};

SpeckerReport specker_check(std::size_t n);

}  // namespace prolim
