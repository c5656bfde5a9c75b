#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

/// A window H_1 <- H_2 <- ... <- H_J of an inverse sequence.
///
/// Levels are numbered from 1. bond(i) is p_i^{i+1} : H_{i+1} -> H_i.
/// The inverse limit itself is never formed; threads at window depth stand
/// in for its elements.
class InverseTower {
 public:
  InverseTower(std::vector<FgAbGroup> groups, std::vector<FgAbHom> bonds);

  std::size_t window() const { return groups_.size(); }
  const FgAbGroup& group(std::size_t level) const;
  const FgAbHom& bond(std::size_t level) const;

  /// p_i^j : H_j -> H_i for i <= j.
  FgAbHom composite(std::size_t i, std::size_t j) const;
  /// p_i^j(H_j) as a subgroup of H_i.
  Subgroup image(std::size_t i, std::size_t j) const;
  /// p_i^J(x) for x in H_J.
  IntVector project_from_top(std::size_t level, const IntVector& x) const;

  /// First `window` levels.
  InverseTower truncated(std::size_t window) const;

 private:
  std::vector<FgAbGroup> groups_;
  std::vector<FgAbHom> bonds_;
  // p_i^J for every level, the workhorse of thread and image queries.
  std::vector<IntMatrix> to_top_;
};

/// Z^1 <- Z^2 <- ... with bonds forgetting the last coordinate.
InverseTower hawaii_tower(std::size_t window);
/// Z <- Z <- ... with every bond multiplication by p.
InverseTower solenoid_tower(const Integer& p, std::size_t window);
/// G <- G <- ... with identity bonds.
InverseTower constant_tower(const FgAbGroup& g, std::size_t window);

/// Compatible components (x_1, ..., x_J) with p_i^{i+1}(x_{i+1}) = x_i.
struct Thread {
  std::vector<IntVector> components;

  /// Component at level i (1-based).
  const IntVector& at(std::size_t level) const { return components.at(level - 1); }
};

/// The thread determined by x in H_J.
Thread thread_from_top(const InverseTower& t, const IntVector& x);
/// Threads of the top-level generators; every window thread is a combination.
std::vector<Thread> generating_threads(const InverseTower& t);
bool is_compatible(const InverseTower& t, const Thread& thread);

struct LevelStability {
  std::size_t level = 0;
  /// s(i): first j > i with p_i^j(H_j) = p_i^J(H_J), confirmed by a later stage.
  std::optional<std::size_t> stabilization_index;
  /// [H_i : p_i^j(H_j)] for j = i+1..J; nullopt entries are infinite.
  std::vector<std::optional<Integer>> chain_indices;
};

struct MLReport {
  std::size_t window = 0;
  std::vector<LevelStability> levels;
  /// Every level i <= J-2 stabilized inside the window.
  bool certified = false;
};

MLReport is_mittag_leffler(const InverseTower& t);
LevelStability level_stability(const InverseTower& t, std::size_t level);
/// The stabilized image at `level`, or nullopt when the chain does not
/// stabilize inside the window.
std::optional<Subgroup> stable_image(const InverseTower& t, std::size_t level);

struct Lim1Status {
  bool vanishes = false;  // false means unknown, never "nonzero"
  MLReport certificate;
};
Lim1Status lim1_status(const InverseTower& t);

/// A window A^1 -> A^2 -> ... -> A^J of a direct sequence.
/// bond(i) is u_i^{i+1} : A^i -> A^{i+1}.
class DirectSystem {
 public:
  DirectSystem(std::vector<FgAbGroup> groups, std::vector<FgAbHom> bonds);

  std::size_t window() const { return groups_.size(); }
  const FgAbGroup& group(std::size_t stage) const;
  const FgAbHom& bond(std::size_t stage) const;
  /// u_i^j : A^i -> A^j for i <= j.
  FgAbHom composite(std::size_t i, std::size_t j) const;

 private:
  std::vector<FgAbGroup> groups_;
  std::vector<FgAbHom> bonds_;
};

struct ColimClass {
  std::size_t stage = 0;
  IntVector element;
};

/// Image of a class at a later stage.
IntVector push(const DirectSystem& d, const ColimClass& c, std::size_t stage);

struct ColimQuery {
  bool equal = false;
  /// First stage at which the two classes agree.
  std::optional<std::size_t> agreement_stage;
  /// Present when every bond from `iso_from` on is an isomorphism; the
  /// colimit is then the last group of the window.
  std::optional<std::size_t> iso_from;
  std::optional<FgAbGroup> colimit;
};

ColimQuery colim_query(const DirectSystem& d, const ColimClass& a, const ColimClass& b);
/// First stage s < J with all bonds s..J-1 isomorphisms, if any.
std::optional<std::size_t> eventual_isomorphism_stage(const DirectSystem& d);

/// (Hom(H_i, G), precomposition with the bonds), stage bases retained.
struct HomSystem {
  DirectSystem system;
  std::vector<HomGroup> stages;
};
HomSystem hom_system(const InverseTower& t, const FgAbGroup& g);

struct ExtSystem {
  DirectSystem system;
  std::vector<ExtGroup> stages;
};
ExtSystem ext_system(const InverseTower& t, const FgAbGroup& g);

/// A homomorphism out of the inverse limit, evaluated on threads.
///
/// Factored form: phi = map o p_stage. Formula form: an arbitrary evaluator
/// on window threads; the kernel test is "evaluates to zero in codomain".
class ThreadHom {
 public:
  using Evaluator = std::function<IntVector(const Thread&)>;

  static ThreadHom factored(std::size_t stage, FgAbHom map);
  static ThreadHom formula(FgAbGroup codomain, Evaluator evaluate, std::string label);

  const FgAbGroup& codomain() const;
  IntVector evaluate(const Thread& t) const;
  bool kills(const Thread& t) const { return codomain().is_zero(evaluate(t)); }

  bool is_factored() const { return std::holds_alternative<Factored>(form_); }
  /// Only for factored forms.
  std::size_t stage() const;
  const FgAbHom& map() const;
  std::string label() const;

 private:
  struct Factored {
    std::size_t stage;
    FgAbHom map;
  };
  struct Formula {
    FgAbGroup codomain;
    Evaluator evaluate;
    std::string label;
  };
  explicit ThreadHom(std::variant<Factored, Formula> f) : form_(std::move(f)) {}
  std::variant<Factored, Formula> form_;
};

/// phi in Hom(H_stage, G) viewed as phi o p_stage.
ThreadHom nabla_apply(std::size_t stage, const FgAbHom& phi);

}  // namespace prolim
