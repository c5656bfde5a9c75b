#include "prolim/tower.hpp"

#include <algorithm>
#include <type_traits>
#include <utility>

namespace prolim {

namespace {

bool same_presentation(const FgAbGroup& a, const FgAbGroup& b) {
  return a.ngens() == b.ngens() && a.relations() == b.relations();
}

void check_level(std::size_t level, std::size_t window, const char* what) {
  if (level < 1 || level > window) {
    throw InputError(std::string(what) + " " + std::to_string(level) + " outside window 1.." +
                     std::to_string(window));
  }
}

}  // namespace

InverseTower::InverseTower(std::vector<FgAbGroup> groups, std::vector<FgAbHom> bonds)
    : groups_(std::move(groups)), bonds_(std::move(bonds)) {
  if (groups_.empty()) throw InputError("inverse tower needs at least one group");
  if (bonds_.size() + 1 != groups_.size()) {
    throw InputError("inverse tower with " + std::to_string(groups_.size()) + " groups needs " +
                     std::to_string(groups_.size() - 1) + " bonds, got " + std::to_string(bonds_.size()));
  }
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    if (!same_presentation(bonds_[i].dom(), groups_[i + 1]) || !same_presentation(bonds_[i].cod(), groups_[i])) {
      throw InputError("bond " + std::to_string(i + 1) + " does not map level " + std::to_string(i + 2) +
                       " to level " + std::to_string(i + 1));
    }
  }
  to_top_.resize(groups_.size());
  to_top_.back() = IntMatrix::identity(groups_.back().ngens());
  for (std::size_t i = groups_.size() - 1; i-- > 0;) to_top_[i] = bonds_[i].matrix() * to_top_[i + 1];
}

const FgAbGroup& InverseTower::group(std::size_t level) const {
  check_level(level, window(), "level");
  return groups_[level - 1];
}

const FgAbHom& InverseTower::bond(std::size_t level) const {
  check_level(level, window() - 1, "bond");
  return bonds_[level - 1];
}

FgAbHom InverseTower::composite(std::size_t i, std::size_t j) const {
  check_level(i, window(), "level");
  check_level(j, window(), "level");
  if (i > j) throw InputError("composite p_i^j needs i <= j");
  IntMatrix m = IntMatrix::identity(groups_[j - 1].ngens());
  for (std::size_t k = j - 1; k >= i; --k) m = bonds_[k - 1].matrix() * m;
  return FgAbHom(groups_[j - 1], groups_[i - 1], std::move(m));
}

Subgroup InverseTower::image(std::size_t i, std::size_t j) const {
  if (j == window()) {
    check_level(i, window(), "level");
    return Subgroup(groups_[i - 1], to_top_[i - 1]);
  }
  return Subgroup::image(composite(i, j));
}

IntVector InverseTower::project_from_top(std::size_t level, const IntVector& x) const {
  check_level(level, window(), "level");
  return to_top_[level - 1] * x;
}

InverseTower InverseTower::truncated(std::size_t w) const {
  check_level(w, window(), "window");
  std::vector<FgAbGroup> g(groups_.begin(), groups_.begin() + static_cast<std::ptrdiff_t>(w));
  std::vector<FgAbHom> b(bonds_.begin(), bonds_.begin() + static_cast<std::ptrdiff_t>(w - 1));
  return InverseTower(std::move(g), std::move(b));
}

InverseTower hawaii_tower(std::size_t window) {
  std::vector<FgAbGroup> groups;
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 1; i <= window; ++i) groups.push_back(FgAbGroup::free(i));
  for (std::size_t i = 1; i < window; ++i) {
    IntMatrix m(i, i + 1);
    for (std::size_t k = 0; k < i; ++k) m(k, k) = 1;
    bonds.emplace_back(groups[i], groups[i - 1], std::move(m));
  }
  return InverseTower(std::move(groups), std::move(bonds));
}

InverseTower solenoid_tower(const Integer& p, std::size_t window) {
  const FgAbGroup z = FgAbGroup::free(1);
  IntMatrix m(1, 1);
  m(0, 0) = p;
  std::vector<FgAbHom> bonds(window > 0 ? window - 1 : 0, FgAbHom(z, z, m));
  return InverseTower(std::vector<FgAbGroup>(window, z), std::move(bonds));
}

InverseTower constant_tower(const FgAbGroup& g, std::size_t window) {
  std::vector<FgAbHom> bonds(window > 0 ? window - 1 : 0, FgAbHom::identity(g));
  return InverseTower(std::vector<FgAbGroup>(window, g), std::move(bonds));
}

// ---------------------------------------------------------------------------

Thread thread_from_top(const InverseTower& t, const IntVector& x) {
  Thread th;
  th.components.reserve(t.window());
  for (std::size_t i = 1; i <= t.window(); ++i) th.components.push_back(t.project_from_top(i, x));
  return th;
}

std::vector<Thread> generating_threads(const InverseTower& t) {
  const std::size_t n = t.group(t.window()).ngens();
  std::vector<Thread> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(thread_from_top(t, unit_vector(n, k)));
  return out;
}

bool is_compatible(const InverseTower& t, const Thread& thread) {
  if (thread.components.size() != t.window()) return false;
  for (std::size_t i = 1; i < t.window(); ++i) {
    if (!t.group(i).equal(t.bond(i).apply(thread.at(i + 1)), thread.at(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LevelStability level_stability(const InverseTower& t, std::size_t level) {
  const std::size_t j_max = t.window();
  LevelStability out;
  out.level = level;
  const Subgroup whole = Subgroup::whole(t.group(level));
  const Subgroup bottom = t.image(level, j_max);
  for (std::size_t j = level + 1; j <= j_max; ++j) {
    const Subgroup img = t.image(level, j);
    out.chain_indices.push_back(index(img, whole));
    // Images descend, so equality with the deepest image suffices; j must
    // leave at least one later stage as confirmation.
    if (!out.stabilization_index && j < j_max && bottom.contains(img)) out.stabilization_index = j;
  }
  return out;
}

MLReport is_mittag_leffler(const InverseTower& t) {
  MLReport r;
  r.window = t.window();
  r.certified = t.window() >= 3;
  for (std::size_t i = 1; i <= t.window(); ++i) {
    r.levels.push_back(level_stability(t, i));
    if (i + 2 <= t.window() && !r.levels.back().stabilization_index) r.certified = false;
  }
  return r;
}

std::optional<Subgroup> stable_image(const InverseTower& t, std::size_t level) {
  const LevelStability s = level_stability(t, level);
  if (!s.stabilization_index) return std::nullopt;
  return t.image(level, *s.stabilization_index);
}

Lim1Status lim1_status(const InverseTower& t) {
  Lim1Status s;
  s.certificate = is_mittag_leffler(t);
  s.vanishes = s.certificate.certified;
  return s;
}

// ---------------------------------------------------------------------------

DirectSystem::DirectSystem(std::vector<FgAbGroup> groups, std::vector<FgAbHom> bonds)
    : groups_(std::move(groups)), bonds_(std::move(bonds)) {
  if (groups_.empty()) throw InputError("direct system needs at least one group");
  if (bonds_.size() + 1 != groups_.size()) throw InputError("direct system bond count mismatch");
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    if (!same_presentation(bonds_[i].dom(), groups_[i]) || !same_presentation(bonds_[i].cod(), groups_[i + 1])) {
      throw InputError("direct system bond " + std::to_string(i + 1) + " has the wrong endpoints");
    }
  }
}

const FgAbGroup& DirectSystem::group(std::size_t stage) const {
  check_level(stage, window(), "stage");
  return groups_[stage - 1];
}

const FgAbHom& DirectSystem::bond(std::size_t stage) const {
  check_level(stage, window() - 1, "bond");
  return bonds_[stage - 1];
}

FgAbHom DirectSystem::composite(std::size_t i, std::size_t j) const {
  check_level(i, window(), "stage");
  check_level(j, window(), "stage");
  if (i > j) throw InputError("composite u_i^j needs i <= j");
  IntMatrix m = IntMatrix::identity(groups_[i - 1].ngens());
  for (std::size_t k = i; k < j; ++k) m = bonds_[k - 1].matrix() * m;
  return FgAbHom(groups_[i - 1], groups_[j - 1], std::move(m));
}

IntVector push(const DirectSystem& d, const ColimClass& c, std::size_t stage) {
  if (c.stage > stage) throw InputError("cannot push a class to an earlier stage");
  IntVector x = c.element;
  for (std::size_t k = c.stage; k < stage; ++k) x = d.bond(k).apply(x);
  return x;
}

std::optional<std::size_t> eventual_isomorphism_stage(const DirectSystem& d) {
  std::size_t s = d.window();
  while (s > 1 && d.bond(s - 1).is_isomorphism()) --s;
  if (s == d.window()) return std::nullopt;
  return s;
}

ColimQuery colim_query(const DirectSystem& d, const ColimClass& a, const ColimClass& b) {
  ColimQuery q;
  const std::size_t start = std::max(a.stage, b.stage);
  for (std::size_t k = start; k <= d.window(); ++k) {
    if (d.group(k).equal(push(d, a, k), push(d, b, k))) {
      q.equal = true;
      q.agreement_stage = k;
      break;
    }
  }
  q.iso_from = eventual_isomorphism_stage(d);
  if (q.iso_from) q.colimit = d.group(d.window());
  return q;
}

HomSystem hom_system(const InverseTower& t, const FgAbGroup& g) {
  std::vector<HomGroup> stages;
  std::vector<FgAbGroup> groups;
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 1; i <= t.window(); ++i) {
    stages.push_back(hom_group(t.group(i), g));
    groups.push_back(stages.back().group());
  }
  for (std::size_t i = 1; i < t.window(); ++i)
    bonds.push_back(hom_precompose(stages[i - 1], stages[i], t.bond(i)));
  return HomSystem{DirectSystem(std::move(groups), std::move(bonds)), std::move(stages)};
}

ExtSystem ext_system(const InverseTower& t, const FgAbGroup& g) {
  std::vector<ExtGroup> stages;
  std::vector<FgAbGroup> groups;
  std::vector<FgAbHom> bonds;
  for (std::size_t i = 1; i <= t.window(); ++i) {
    stages.push_back(ext_group(t.group(i), g));
    groups.push_back(stages.back().group());
  }
  for (std::size_t i = 1; i < t.window(); ++i) bonds.push_back(ext_map(stages[i - 1], stages[i], t.bond(i)));
  return ExtSystem{DirectSystem(std::move(groups), std::move(bonds)), std::move(stages)};
}

// ---------------------------------------------------------------------------

ThreadHom ThreadHom::factored(std::size_t stage, FgAbHom map) {
  if (stage == 0) throw InputError("thread homomorphism stage must be >= 1");
  return ThreadHom(Factored{stage, std::move(map)});
}

ThreadHom ThreadHom::formula(FgAbGroup codomain, Evaluator evaluate, std::string label) {
  if (!evaluate) throw InputError("formula thread homomorphism needs an evaluator");
  return ThreadHom(Formula{std::move(codomain), std::move(evaluate), std::move(label)});
}

const FgAbGroup& ThreadHom::codomain() const {
  return std::visit(
      [](const auto& f) -> const FgAbGroup& {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, Factored>)
          return f.map.cod();
        else
          return f.codomain;
      },
      form_);
}

IntVector ThreadHom::evaluate(const Thread& t) const {
  if (const auto* f = std::get_if<Factored>(&form_)) {
    if (f->stage > t.components.size()) throw InputError("thread is shallower than the factoring stage");
    return f->map.apply(t.at(f->stage));
  }
  const auto& f = std::get<Formula>(form_);
  IntVector v = f.evaluate(t);
  if (v.size() != f.codomain.ngens()) throw InputError("formula evaluator returned a malformed element");
  return v;
}

std::size_t ThreadHom::stage() const { return std::get<Factored>(form_).stage; }

const FgAbHom& ThreadHom::map() const { return std::get<Factored>(form_).map; }

std::string ThreadHom::label() const {
  if (const auto* f = std::get_if<Factored>(&form_)) return "factored at stage " + std::to_string(f->stage);
  return std::get<Formula>(form_).label;
}

ThreadHom nabla_apply(std::size_t stage, const FgAbHom& phi) { return ThreadHom::factored(stage, phi); }

}  // namespace prolim
