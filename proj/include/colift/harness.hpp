#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "colift/functor.hpp"
#include "colift/lifting.hpp"
#include "colift/logic.hpp"
#include "colift/orders.hpp"
#include "colift/system.hpp"

namespace colift {

/// Deterministic generator; bounded draws use plain modulo so that a seed
/// means the same thing on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng for_trial(std::uint64_t seed, std::uint64_t index);

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct TrialConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  std::size_t max_states = 4;
  std::size_t formula_depth = 3;
  std::size_t formulas_per_trial = 3;
  /// Empty: the suite's default pool.
  std::vector<FunctorExpr> functor_pool;
  /// Connectives drawn when building formulas. Empty: the suite's default.
  std::set<Op> operators;
  Limits limits;
  /// Full instances kept per suite; further violations are only counted.
  std::size_t keep_violations = 5;
};

struct Violation {
  std::size_t trial = 0;
  std::string description;
  /// The failing instance as a loadable system description.
  SystemDescription instance;
};

/// A fixed expectation about a hand-built instance.
struct Check {
  std::string name;
  bool expected = true;
  bool actual = false;
  bool passed() const { return expected == actual; }
};

struct SuiteReport {
  std::string name;
  std::string claim;
  /// Empirical runs record what happens outside a proved fragment; their
  /// violations are findings, not failures.
  bool empirical = false;
  std::size_t trials_run = 0;
  std::size_t nonempty_relations = 0;
  std::size_t pairs_checked = 0;
  std::size_t formulas_checked = 0;
  std::size_t violation_count = 0;
  std::map<std::string, std::size_t> counters;
  std::vector<Check> checks;
  std::vector<Violation> violations;

  bool passed() const;
};

// ---------------------------------------------------------------------------
// Generators

/// The sixteen functors of depth at most two over the leaves Id and Const A,
/// with A also used as exponent.
std::vector<FunctorExpr> small_functor_pool(const Carrier& a);

/// States named prefix1..prefixN.
Carrier state_space(const std::string& name, const std::string& prefix, std::size_t n);

FValue random_value(const FunctorExpr& f, const Carrier& states, Rng& rng, const Limits& limits = {});
Coalgebra random_coalgebra(const FunctorExpr& f, const Carrier& states, Rng& rng, const Limits& limits = {});
Predicate random_predicate(const Carrier& carrier, Rng& rng);
Relation random_relation(const Carrier& x, const Carrier& y, Rng& rng);
/// Reflexive-transitive closure of a random relation.
BasePreorder random_preorder(const Carrier& set, Rng& rng);

/// A formula of depth at most `depth` whose leaves come from `leaves` and
/// whose connectives come from `ops`.
Formula random_formula(Rng& rng, std::size_t depth, const std::set<Op>& ops, const std::vector<Formula>& leaves);

struct Instance {
  Coalgebra c;
  Coalgebra d;
  /// Randomly drawn starting relation.
  Relation seed_relation;
  /// Greatest (bi)simulation inside seed_relation: the premise holds by construction.
  Relation r;
};

/// Random coalgebras c over X and d over Y (d independent, a renamed copy
/// of c, or a perturbed copy) and a relation satisfying the premise:
/// a bisimulation when `ord` is empty, otherwise a simulation under *ord.
Instance gen_instance(const TrialConfig& cfg, Rng& rng, const FunctorExpr& f,
                      const std::optional<OrderSpec>& ord = std::nullopt);

// ---------------------------------------------------------------------------
// Suites

/// Bisimulations reflect and preserve negation-free formulas over predicates.
SuiteReport suite_theorem_bisim(const TrialConfig& cfg);
/// Simulations under down-closed orders reflect formulas built from or, and, next, always.
SuiteReport suite_theorem_sim_down(const TrialConfig& cfg);
/// Simulations under up-closed orders preserve formulas built from or, and, next, always.
SuiteReport suite_theorem_sim_up(const TrialConfig& cfg);
/// Simulations under Order-class orders reflect and preserve negation-free formulas.
SuiteReport suite_theorem_order_class(const TrialConfig& cfg);
/// Bisimulations agree on every formula over atomic propositions, negation included.
SuiteReport suite_theorem_ap_bisim(const TrialConfig& cfg);

enum class Transfer { Reflect, Preserve };
/// Order-class simulations with a down-natural (Reflect) or up-natural
/// (Preserve) order transfer negation-free formulas over atoms.
SuiteReport suite_theorem_ap_natural(const TrialConfig& cfg, Transfer direction);

/// Runs of the Order-class and natural-order suites with negation allowed.
/// Nothing is asserted; the reports are marked empirical.
std::vector<SuiteReport> probe_negation(const TrialConfig& cfg);

/// Superset-order simulation that fails to reflect a next-step property.
SuiteReport counterexample_next();
/// Subset-order (down-closed) simulation that fails to reflect an eventuality.
SuiteReport counterexample_eventually();

/// Suite names accepted by run_suites, in run order.
const std::vector<std::string>& suite_names();
/// "all" or one name from suite_names().
std::vector<SuiteReport> run_suites(const std::string& which, const TrialConfig& cfg);

Json report_to_json(const SuiteReport& report);

}  // namespace colift
