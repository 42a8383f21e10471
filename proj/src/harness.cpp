#include "colift/harness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "colift/error.hpp"
#include "colift/simulation.hpp"

namespace colift {

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over (seed, index) so nearby trials get unrelated streams
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31));
}

bool SuiteReport::passed() const {
  if (empirical) return true;
  return violation_count == 0 &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

// ---------------------------------------------------------------------------
// Generators

std::vector<FunctorExpr> small_functor_pool(const Carrier& a) {
  const FunctorExpr id = FunctorExpr::id();
  const FunctorExpr k = FunctorExpr::constant(a);
  std::vector<FunctorExpr> pool = {id, k};
  for (const auto& leaf : {id, k}) {
    pool.push_back(FunctorExpr::powerset(leaf));
    pool.push_back(FunctorExpr::sequence(leaf));
    pool.push_back(FunctorExpr::exponent(leaf, a));
  }
  for (const auto& l : {id, k})
    for (const auto& r : {id, k}) {
      pool.push_back(FunctorExpr::product(l, r));
      pool.push_back(FunctorExpr::coproduct(l, r));
    }
  return pool;
}

Carrier state_space(const std::string& name, const std::string& prefix, std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= n; ++i) ids.push_back(prefix + std::to_string(i));
  return Carrier(name, std::move(ids));
}

FValue random_value(const FunctorExpr& f, const Carrier& states, Rng& rng, const Limits& limits) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return FValue::state(states[rng.below(states.size())]);
    case FunctorKind::Const:
      return FValue::constant(f.set()[rng.below(f.set().size())]);
    case FunctorKind::Prod:
      return FValue::pair(random_value(f.left(), states, rng, limits), random_value(f.right(), states, rng, limits));
    case FunctorKind::Coprod:
      return rng.chance(1, 2) ? FValue::inl(random_value(f.left(), states, rng, limits))
                              : FValue::inr(random_value(f.right(), states, rng, limits));
    case FunctorKind::Exp: {
      std::vector<std::pair<std::string, FValue>> entries;
      for (const auto& key : f.set().elements()) entries.emplace_back(key, random_value(f.base(), states, rng, limits));
      return FValue::function(std::move(entries));
    }
    case FunctorKind::Pow: {
      std::vector<FValue> members;
      if (cardinality(f.base(), states, limits) <= 16) {
        for (auto& v : enumerate_values(f.base(), states, limits))
          if (rng.chance(1, 2)) members.push_back(std::move(v));
      } else {
        const std::uint64_t k = rng.below(4);
        for (std::uint64_t i = 0; i < k; ++i) members.push_back(random_value(f.base(), states, rng, limits));
      }
      return FValue::set(std::move(members));
    }
    case FunctorKind::Seq: {
      std::vector<FValue> items;
      const std::uint64_t len = rng.below(limits.max_seq_length + 1);
      for (std::uint64_t i = 0; i < len; ++i) items.push_back(random_value(f.base(), states, rng, limits));
      return FValue::list(std::move(items));
    }
  }
  throw std::logic_error("random_value: unknown functor kind");
}

Coalgebra random_coalgebra(const FunctorExpr& f, const Carrier& states, Rng& rng, const Limits& limits) {
  std::vector<FValue> images;
  for (std::size_t i = 0; i < states.size(); ++i) images.push_back(random_value(f, states, rng, limits));
  return Coalgebra(states, f, std::move(images));
}

Predicate random_predicate(const Carrier& carrier, Rng& rng) {
  Predicate p(carrier);
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (rng.chance(1, 2)) p.insert(i);
  return p;
}

Relation random_relation(const Carrier& x, const Carrier& y, Rng& rng) {
  Relation r(x, y);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (rng.chance(1, 2)) r.insert(i, j);
  return r;
}

namespace {

std::vector<std::pair<std::string, std::string>> closure(const Carrier& set, std::vector<std::vector<bool>> m) {
  const std::size_t n = set.size();
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j]) pairs.emplace_back(set[i], set[j]);
  return pairs;
}

}  // namespace

BasePreorder random_preorder(const Carrier& set, Rng& rng) {
  std::vector<std::vector<bool>> m(set.size(), std::vector<bool>(set.size(), false));
  for (auto& row : m)
    for (auto&& cell : row) cell = rng.chance(1, 3);
  return BasePreorder::from_pairs(set, closure(set, std::move(m)));
}

Formula random_formula(Rng& rng, std::size_t depth, const std::set<Op>& ops, const std::vector<Formula>& leaves) {
  std::vector<Op> connectives;
  for (Op op : ops)
    if (op != Op::Pred && op != Op::Atom && op != Op::Image) connectives.push_back(op);
  if (depth <= 1 || connectives.empty() || rng.chance(1, 4)) return rng.pick(leaves);
  const Op op = rng.pick(connectives);
  auto sub = [&] { return random_formula(rng, depth - 1, ops, leaves); };
  switch (op) {
    case Op::Not:
      return Formula::negation(sub());
    case Op::Next:
      return Formula::next(sub());
    case Op::Eventually:
      return Formula::eventually(sub());
    case Op::Always:
      return Formula::always(sub());
    case Op::And: {
      Formula a = sub();
      return Formula::conj(std::move(a), sub());
    }
    case Op::Or: {
      Formula a = sub();
      return Formula::disj(std::move(a), sub());
    }
    case Op::Implies: {
      Formula a = sub();
      return Formula::implies(std::move(a), sub());
    }
    case Op::Until: {
      Formula a = sub();
      return Formula::until(std::move(a), sub());
    }
    default:
      return rng.pick(leaves);
  }
}

Instance gen_instance(const TrialConfig& cfg, Rng& rng, const FunctorExpr& f, const std::optional<OrderSpec>& ord) {
  const std::size_t n = 1 + rng.below(cfg.max_states);
  Carrier x = state_space("X", "x", n);
  Coalgebra c = random_coalgebra(f, x, rng, cfg.limits);

  const std::uint64_t mode = rng.below(3);
  std::optional<Coalgebra> d;
  if (mode == 0) {
    d = random_coalgebra(f, state_space("Y", "y", 1 + rng.below(cfg.max_states)), rng, cfg.limits);
  } else {
    // renamed copy, optionally with one state's behaviour redrawn
    Carrier y = state_space("Y", "y", n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    auto rename = [&](const std::string& id) { return y[perm[x.require(id)]]; };
    std::vector<FValue> images(n);
    for (std::size_t i = 0; i < n; ++i) images[perm[i]] = fmap(f, c(i), rename);
    if (mode == 2) images[rng.below(n)] = random_value(f, y, rng, cfg.limits);
    d = Coalgebra(y, f, std::move(images));
  }

  Relation start = rng.chance(1, 4) ? Relation::full(c.states(), d->states())
                                    : random_relation(c.states(), d->states(), rng);
  Relation r = ord ? largest_simulation(c, *d, *ord, cfg.limits, start) : largest_bisimulation(c, *d, start);
  return Instance{std::move(c), std::move(*d), std::move(start), std::move(r)};
}

// ---------------------------------------------------------------------------
// Suite machinery

namespace {

const std::set<Op> kPositive = {Op::And, Op::Or, Op::Next, Op::Always, Op::Eventually, Op::Until};
const std::set<Op> kBoxFragment = {Op::And, Op::Or, Op::Next, Op::Always};
const std::set<Op> kFull = {Op::Not, Op::And, Op::Or, Op::Implies, Op::Next, Op::Always, Op::Eventually, Op::Until};

const Carrier& label_set() {
  static const Carrier a("A", {"a1", "a2"});
  return a;
}

const Carrier& ap_set() {
  static const Carrier ap("AP", {"p1", "p2"});
  return ap;
}

const Carrier& tag_set() {
  static const Carrier l("L", {"l1", "l2", "l3"});
  return l;
}

std::vector<FunctorExpr> default_pool() {
  auto pool = small_functor_pool(label_set());
  const FunctorExpr id = FunctorExpr::id();
  const FunctorExpr a = FunctorExpr::constant(label_set());
  pool.push_back(FunctorExpr::powerset(FunctorExpr::product(a, id)));
  pool.push_back(FunctorExpr::product(FunctorExpr::powerset(a), FunctorExpr::powerset(id)));
  pool.push_back(FunctorExpr::exponent(FunctorExpr::powerset(id), label_set()));
  return pool;
}

std::vector<FunctorExpr> pool_for(const TrialConfig& cfg, bool allow_seq) {
  auto pool = cfg.functor_pool.empty() ? default_pool() : cfg.functor_pool;
  if (!allow_seq) std::erase_if(pool, [](const FunctorExpr& f) { return f.contains(FunctorKind::Seq); });
  if (pool.empty()) throw ConfigError("functor pool is empty");
  return pool;
}

const std::set<Op>& ops_for(const TrialConfig& cfg, const std::set<Op>& fallback) {
  return cfg.operators.empty() ? fallback : cfg.operators;
}

void collect_sets(const FunctorExpr& f, Registry<Carrier>& sets) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return;
    case FunctorKind::Const:
    case FunctorKind::Exp:
      if (sets.find(f.set().name()) == nullptr) sets.add(f.set().name(), f.set());
      if (f.kind() == FunctorKind::Exp) collect_sets(f.base(), sets);
      return;
    case FunctorKind::Prod:
    case FunctorKind::Coprod:
      collect_sets(f.left(), sets);
      collect_sets(f.right(), sets);
      return;
    default:
      collect_sets(f.base(), sets);
  }
}

std::map<std::string, BasePreorder> random_bases(const FunctorExpr& f, Rng& rng) {
  Registry<Carrier> sets;
  collect_sets(f, sets);
  std::map<std::string, BasePreorder> out;
  for (const auto& [name, set] : sets.entries()) {
    // exponent index sets are not ordered; only constants get a preorder
    out.emplace(name, random_preorder(set, rng));
  }
  return out;
}

// What one trial checks, bundled so a failure can be written out as a system file.
struct Scenario {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  const Instance* inst = nullptr;
  std::optional<OrderSpec> order;
  std::optional<NatTrans> nu;
  EvalEnv env;
};

SystemDescription to_system(const Scenario& s, const std::vector<std::pair<std::string, Formula>>& formulas,
                            const Json& detail) {
  SystemDescription sys;
  const Instance& inst = *s.inst;
  sys.sets.add("X", inst.c.states());
  sys.sets.add("Y", inst.d.states());
  collect_sets(inst.c.functor(), sys.sets);
  if (s.nu) {
    if (sys.sets.find(s.nu->ap().name()) == nullptr) sys.sets.add(s.nu->ap().name(), s.nu->ap());
  }
  sys.functor = inst.c.functor();
  sys.coalgebras.add("c", inst.c);
  sys.coalgebras.add("d", inst.d);
  sys.relations.add("R", inst.r);
  for (const auto& [name, p] : s.env.predicates) sys.predicates.add(name, p);
  if (s.order) sys.orders.add("order", *s.order);
  if (s.nu) sys.nus.add("nu", *s.nu);
  for (const auto& [name, f] : formulas) sys.formulas.add(name, f);
  sys.meta = Json{{"suite", s.suite}, {"seed", s.seed}, {"trial", s.trial}};
  for (const auto& [k, v] : detail.items()) sys.meta[k] = v;
  return sys;
}

void record(SuiteReport& rep, const TrialConfig& cfg, std::size_t trial, std::string description,
            const std::function<SystemDescription()>& instance) {
  ++rep.violation_count;
  if (rep.violations.size() < cfg.keep_violations) {
    rep.violations.push_back(Violation{trial, std::move(description), instance()});
  }
}

enum class Mode { Reflect, Preserve, Both };

// Checks one formula at every related pair. With `nu` the same formula is
// read on both sides; without it the other side gets the image formula.
void check_formula(SuiteReport& rep, const TrialConfig& cfg, const Scenario& s, const Formula& phi, Mode mode,
                   bool phi_on_right) {
  const Instance& inst = *s.inst;
  const NatTrans* nu = s.nu ? &*s.nu : nullptr;
  Formula left = phi, right = phi;
  if (!nu) {
    if (phi_on_right) {
      left = image_formula(phi, RelationRef{"R"}, Direction::Inverse);
    } else {
      right = image_formula(phi, RelationRef{"R"}, Direction::Direct);
    }
  }
  const Predicate on_x = eval(inst.c, left, s.env, nu);
  const Predicate on_y = eval(inst.d, right, s.env, nu);
  ++rep.formulas_checked;
  for (const auto& [x, y] : inst.r.pairs()) {
    ++rep.pairs_checked;
    const bool in_x = on_x.contains(x);
    const bool in_y = on_y.contains(y);
    const bool reflect_ok = !in_y || in_x;
    const bool preserve_ok = !in_x || in_y;
    const bool ok = mode == Mode::Reflect ? reflect_ok : mode == Mode::Preserve ? preserve_ok : reflect_ok && preserve_ok;
    if (ok) continue;
    const std::string xs = inst.c.states()[x], ys = inst.d.states()[y];
    std::string what = (in_y ? ys + " satisfies " + right.to_string() + " but " + xs + " does not satisfy " +
                                   left.to_string()
                             : xs + " satisfies " + left.to_string() + " but " + ys + " does not satisfy " +
                                   right.to_string());
    record(rep, cfg, s.trial, what, [&] {
      return to_system(s, {{"left", left}, {"right", right}},
                       Json{{"pair", Json::array({xs, ys})},
                            {"left_holds", in_x},
                            {"right_holds", in_y},
                            {"replay", "eval --formula left --coalgebra c --state " + xs +
                                           "; eval --formula right --coalgebra d --state " + ys}});
    });
    return;
  }
}

std::vector<Formula> predicate_leaves(EvalEnv& env, const Carrier& carrier, const std::string& prefix, Rng& rng) {
  std::vector<Formula> leaves;
  const std::uint64_t k = 1 + rng.below(3);
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::string name = prefix + std::to_string(i);
    env.predicates.insert_or_assign(name, random_predicate(carrier, rng));
    leaves.push_back(Formula::pred(name));
  }
  return leaves;
}

template <class Body>
SuiteReport run_trials(std::string name, std::string claim, const TrialConfig& cfg, Body&& body) {
  SuiteReport rep;
  rep.name = std::move(name);
  rep.claim = std::move(claim);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = Rng::for_trial(cfg.seed, t);
    body(rep, t, rng);
    ++rep.trials_run;
  }
  return rep;
}

// Checks the premise the generator promises; a failure is a bug in the generator or the checkers.
bool premise_holds(SuiteReport& rep, const TrialConfig& cfg, const Scenario& s) {
  const Instance& inst = *s.inst;
  CheckReport check = s.order ? is_simulation(inst.c, inst.d, *s.order, inst.r, cfg.limits)
                              : is_bisimulation(inst.c, inst.d, inst.r);
  if (check.holds) return true;
  record(rep, cfg, s.trial, "generated relation fails its premise: " + check.witness->explanation,
         [&] { return to_system(s, {}, Json{{"premise", "violated"}}); });
  return false;
}

// Predicate-formula suites share this trial shape.
void predicate_trial(SuiteReport& rep, const TrialConfig& cfg, std::size_t t, Rng& rng, const FunctorExpr& f,
                     const std::optional<OrderSpec>& ord, const std::set<Op>& ops, Mode mode, bool validate_down,
                     bool validate_up) {
  Instance inst = gen_instance(cfg, rng, f, ord);
  if (ord) {
    for (const Carrier* carrier : {&inst.c.states(), &inst.d.states()}) {
      const bool down_ok = !validate_down || is_down_closed(*ord, *carrier, cfg.limits).holds();
      const bool up_ok = !validate_up || is_up_closed(*ord, *carrier, cfg.limits).holds();
      if (!down_ok || !up_ok) {
        ++rep.counters["orders_rejected"];
        return;
      }
    }
  }
  Scenario s{rep.name, cfg.seed, t, &inst, ord, std::nullopt, {}};
  s.env.relations.emplace("R", inst.r);
  auto right_leaves = predicate_leaves(s.env, inst.d.states(), "Q", rng);
  auto left_leaves = predicate_leaves(s.env, inst.c.states(), "P", rng);
  if (!premise_holds(rep, cfg, s)) return;
  if (!inst.r.empty()) ++rep.nonempty_relations;
  for (std::size_t i = 0; i < cfg.formulas_per_trial; ++i) {
    if (mode != Mode::Preserve) {
      check_formula(rep, cfg, s, random_formula(rng, cfg.formula_depth, ops, right_leaves), Mode::Reflect, true);
    }
    if (mode != Mode::Reflect) {
      check_formula(rep, cfg, s, random_formula(rng, cfg.formula_depth, ops, left_leaves), Mode::Preserve, false);
    }
  }
}

std::optional<OrderSpec> closed_order_candidate(const FunctorExpr& f, Rng& rng, bool down, SuiteReport& rep) {
  std::vector<int> kinds = {0};
  if (!f.contains(FunctorKind::Seq)) kinds.push_back(1);
  if (f.kind() == FunctorKind::Pow) kinds.push_back(2);
  switch (rng.pick(kinds)) {
    case 0:
      ++rep.counters["order:equality"];
      return OrderSpec::equality(f);
    case 1:
      ++rep.counters["order:structural"];
      return build_order_class(f, random_bases(f, rng));
    default:
      ++rep.counters[down ? "order:pow-subset" : "order:pow-supset"];
      return down ? OrderSpec::pow_subset(f) : OrderSpec::pow_supset(f);
  }
}

}  // namespace

SuiteReport suite_theorem_bisim(const TrialConfig& cfg) {
  const auto pool = pool_for(cfg, true);
  const auto& ops = ops_for(cfg, kPositive);
  return run_trials("bisim", "bisimulations reflect and preserve negation-free formulas over predicates", cfg,
                    [&](SuiteReport& rep, std::size_t t, Rng& rng) {
                      predicate_trial(rep, cfg, t, rng, rng.pick(pool), std::nullopt, ops, Mode::Both, false, false);
                    });
}

SuiteReport suite_theorem_sim_down(const TrialConfig& cfg) {
  const auto pool = pool_for(cfg, true);
  const auto& ops = ops_for(cfg, kBoxFragment);
  return run_trials("sim-down", "simulations under down-closed orders reflect or/and/next/always formulas", cfg,
                    [&](SuiteReport& rep, std::size_t t, Rng& rng) {
                      const FunctorExpr& f = rng.pick(pool);
                      auto ord = closed_order_candidate(f, rng, true, rep);
                      predicate_trial(rep, cfg, t, rng, f, ord, ops, Mode::Reflect, true, false);
                    });
}

SuiteReport suite_theorem_sim_up(const TrialConfig& cfg) {
  const auto pool = pool_for(cfg, true);
  const auto& ops = ops_for(cfg, kBoxFragment);
  return run_trials("sim-up", "simulations under up-closed orders preserve or/and/next/always formulas", cfg,
                    [&](SuiteReport& rep, std::size_t t, Rng& rng) {
                      const FunctorExpr& f = rng.pick(pool);
                      auto ord = closed_order_candidate(f, rng, false, rep);
                      predicate_trial(rep, cfg, t, rng, f, ord, ops, Mode::Preserve, false, true);
                    });
}

namespace {

SuiteReport order_class_run(const TrialConfig& cfg, std::string name, const std::set<Op>& ops) {
  const auto pool = pool_for(cfg, false);
  return run_trials(std::move(name), "simulations under Order-class orders reflect and preserve negation-free formulas",
                    cfg, [&](SuiteReport& rep, std::size_t t, Rng& rng) {
                      const FunctorExpr& f = rng.pick(pool);
                      auto ord = build_order_class(f, random_bases(f, rng));
                      predicate_trial(rep, cfg, t, rng, f, ord, ops, Mode::Both, false, false);
                    });
}

// ---- atomic propositions

struct AtomSetup {
  FunctorExpr f;
  std::optional<OrderSpec> order;
  std::optional<NatTrans> nu;
};

FunctorExpr labelled_functor() {
  return FunctorExpr::product(FunctorExpr::constant(tag_set()), FunctorExpr::powerset(FunctorExpr::id()));
}

FunctorExpr kripke_functor(const FunctorExpr& rest) {
  return FunctorExpr::product(FunctorExpr::powerset(FunctorExpr::constant(ap_set())), rest);
}

// nu(l, _) = labels[l], tabulated over each carrier.
NatTrans label_table(const FunctorExpr& f, const std::vector<Predicate>& labels, std::vector<Carrier> carriers,
                     const Limits& limits) {
  std::vector<NuTable> tables;
  for (auto& carrier : carriers) {
    NuTable table{carrier, {}};
    for (auto& u : enumerate_values(f, carrier, limits)) {
      const std::size_t l = tag_set().require(u.first().id());
      table.entries.emplace_back(std::move(u), labels[l]);
    }
    tables.push_back(std::move(table));
  }
  return NatTrans::table(f, ap_set(), std::move(tables));
}

std::vector<Formula> atom_leaves() {
  std::vector<Formula> out;
  for (const auto& p : ap_set().elements()) out.push_back(Formula::atom(p));
  return out;
}

void atom_trial(SuiteReport& rep, const TrialConfig& cfg, std::size_t t, Rng& rng, const AtomSetup& setup,
                const std::set<Op>& ops, Mode mode, const std::vector<Carrier>* table_carriers,
                const std::vector<Predicate>* labels, std::optional<Transfer> natural) {
  Instance inst = gen_instance(cfg, rng, setup.f, setup.order);
  Scenario s{rep.name, cfg.seed, t, &inst, setup.order, setup.nu, {}};
  if (labels != nullptr) {
    (void)table_carriers;
    s.nu = label_table(setup.f, *labels, {inst.c.states(), inst.d.states()}, cfg.limits);
    const Carrier both[] = {inst.c.states(), inst.d.states()};
    auto natural_check = check_naturality(*s.nu, both, cfg.limits);
    if (!natural_check.holds()) {
      record(rep, cfg, t, "label table is not natural", [&] { return to_system(s, {}, Json::object()); });
      return;
    }
  }
  if (natural && s.order) {
    for (const Carrier* carrier : {&inst.c.states(), &inst.d.states()}) {
      const bool ok = *natural == Transfer::Reflect ? is_down_natural(*s.order, *s.nu, *carrier, cfg.limits).holds()
                                                    : is_up_natural(*s.order, *s.nu, *carrier, cfg.limits).holds();
      if (!ok) {
        ++rep.counters["orders_rejected"];
        return;
      }
    }
  }
  if (!premise_holds(rep, cfg, s)) return;
  if (!inst.r.empty()) ++rep.nonempty_relations;
  const auto leaves = atom_leaves();
  for (std::size_t i = 0; i < cfg.formulas_per_trial; ++i) {
    Formula phi = random_formula(rng, cfg.formula_depth, ops, leaves);
    if (phi.contains(Op::Not)) ++rep.counters["formulas_with_not"];
    if (phi.contains(Op::Until)) ++rep.counters["formulas_with_until"];
    if (phi.contains(Op::Not) && phi.contains(Op::Until)) ++rep.counters["formulas_with_not_and_until"];
    check_formula(rep, cfg, s, phi, mode, true);
  }
}

std::vector<Predicate> random_labels(Rng& rng) {
  std::vector<Predicate> labels;
  for (std::size_t i = 0; i < tag_set().size(); ++i) labels.push_back(random_predicate(ap_set(), rng));
  return labels;
}

// A random sub-preorder of "l <= l' only if labels move the right way".
BasePreorder natural_tag_order(const std::vector<Predicate>& labels, Transfer direction, Rng& rng) {
  const std::size_t n = tag_set().size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool allowed =
          direction == Transfer::Reflect ? labels[j].subset_of(labels[i]) : labels[i].subset_of(labels[j]);
      m[i][j] = allowed && rng.chance(2, 3);
    }
  return BasePreorder::from_pairs(tag_set(), closure(tag_set(), std::move(m)));
}

SuiteReport ap_natural_run(const TrialConfig& cfg, Transfer direction, std::string name, const std::set<Op>& ops) {
  const bool down = direction == Transfer::Reflect;
  std::string claim = down ? "Order-class simulations with a down-natural order reflect negation-free atom formulas"
                           : "Order-class simulations with an up-natural order preserve negation-free atom formulas";
  const FunctorExpr kripke = kripke_functor(FunctorExpr::powerset(FunctorExpr::id()));
  return run_trials(std::move(name), std::move(claim), cfg, [&](SuiteReport& rep, std::size_t t, Rng& rng) {
    if (rng.chance(2, 3)) {
      ++rep.counters["variant:label-table"];
      const auto labels = random_labels(rng);
      const FunctorExpr f = labelled_functor();
      AtomSetup setup{f, build_order_class(f, {{tag_set().name(), natural_tag_order(labels, direction, rng)}}),
                      std::nullopt};
      atom_trial(rep, cfg, t, rng, setup, ops, down ? Mode::Reflect : Mode::Preserve, nullptr, &labels, direction);
    } else {
      ++rep.counters["variant:kripke"];
      AtomSetup setup{kripke, build_order_class(kripke, {{ap_set().name(), random_preorder(ap_set(), rng)}}),
                      NatTrans::kripke_projection(kripke, ap_set())};
      atom_trial(rep, cfg, t, rng, setup, ops, down ? Mode::Reflect : Mode::Preserve, nullptr, nullptr, direction);
    }
  });
}

}  // namespace

SuiteReport suite_theorem_order_class(const TrialConfig& cfg) {
  return order_class_run(cfg, "order-class", ops_for(cfg, kPositive));
}

SuiteReport suite_theorem_ap_bisim(const TrialConfig& cfg) {
  const auto& ops = ops_for(cfg, kFull);
  const std::vector<FunctorExpr> kripke = {
      kripke_functor(FunctorExpr::powerset(FunctorExpr::id())),
      kripke_functor(FunctorExpr::id()),
      kripke_functor(FunctorExpr::exponent(FunctorExpr::powerset(FunctorExpr::id()), label_set())),
      kripke_functor(FunctorExpr::sequence(FunctorExpr::id())),
  };
  // the Kripke projections are natural by construction; confirm once on small carriers
  SuiteReport rep = run_trials(
      "ap-bisim", "bisimulations agree on every formula over atomic propositions, negation included", cfg,
      [&](SuiteReport& rep, std::size_t t, Rng& rng) {
        if (rng.chance(1, 3)) {
          ++rep.counters["variant:label-table"];
          const auto labels = random_labels(rng);
          AtomSetup setup{labelled_functor(), std::nullopt, std::nullopt};
          atom_trial(rep, cfg, t, rng, setup, ops, Mode::Both, nullptr, &labels, std::nullopt);
        } else {
          const FunctorExpr& f = rng.pick(kripke);
          const bool complement = rng.chance(1, 2);
          ++rep.counters[complement ? "variant:kripke-complement" : "variant:kripke-projection"];
          AtomSetup setup{f, std::nullopt,
                          complement ? NatTrans::kripke_complement(f, ap_set()) : NatTrans::kripke_projection(f, ap_set())};
          atom_trial(rep, cfg, t, rng, setup, ops, Mode::Both, nullptr, nullptr, std::nullopt);
        }
      });
  const Carrier small[] = {state_space("X", "x", 2), state_space("Y", "y", 2)};
  for (const auto& f : kripke) {
    for (const auto& nu : {NatTrans::kripke_projection(f, ap_set()), NatTrans::kripke_complement(f, ap_set())}) {
      const bool natural = check_naturality(nu, small, cfg.limits).holds();
      rep.checks.push_back(Check{nu.describe() + " on " + f.to_string() + " is natural", true, natural});
    }
  }
  return rep;
}

SuiteReport suite_theorem_ap_natural(const TrialConfig& cfg, Transfer direction) {
  return ap_natural_run(cfg, direction, direction == Transfer::Reflect ? "ap-natural-down" : "ap-natural-up",
                        ops_for(cfg, kPositive));
}

std::vector<SuiteReport> probe_negation(const TrialConfig& cfg) {
  std::vector<SuiteReport> out;
  out.push_back(order_class_run(cfg, "order-class-with-negation", kFull));
  out.push_back(ap_natural_run(cfg, Transfer::Reflect, "ap-natural-down-with-negation", kFull));
  out.push_back(ap_natural_run(cfg, Transfer::Preserve, "ap-natural-up-with-negation", kFull));
  for (auto& r : out) {
    r.empirical = true;
    r.claim = "outside the proved fragment; recorded, not asserted";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counterexamples

namespace {

constexpr const char* kNextInstance = R"({
  "sets": {"X": ["x1", "x2"], "Y": ["y1", "y2"]},
  "functor": {"pow": "id"},
  "coalgebras": {
    "c": {"states": "X", "map": {"x1": {"set": ["x1", "x2"]}, "x2": {"set": ["x2"]}}},
    "d": {"states": "Y", "map": {"y1": {"set": ["y2"]}, "y2": {"set": ["y2"]}}}
  },
  "relations": {"R": {"domain": "X", "codomain": "Y", "pairs": [["x1", "y2"]]}},
  "predicates": {"P": {"carrier": "Y", "members": ["y2"]}},
  "orders": {"supset": {"builtin": "pow-supset"}, "subset": {"builtin": "pow-subset"}}
})";

constexpr const char* kEventuallyInstance = R"({
  "sets": {"X": ["x1", "x2"], "Y": ["y1", "y2"]},
  "functor": {"pow": "id"},
  "coalgebras": {
    "c": {"states": "X", "map": {"x1": {"set": ["x1"]}, "x2": {"set": ["x2"]}}},
    "d": {"states": "Y", "map": {"y1": {"set": ["y1", "y2"]}, "y2": {"set": ["y2"]}}}
  },
  "relations": {"R": {"domain": "X", "codomain": "Y", "pairs": [["x1", "y1"]]}},
  "predicates": {"Q": {"carrier": "Y", "members": ["y2"]}, "Empty": {"carrier": "X", "members": []}},
  "orders": {"subset": {"builtin": "pow-subset"}}
})";

}  // namespace

SuiteReport counterexample_next() {
  SuiteReport rep;
  rep.name = "counterexample-next";
  rep.claim = "a superset-order simulation need not reflect a next-step property";
  const SystemDescription sys = parse_system(kNextInstance, "next-step counterexample");
  const Coalgebra& c = sys.coalgebras.at("c");
  const Coalgebra& d = sys.coalgebras.at("d");
  const Relation& r = sys.relations.at("R");
  const OrderSpec& supset = sys.orders.at("supset");
  const EvalEnv env = sys.env();
  const Formula phi = Formula::next(Formula::pred("P"));
  const Formula phi_inv = image_formula(phi, RelationRef{"R"}, Direction::Inverse);
  auto add = [&](std::string name, bool expected, bool actual) {
    rep.checks.push_back(Check{std::move(name), expected, actual});
  };

  add("R is a simulation under the superset order", true, is_simulation(c, d, supset, r).holds);
  add("y2 satisfies X P", true, satisfies(d, "y2", phi, env));
  add("inverse image of P along R is {x1}", true,
      inverse_image(r, env.predicates.at("P")) == Predicate(c.states(), {"x1"}));
  add("x1 satisfies the inverse image formula", false, satisfies(c, "x1", phi_inv, env));
  add("R is a bisimulation", false, is_bisimulation(c, d, r).holds);
  add("the superset order is down-closed on X", false, is_down_closed(supset, c.states()).holds());
  add("R is a simulation under the subset order", false, is_simulation(c, d, sys.orders.at("subset"), r).holds);

  // with c(x1) = {x1} the property is reflected again
  std::vector<FValue> images(c.images().begin(), c.images().end());
  images[0] = FValue::set({FValue::state("x1")});
  const Coalgebra c2(c.states(), c.functor(), std::move(images));
  add("after setting c(x1) = {x1}, x1 satisfies the inverse image formula", true, satisfies(c2, "x1", phi_inv, env));
  return rep;
}

SuiteReport counterexample_eventually() {
  SuiteReport rep;
  rep.name = "counterexample-eventually";
  rep.claim = "a down-closed-order simulation need not reflect an eventuality";
  const SystemDescription sys = parse_system(kEventuallyInstance, "eventuality counterexample");
  const Coalgebra& c = sys.coalgebras.at("c");
  const Coalgebra& d = sys.coalgebras.at("d");
  const Relation& r = sys.relations.at("R");
  const OrderSpec& subset = sys.orders.at("subset");
  const EvalEnv env = sys.env();
  const Formula psi = Formula::eventually(Formula::pred("Q"));
  const Formula psi_inv = image_formula(psi, RelationRef{"R"}, Direction::Inverse);
  auto add = [&](std::string name, bool expected, bool actual) {
    rep.checks.push_back(Check{std::move(name), expected, actual});
  };

  add("the subset order is down-closed on X", true, is_down_closed(subset, c.states()).holds());
  add("the subset order is down-closed on Y", true, is_down_closed(subset, d.states()).holds());
  add("R is a simulation under the subset order", true, is_simulation(c, d, subset, r).holds);
  add("y1 satisfies F Q", true, satisfies(d, "y1", psi, env));
  add("x1 satisfies F Empty", false, satisfies(c, "x1", Formula::eventually(Formula::pred("Empty")), env));
  add("x1 satisfies the inverse image formula", false, satisfies(c, "x1", psi_inv, env));
  add("{x1} is an invariant", true, is_invariant(c, Predicate(c.states(), {"x1"})).holds);
  add("some invariant inside X contains x1", true, always_oracle(c, Predicate::full(c.states()), 0));

  // the same instance reflects every formula of the or/and/next/always fragment
  bool fragment_reflected = true;
  Rng rng(7);
  const std::vector<Formula> leaves = {Formula::pred("Q")};
  for (int i = 0; i < 200 && fragment_reflected; ++i) {
    const Formula f = random_formula(rng, 4, kBoxFragment, leaves);
    const Formula f_inv = image_formula(f, RelationRef{"R"}, Direction::Inverse);
    if (satisfies(d, "y1", f, env) && !satisfies(c, "x1", f_inv, env)) fragment_reflected = false;
  }
  add("200 random or/and/next/always formulas are reflected", true, fragment_reflected);
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch and reporting

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "bisim",          "sim-down",        "sim-up",
      "order-class",    "ap-bisim",        "ap-natural-down",
      "ap-natural-up",  "counterexample-next", "counterexample-eventually",
      "probe-negation",
  };
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& which, const TrialConfig& cfg) {
  std::vector<SuiteReport> out;
  auto want = [&](const std::string& name) { return which == name || (which == "all" && name.rfind("probe", 0) != 0 &&
                                                                      name.rfind("counterexample", 0) != 0); };
  if (want("bisim")) out.push_back(suite_theorem_bisim(cfg));
  if (want("sim-down")) out.push_back(suite_theorem_sim_down(cfg));
  if (want("sim-up")) out.push_back(suite_theorem_sim_up(cfg));
  if (want("order-class")) out.push_back(suite_theorem_order_class(cfg));
  if (want("ap-bisim")) out.push_back(suite_theorem_ap_bisim(cfg));
  if (want("ap-natural-down")) out.push_back(suite_theorem_ap_natural(cfg, Transfer::Reflect));
  if (want("ap-natural-up")) out.push_back(suite_theorem_ap_natural(cfg, Transfer::Preserve));
  if (want("counterexample-next")) out.push_back(counterexample_next());
  if (want("counterexample-eventually")) out.push_back(counterexample_eventually());
  if (which == "probe-negation") {
    for (auto& r : probe_negation(cfg)) out.push_back(std::move(r));
  }
  if (out.empty()) throw ConfigError("unknown suite '" + which + "'");
  return out;
}

Json report_to_json(const SuiteReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"passed", c.passed()}});
  }
  Json instances = Json::array();
  for (const auto& v : report.violations) {
    instances.push_back(Json{{"trial", v.trial}, {"description", v.description}, {"system", to_json(v.instance)}});
  }
  Json counters = Json::object();
  for (const auto& [k, v] : report.counters) counters[k] = v;
  return Json{{"suite", report.name},
              {"claim", report.claim},
              {"passed", report.passed()},
              {"empirical", report.empirical},
              {"trials", report.trials_run},
              {"nonempty_relations", report.nonempty_relations},
              {"pairs_checked", report.pairs_checked},
              {"formulas_checked", report.formulas_checked},
              {"violations", report.violation_count},
              {"counters", counters},
              {"checks", checks},
              {"instances", instances}};
}

}  // namespace colift
