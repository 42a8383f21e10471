#include "colift/simulation.hpp"

#include <stdexcept>

#include "colift/error.hpp"

namespace colift {

namespace {

void require_compatible(const Coalgebra& c, const Coalgebra& d) {
  if (!(c.functor() == d.functor())) {
    throw ValidationError("coalgebras have different functors: " + c.functor().to_string() + " vs " +
                          d.functor().to_string());
  }
}

void require_between(const Coalgebra& c, const Coalgebra& d, const Relation& r) {
  if (!(r.domain() == c.states()) || !(r.codomain() == d.states())) {
    throw ValidationError("relation is over " + r.domain().name() + " x " + r.codomain().name() + ", expected " +
                          c.states().name() + " x " + d.states().name());
  }
}

void require_order_functor(const Coalgebra& c, const OrderSpec& ord) {
  if (!(ord.functor() == c.functor())) {
    throw ValidationError("order is defined on " + ord.functor().to_string() + ", coalgebras use " +
                          c.functor().to_string());
  }
}

CheckReport fail(std::vector<std::string> states, std::string why) {
  return CheckReport{false, Witness{std::move(states), std::move(why)}};
}

// Rel_<=(F)(R) membership for (c(x), d(y)) via the composite <= ; Rel(F)(R) ; <=.
// The up-set of every c(x) and down-set of every d(y) depend only on the
// coalgebras, so they are computed once and reused across rounds.
class OrderedStep {
 public:
  OrderedStep(const Coalgebra& c, const Coalgebra& d, const OrderSpec& ord, const Limits& limits)
      : c_(c), left_(enumerate_values(c.functor(), c.states(), limits)),
        right_(enumerate_values(d.functor(), d.states(), limits)) {
    above_.resize(c.states().size());
    for (std::size_t x = 0; x < above_.size(); ++x)
      for (std::size_t i = 0; i < left_.size(); ++i)
        if (leq(ord, c.states(), c(x), left_[i])) above_[x].push_back(i);
    below_.resize(d.states().size());
    for (std::size_t y = 0; y < below_.size(); ++y)
      for (std::size_t j = 0; j < right_.size(); ++j)
        if (leq(ord, d.states(), right_[j], d(y))) below_[y].push_back(j);
  }

  bool related(const Relation& r, std::size_t x, std::size_t y) const {
    for (std::size_t i : above_[x])
      for (std::size_t j : below_[y])
        if (rel_lift(c_.functor(), r, left_[i], right_[j])) return true;
    return false;
  }

 private:
  const Coalgebra& c_;
  std::vector<FValue> left_, right_;
  std::vector<std::vector<std::size_t>> above_, below_;
};

template <class Step>
Relation refine(const Coalgebra& c, const Coalgebra& d, Relation r, Step&& step) {
  const std::size_t bound = c.states().size() * d.states().size() + 1;
  for (std::size_t round = 0; round <= bound; ++round) {
    Relation next = r;
    bool changed = false;
    for (const auto& [x, y] : r.pairs()) {
      if (!step(r, x, y)) {
        next.erase(x, y);
        changed = true;
      }
    }
    if (!changed) return r;
    r = std::move(next);
  }
  throw std::logic_error("refinement did not stabilise within |X|*|Y| rounds");
}

Relation start_relation(const Coalgebra& c, const Coalgebra& d, const std::optional<Relation>& start) {
  if (!start) return Relation::full(c.states(), d.states());
  require_between(c, d, *start);
  return *start;
}

}  // namespace

CheckReport is_bisimulation(const Coalgebra& c, const Coalgebra& d, const Relation& r) {
  require_compatible(c, d);
  require_between(c, d, r);
  for (const auto& [x, y] : r.pairs()) {
    if (!rel_lift(c.functor(), r, c(x), d(y))) {
      return fail({c.states()[x], d.states()[y]}, c(x).to_string() + " and " + d(y).to_string() +
                                                      " are not related by the lifted relation");
    }
  }
  return {};
}

CheckReport is_invariant(const Coalgebra& c, const Predicate& p) {
  if (!(p.carrier() == c.states())) {
    throw ValidationError("predicate is over '" + p.carrier().name() + "', coalgebra over '" + c.states().name() +
                          "'");
  }
  for (std::size_t x = 0; x < c.states().size(); ++x) {
    if (p.contains(x) && !pred_lift(c.functor(), p, c(x))) {
      return fail({c.states()[x]}, "successor structure " + c(x).to_string() + " leaves " + p.to_string());
    }
  }
  return {};
}

CheckReport is_simulation(const Coalgebra& c, const Coalgebra& d, const OrderSpec& ord, const Relation& r,
                          const Limits& limits) {
  require_compatible(c, d);
  require_between(c, d, r);
  require_order_functor(c, ord);
  if (r.empty()) return {};
  OrderedStep step(c, d, ord, limits);
  for (const auto& [x, y] : r.pairs()) {
    if (!step.related(r, x, y)) {
      return fail({c.states()[x], d.states()[y]},
                  "no w in F(R) with " + c(x).to_string() + " <= F(pi1)(w) and F(pi2)(w) <= " + d(y).to_string());
    }
  }
  return {};
}

Relation largest_bisimulation(const Coalgebra& c, const Coalgebra& d, const std::optional<Relation>& start) {
  require_compatible(c, d);
  return refine(c, d, start_relation(c, d, start), [&](const Relation& r, std::size_t x, std::size_t y) {
    return rel_lift(c.functor(), r, c(x), d(y));
  });
}

Relation largest_simulation(const Coalgebra& c, const Coalgebra& d, const OrderSpec& ord, const Limits& limits,
                            const std::optional<Relation>& start) {
  require_compatible(c, d);
  require_order_functor(c, ord);
  Relation r = start_relation(c, d, start);
  if (r.empty()) return r;
  OrderedStep step(c, d, ord, limits);
  return refine(c, d, std::move(r),
                [&](const Relation& cur, std::size_t x, std::size_t y) { return step.related(cur, x, y); });
}

}  // namespace colift
