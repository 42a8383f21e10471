#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colift/functor.hpp"
#include "colift/lifting.hpp"
#include "colift/orders.hpp"

namespace colift {

struct Witness {
  std::vector<std::string> states;  ///< the failing pair, or one state for invariants
  std::string explanation;
};

struct CheckReport {
  bool holds = true;
  std::optional<Witness> witness;  ///< present iff !holds
};

/// Every (x, y) in r has (c(x), d(y)) in Rel(F)(r).
CheckReport is_bisimulation(const Coalgebra& c, const Coalgebra& d, const Relation& r);

/// Every x in p has c(x) in Pred(F)(p).
CheckReport is_invariant(const Coalgebra& c, const Predicate& p);

/// Every (x, y) in r has (c(x), d(y)) in Rel_<=(F)(r).
CheckReport is_simulation(const Coalgebra& c, const Coalgebra& d, const OrderSpec& ord, const Relation& r,
                          const Limits& limits = {});

/// Greatest bisimulation contained in `start` (default: all of X x Y).
Relation largest_bisimulation(const Coalgebra& c, const Coalgebra& d,
                              const std::optional<Relation>& start = std::nullopt);

/// Greatest simulation under `ord` contained in `start` (default: all of X x Y).
Relation largest_simulation(const Coalgebra& c, const Coalgebra& d, const OrderSpec& ord, const Limits& limits = {},
                            const std::optional<Relation>& start = std::nullopt);

}  // namespace colift
