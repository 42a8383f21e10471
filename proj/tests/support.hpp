#pragma once

#include <string>
#include <vector>

#include "colift/carrier.hpp"
#include "colift/functor.hpp"
#include "colift/harness.hpp"
#include "colift/system.hpp"

#ifndef COLIFT_DATA_DIR
#define COLIFT_DATA_DIR "data"
#endif

namespace colift::testing {

inline Carrier xs(std::size_t n) { return state_space("X", "x", n); }
inline Carrier ys(std::size_t n) { return state_space("Y", "y", n); }
inline const Carrier& set_a() {
  static const Carrier a("A", {"a1", "a2"});
  return a;
}

inline FunctorExpr pow_id() { return FunctorExpr::powerset(FunctorExpr::id()); }

/// Depth-two pool over Id and Const A.
inline std::vector<FunctorExpr> pool() { return small_functor_pool(set_a()); }

inline FValue st(const std::string& id) { return FValue::state(id); }
inline FValue set_of(std::vector<std::string> ids) {
  std::vector<FValue> vs;
  for (auto& id : ids) vs.push_back(FValue::state(id));
  return FValue::set(std::move(vs));
}

inline std::string data_file(const std::string& name) { return std::string(COLIFT_DATA_DIR) + "/" + name; }

/// Pow(Id) coalgebra from successor lists.
inline Coalgebra pow_system(const Carrier& states, const std::vector<std::vector<std::string>>& succ) {
  std::vector<FValue> images;
  for (const auto& s : succ) images.push_back(set_of(s));
  return Coalgebra(states, pow_id(), std::move(images));
}

}  // namespace colift::testing
