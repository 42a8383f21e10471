#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "colift/error.hpp"
#include "colift/functor.hpp"
#include "colift/lifting.hpp"
#include "colift/logic.hpp"
#include "colift/orders.hpp"

namespace colift {

using Json = nlohmann::ordered_json;

/// Name -> value table that remembers insertion order.
template <class T>
class Registry {
 public:
  explicit Registry(std::string kind = "entry") : kind_(std::move(kind)) {}

  /// Throws ValidationError on a repeated name.
  void add(std::string name, T value) {
    if (find(name) != nullptr) throw ValidationError("duplicate " + kind_ + " '" + name + "'");
    entries_.emplace_back(std::move(name), std::move(value));
  }
  const T* find(std::string_view name) const {
    for (const auto& [n, v] : entries_)
      if (n == name) return &v;
    return nullptr;
  }
  /// Throws ConfigError naming the missing entry.
  const T& at(std::string_view name) const {
    if (const T* v = find(name)) return *v;
    throw ConfigError("no " + kind_ + " named '" + std::string(name) + "'");
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }
  const std::vector<std::pair<std::string, T>>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::string kind_;
  std::vector<std::pair<std::string, T>> entries_;
};

/// Everything one input document declares.
struct SystemDescription {
  Registry<Carrier> sets{"set"};
  FunctorExpr functor;
  Limits limits;
  Registry<Coalgebra> coalgebras{"coalgebra"};
  Registry<Relation> relations{"relation"};
  Registry<Predicate> predicates{"predicate"};
  Registry<OrderSpec> orders{"order"};
  Registry<NatTrans> nus{"natural transformation"};
  Registry<Formula> formulas{"formula"};
  /// Free-form annotations, kept verbatim.
  Json meta = Json::object();

  /// Predicates and relations by name, for evaluating formulas.
  EvalEnv env() const;
  /// Registered formula `text`, or `text` parsed against the declared names.
  Formula formula(std::string_view text) const;
};

/// Parses and validates a document. `origin` names it in error messages.
SystemDescription parse_system(std::string_view text, std::string_view origin = "<input>");
SystemDescription load_system(const std::string& path);

Json to_json(const SystemDescription& sys);
std::string dump_system(const SystemDescription& sys);

Json functor_to_json(const FunctorExpr& f);
FunctorExpr functor_from_json(const Json& j, const Registry<Carrier>& sets);

Json value_to_json(const FValue& v);
/// Reads a value of shape f over `states`.
FValue value_from_json(const Json& j, const FunctorExpr& f, const Carrier& states);

Json formula_to_json(const Formula& phi);
/// Tagged object, or a string in the text syntax.
Formula formula_from_json(const Json& j, const std::set<std::string>& predicates, const std::set<std::string>& ap);

Json order_to_json(const OrderSpec& ord);
OrderSpec order_from_json(const Json& j, const FunctorExpr& f, const Registry<Carrier>& sets);

Json nu_to_json(const NatTrans& nu);
NatTrans nu_from_json(const Json& j, const FunctorExpr& f, const Registry<Carrier>& sets);

}  // namespace colift
