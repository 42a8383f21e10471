#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "colift/carrier.hpp"

namespace colift {

/// Bounds for every exhaustive enumeration in the toolkit.
struct Limits {
  std::uint64_t guard = 100000;
  /// Longest list enumerated for a finite-sequence functor.
  std::size_t max_seq_length = 2;
};

enum class FunctorKind { Id, Const, Prod, Coprod, Exp, Pow, Seq };

/// Syntax tree of a polynomial functor.
///
/// Constant and exponent nodes hold the finite set they name, so a
/// FunctorExpr is always fully resolved; name resolution happens when a
/// system description is loaded.
class FunctorExpr {
 public:
  /// The identity functor.
  FunctorExpr();

  static FunctorExpr id() { return FunctorExpr(); }
  static FunctorExpr constant(Carrier set);
  static FunctorExpr product(FunctorExpr left, FunctorExpr right);
  static FunctorExpr coproduct(FunctorExpr left, FunctorExpr right);
  static FunctorExpr exponent(FunctorExpr base, Carrier index);
  static FunctorExpr powerset(FunctorExpr base);
  static FunctorExpr sequence(FunctorExpr base);

  FunctorKind kind() const noexcept;
  /// The constant set (Const) or the index set (Exp).
  const Carrier& set() const;
  /// Left operand of Prod/Coprod; base of Exp/Pow/Seq.
  const FunctorExpr& left() const;
  const FunctorExpr& right() const;
  const FunctorExpr& base() const { return left(); }

  /// Height of the tree; leaves have depth 1.
  std::size_t depth() const;
  bool contains(FunctorKind k) const;
  std::string to_string() const;

  friend bool operator==(const FunctorExpr& a, const FunctorExpr& b);

 private:
  struct Node;
  explicit FunctorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class ValueKind { State, Const, Pair, Inl, Inr, Func, Set, List };

/// An element of F(X): an immutable value tree.
///
/// Sets are kept in canonical form (sorted, duplicates removed) and
/// function entries sorted by key, so structural equality coincides with
/// extensional equality.
class FValue {
 public:
  FValue() = default;

  static FValue state(std::string id);
  static FValue constant(std::string id);
  static FValue pair(FValue first, FValue second);
  static FValue inl(FValue v);
  static FValue inr(FValue v);
  /// Throws ValidationError on a repeated key.
  static FValue function(std::vector<std::pair<std::string, FValue>> entries);
  static FValue set(std::vector<FValue> members);
  static FValue list(std::vector<FValue> items);

  ValueKind kind() const noexcept { return kind_; }
  /// Element id of a State or Const leaf.
  const std::string& id() const noexcept { return id_; }
  /// Children: the two components of a pair, the injected value, set
  /// members, list items, or function values in key order.
  std::span<const FValue> items() const noexcept;
  /// Function keys, parallel to items().
  std::span<const std::string> keys() const noexcept;

  const FValue& first() const { return items()[0]; }
  const FValue& second() const { return items()[1]; }
  const FValue& inner() const { return items()[0]; }
  /// Function value at `key`, or nullptr.
  const FValue* at(std::string_view key) const;
  /// Set membership (canonical sets only).
  bool has_member(const FValue& v) const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const FValue& a, const FValue& b);
  friend bool operator==(const FValue& a, const FValue& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  struct Payload {
    std::vector<std::string> keys;
    std::vector<FValue> items;
  };
  FValue(ValueKind kind, std::string id, std::shared_ptr<const Payload> payload)
      : kind_(kind), id_(std::move(id)), payload_(std::move(payload)) {}

  ValueKind kind_ = ValueKind::State;
  std::string id_;
  std::shared_ptr<const Payload> payload_;
};

/// True iff `v` is a well-shaped element of f(x).
bool validate_value(const FunctorExpr& f, const Carrier& x, const FValue& v);

/// Like validate_value but throws ValidationError describing the first problem.
void require_value(const FunctorExpr& f, const Carrier& x, const FValue& v);

/// |f(x)| with sequences capped at `limits.max_seq_length`; saturates at UINT64_MAX.
std::uint64_t cardinality(const FunctorExpr& f, const Carrier& x, const Limits& limits = {});

/// Every element of f(x) exactly once, in a deterministic order (carrier
/// order, then structure; subsets in binary-counting order). Throws
/// EnumerationTooLarge when the cardinality exceeds `limits.guard`.
std::vector<FValue> enumerate_values(const FunctorExpr& f, const Carrier& x,
                                     const Limits& limits = {});

/// Extensional equality.
inline bool value_equal(const FValue& a, const FValue& b) { return a == b; }

/// F(g)(v): rename every state leaf through `g`.
FValue fmap(const FunctorExpr& f, const FValue& v,
            const std::function<std::string(const std::string&)>& g);

/// A finite state space with a structure map state -> F(state space).
class Coalgebra {
 public:
  /// Throws ValidationError unless `images` has one valid value per state.
  Coalgebra(Carrier states, FunctorExpr functor, std::vector<FValue> images);

  const Carrier& states() const noexcept { return states_; }
  const FunctorExpr& functor() const noexcept { return functor_; }
  const FValue& operator()(std::size_t state) const { return images_[state]; }
  const FValue& at(std::string_view state) const { return images_[states_.require(state)]; }
  std::span<const FValue> images() const noexcept { return images_; }

 private:
  Carrier states_;
  FunctorExpr functor_;
  std::vector<FValue> images_;
};

}  // namespace colift
