#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "colift/carrier.hpp"
#include "colift/functor.hpp"

namespace colift {

class OrderSpec;

/// A finite relation R between two carriers, stored as a bit matrix.
class Relation {
 public:
  Relation() = default;
  /// The empty relation.
  Relation(Carrier domain, Carrier codomain);
  /// Throws ValidationError if a component is not in its carrier.
  Relation(Carrier domain, Carrier codomain, const std::vector<std::pair<std::string, std::string>>& pairs);

  static Relation full(Carrier domain, Carrier codomain);
  /// The identity relation on `carrier`.
  static Relation diagonal(const Carrier& carrier);

  const Carrier& domain() const noexcept { return domain_; }
  const Carrier& codomain() const noexcept { return codomain_; }

  bool contains(std::size_t x, std::size_t y) const { return bits_[x * codomain_.size() + y]; }
  /// False for ids outside the carriers.
  bool contains(std::string_view x, std::string_view y) const;
  void insert(std::size_t x, std::size_t y) { bits_[x * codomain_.size() + y] = true; }
  void erase(std::size_t x, std::size_t y) { bits_[x * codomain_.size() + y] = false; }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Pairs of indices in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::vector<std::pair<std::string, std::string>> id_pairs() const;

  Relation inverse() const;
  bool subset_of(const Relation& other) const;
  Relation unite(const Relation& other) const;
  Relation intersect(const Relation& other) const;
  std::string to_string() const;

  friend bool operator==(const Relation& a, const Relation& b);

 private:
  void require_same_carriers(const Relation& other) const;

  Carrier domain_;
  Carrier codomain_;
  std::vector<bool> bits_;
};

/// A subset of a carrier.
class Predicate {
 public:
  Predicate() = default;
  /// The empty predicate.
  explicit Predicate(Carrier carrier);
  /// Throws ValidationError if a member is not in the carrier.
  Predicate(Carrier carrier, const std::vector<std::string>& members);

  static Predicate full(Carrier carrier);
  /// Bit i of `mask` selects element i.
  static Predicate from_mask(Carrier carrier, std::uint64_t mask);

  const Carrier& carrier() const noexcept { return carrier_; }
  bool contains(std::size_t i) const { return bits_[i]; }
  /// False for ids outside the carrier.
  bool contains(std::string_view id) const;
  void insert(std::size_t i) { bits_[i] = true; }
  void erase(std::size_t i) { bits_[i] = false; }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::string> members() const;

  Predicate complement() const;
  Predicate unite(const Predicate& other) const;
  Predicate intersect(const Predicate& other) const;
  bool subset_of(const Predicate& other) const;
  std::string to_string() const;

  friend bool operator==(const Predicate& a, const Predicate& b);

 private:
  void require_same_carrier(const Predicate& other) const;

  Carrier carrier_;
  std::vector<bool> bits_;
};

/// Diagonal of a predicate: {(x, x) | x in p}.
Relation diagonal(const Predicate& p);

/// (u, v) in Rel(f)(r), by structural induction on f. Throws
/// ValidationError on a shape mismatch or a leaf outside the carriers.
bool rel_lift(const FunctorExpr& f, const Relation& r, const FValue& u, const FValue& v);

/// u in Pred(f)(p), by structural induction on f.
bool pred_lift(const FunctorExpr& f, const Predicate& p, const FValue& u);

/// u in pi_1(Rel(f)(diag p)), by searching f(p.carrier) for a partner.
/// Independent of pred_lift; used to cross-check it.
bool pred_lift_via_rel(const FunctorExpr& f, const Predicate& p, const FValue& u, const Limits& limits = {});

/// A witness w in f(R) together with its two projections.
struct LiftWitness {
  FValue w;
  FValue left;   ///< f(pi_1)(w)
  FValue right;  ///< f(pi_2)(w)
};

/// (u, v) in Rel_<=(f)(r) = { (u, v) | exists w in f(R). u <= f(pi_1)(w), f(pi_2)(w) <= v }.
///
/// Decided through the equivalent composite <= ; Rel(f)(r) ; <=, which
/// enumerates f(domain) and f(codomain) instead of f(R).
bool rel_lift_ordered(const FunctorExpr& f, const OrderSpec& ord, const Relation& r, const FValue& u,
                      const FValue& v, const Limits& limits = {});

/// Same relation decided literally: enumerate f(R) (states are the pairs
/// of `r`) and return the first witness, or nullopt.
std::optional<LiftWitness> rel_lift_ordered_witness(const FunctorExpr& f, const OrderSpec& ord,
                                                    const Relation& r, const FValue& u, const FValue& v,
                                                    const Limits& limits = {});

/// The carrier whose elements are the pairs of `r`, and the two projections.
struct PairCarrier {
  Carrier carrier;
  std::vector<std::string> first;
  std::vector<std::string> second;
};
PairCarrier pair_carrier(const Relation& r);

}  // namespace colift
