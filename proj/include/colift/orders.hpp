#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colift/functor.hpp"
#include "colift/lifting.hpp"

namespace colift {

/// A preorder on one finite set, as an adjacency matrix.
class BasePreorder {
 public:
  BasePreorder() = default;
  static BasePreorder equality(Carrier set);
  static BasePreorder total(Carrier set);
  /// Throws ValidationError unless the pairs form a reflexive, transitive relation.
  static BasePreorder from_pairs(Carrier set, const std::vector<std::pair<std::string, std::string>>& pairs);

  const Carrier& set() const noexcept { return set_; }
  bool leq(std::size_t a, std::size_t b) const { return rel_[a * set_.size() + b]; }
  bool leq(std::string_view a, std::string_view b) const;
  std::vector<std::pair<std::string, std::string>> pairs() const;
  bool is_equality() const;

  friend bool operator==(const BasePreorder&, const BasePreorder&) = default;

 private:
  BasePreorder(Carrier set, std::vector<bool> rel) : set_(std::move(set)), rel_(std::move(rel)) {}
  Carrier set_;
  std::vector<bool> rel_;
};

/// An order relation declared pair by pair on f(carrier) for one carrier.
struct ExtensionalScope {
  Carrier carrier;
  std::vector<std::pair<FValue, FValue>> pairs;
};

/// A functorial (pre)order on F-values.
///
/// Kinds: equality; an explicit pair list per carrier; the structural
/// assembly of the Order class (per-constructor clauses over base
/// preorders on the constant sets); subset or superset on a top-level
/// powerset. Any of these can be flipped with opposite().
class OrderSpec {
 public:
  enum class Kind { Equality, Extensional, Structural, PowSubset, PowSupset };

  static OrderSpec equality(FunctorExpr f);
  /// Throws ValidationError unless f is a powerset.
  static OrderSpec pow_subset(FunctorExpr f);
  static OrderSpec pow_supset(FunctorExpr f);
  /// Validates every pair against (f, scope.carrier).
  static OrderSpec extensional(FunctorExpr f, std::vector<ExtensionalScope> scopes);

  Kind kind() const noexcept { return kind_; }
  const FunctorExpr& functor() const noexcept { return functor_; }
  bool is_opposite() const noexcept { return opposite_; }
  OrderSpec opposite() const;

  /// Base preorders of a Structural order, keyed by constant-set name.
  const std::map<std::string, BasePreorder>& bases() const noexcept { return bases_; }
  std::span<const ExtensionalScope> scopes() const noexcept { return scopes_; }

  std::string describe() const;

 private:
  friend OrderSpec build_order_class(const FunctorExpr& f, const std::map<std::string, BasePreorder>& bases);
  friend bool leq(const OrderSpec& ord, const Carrier& carrier, const FValue& u, const FValue& v);

  OrderSpec(Kind kind, FunctorExpr f) : kind_(kind), functor_(std::move(f)) {}

  Kind kind_ = Kind::Equality;
  FunctorExpr functor_;
  bool opposite_ = false;
  std::map<std::string, BasePreorder> bases_;
  std::vector<ExtensionalScope> scopes_;
  std::vector<std::set<std::pair<FValue, FValue>>> lookup_;  // parallel to scopes_
};

/// u <= v under `ord`, for values over `carrier`. Throws ConfigError when
/// an extensional order is queried on a carrier it does not declare.
bool leq(const OrderSpec& ord, const Carrier& carrier, const FValue& u, const FValue& v);

/// The Order-class order for f: constants ordered by `bases` (equality when
/// absent), identity by equality, product and exponent componentwise,
/// coproduct by matching injections, powerset by the two-sided clause.
/// Throws UnsupportedConstructor on a sequence node.
OrderSpec build_order_class(const FunctorExpr& f, const std::map<std::string, BasePreorder>& bases = {});

template <class Witness>
struct Verdict {
  std::optional<Witness> counterexample;
  bool holds() const noexcept { return !counterexample.has_value(); }
  explicit operator bool() const noexcept { return holds(); }
};

struct PreorderViolation {
  bool reflexivity = true;  ///< false: transitivity (a <= b <= c but not a <= c)
  FValue a, b, c;
};

struct ClosureViolation {
  FValue smaller, larger;  ///< smaller <= larger
  Predicate predicate;     ///< membership does not transfer for this P
};

struct NaturalityViolation {
  Carrier from, to;
  std::vector<std::string> mapping;  ///< image of each element of `from`
  FValue value;                      ///< u in F(from)
  Predicate before;                  ///< nu(u)
  Predicate after;                   ///< nu(F(g)(u))
};

struct NaturalOrderViolation {
  FValue smaller, larger;
  Predicate nu_smaller, nu_larger;
};

Verdict<PreorderViolation> is_preorder(const OrderSpec& ord, const Carrier& carrier, const Limits& limits = {});

/// a <= b and b in Pred(F)(P) imply a in Pred(F)(P), for every P subset of carrier.
Verdict<ClosureViolation> is_down_closed(const OrderSpec& ord, const Carrier& carrier, const Limits& limits = {});
/// a <= b and a in Pred(F)(P) imply b in Pred(F)(P).
Verdict<ClosureViolation> is_up_closed(const OrderSpec& ord, const Carrier& carrier, const Limits& limits = {});

/// One concrete table of a natural transformation on a single carrier.
struct NuTable {
  Carrier carrier;
  std::vector<std::pair<FValue, Predicate>> entries;
};

/// A natural transformation nu : F => P(AP).
class NatTrans {
 public:
  enum class Kind { KripkeProj, KripkeComplement, Table };

  /// Source must be P(AP) x G; nu(A, _) = A.
  static NatTrans kripke_projection(FunctorExpr source, Carrier ap);
  /// Source must be P(AP) x G; nu(A, _) = AP \ A.
  static NatTrans kripke_complement(FunctorExpr source, Carrier ap);
  static NatTrans table(FunctorExpr source, Carrier ap, std::vector<NuTable> tables);

  Kind kind() const noexcept { return kind_; }
  const FunctorExpr& source() const noexcept { return source_; }
  const Carrier& ap() const noexcept { return ap_; }
  std::span<const NuTable> tables() const noexcept { return tables_; }
  std::string describe() const;

 private:
  friend Predicate apply_nu(const NatTrans& nu, const Carrier& carrier, const FValue& u);
  NatTrans(Kind kind, FunctorExpr source, Carrier ap)
      : kind_(kind), source_(std::move(source)), ap_(std::move(ap)) {}

  Kind kind_;
  FunctorExpr source_;
  Carrier ap_;
  std::vector<NuTable> tables_;
};

/// nu_X(u) as a predicate over AP. Throws ConfigError on a table miss.
Predicate apply_nu(const NatTrans& nu, const Carrier& carrier, const FValue& u);

/// Falsifies naturality: for every ordered pair of the given carriers and
/// every function g between them (exhaustive when the domain has at most
/// three elements and the count fits the guard, otherwise a fixed-seed
/// sample), checks nu(F(g)(u)) = nu(u) for all u. A pass is evidence, not proof.
Verdict<NaturalityViolation> check_naturality(const NatTrans& nu, std::span<const Carrier> carriers,
                                              const Limits& limits = {});

/// u <= u' implies nu(u') subset of nu(u).
Verdict<NaturalOrderViolation> is_down_natural(const OrderSpec& ord, const NatTrans& nu, const Carrier& carrier,
                                               const Limits& limits = {});
/// u <= u' implies nu(u) subset of nu(u').
Verdict<NaturalOrderViolation> is_up_natural(const OrderSpec& ord, const NatTrans& nu, const Carrier& carrier,
                                             const Limits& limits = {});

}  // namespace colift
