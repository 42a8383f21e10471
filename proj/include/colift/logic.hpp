#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "colift/functor.hpp"
#include "colift/lifting.hpp"
#include "colift/orders.hpp"

namespace colift {

enum class Op { Pred, Atom, Not, And, Or, Implies, Next, Eventually, Always, Until, Image };

enum class Direction { Direct, Inverse };

/// A relation by name, optionally read backwards.
struct RelationRef {
  std::string name;
  bool inverted = false;
  RelationRef inverse() const { return {name, !inverted}; }
};

/// Temporal-logic formula; an immutable syntax tree.
class Formula {
 public:
  static Formula pred(std::string name);
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula eventually(Formula f);
  static Formula always(Formula f);
  static Formula until(Formula a, Formula b);
  /// The predicate `name` pushed through relation `relation` in `dir`.
  static Formula image(std::string name, std::string relation, Direction dir);

  Op op() const noexcept;
  /// Predicate, atom or imaged predicate name.
  const std::string& name() const;
  const std::string& relation() const;
  Direction direction() const;
  std::size_t arity() const noexcept;
  const Formula& child(std::size_t i) const;

  std::size_t depth() const;
  bool contains(Op op) const;
  /// No Not and no Implies (which hides one).
  bool negation_free() const { return !contains(Op::Not) && !contains(Op::Implies); }
  /// Names of the predicates and imaged predicates mentioned.
  std::set<std::string> predicate_names() const;
  std::set<std::string> atom_names() const;

  /// Text syntax accepted by parse_formula (image nodes print as R[P] and R^-1[P]).
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  static std::shared_ptr<Node> make_node(Op op, std::string name = {});
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// {y | exists x in p with x r y}.
Predicate direct_image(const Relation& r, const Predicate& p);
/// {x | exists y in p with x r y}.
Predicate inverse_image(const Relation& r, const Predicate& p);

/// Replaces every predicate P by its image along `r` in `dir`. Direct over
/// an inverted relation is stored as inverse over the plain one, so
/// image_formula(phi, R^-1, Direct) == image_formula(phi, R, Inverse).
/// Throws NotApplicable on atoms or nested images.
Formula image_formula(const Formula& phi, const RelationRef& r, Direction dir);

struct EvalEnv {
  std::map<std::string, Predicate> predicates;
  std::map<std::string, Relation> relations;
};

/// The states of c satisfying phi. `nu` gives atoms their meaning and may be
/// null for atom-free formulas. Throws ConfigError on unresolved names.
Predicate eval(const Coalgebra& c, const Formula& phi, const EvalEnv& env = {}, const NatTrans* nu = nullptr);

bool satisfies(const Coalgebra& c, std::string_view state, const Formula& phi, const EvalEnv& env = {},
               const NatTrans* nu = nullptr);

/// {x | c(x) in Pred(F)(p)}.
Predicate next_set(const Coalgebra& c, const Predicate& p);

/// Whether some invariant Q with Q subset of p contains x, by enumerating
/// every subset of the state space.
bool always_oracle(const Coalgebra& c, const Predicate& p, std::size_t x, const Limits& limits = {});

/// Parses the text syntax. Identifiers found in `predicates` become
/// predicate references, identifiers in `ap` become atoms, anything else is
/// a ConfigError.
///
///   phi ::= phi -> phi | phi '|' phi | phi & phi | phi U phi
///         | !phi | X phi | F phi | G phi | (phi) | name
///
/// Keyword spellings: not, next, eventually/<>, always/[], until.
/// Precedence from loosest: ->, |, &, U, prefix operators.
Formula parse_formula(std::string_view text, const std::set<std::string>& predicates,
                      const std::set<std::string>& ap = {});

}  // namespace colift
