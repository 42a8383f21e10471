#include "colift/logic.hpp"

#include <cctype>
#include <stdexcept>

#include "colift/error.hpp"
#include "colift/simulation.hpp"

namespace colift {

struct Formula::Node {
  Op op;
  std::string name;
  std::string relation;
  Direction direction = Direction::Direct;
  std::vector<Formula> children;
};

std::shared_ptr<Formula::Node> Formula::make_node(Op op, std::string name) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  return n;
}

Formula Formula::pred(std::string name) { return Formula(make_node(Op::Pred, std::move(name))); }
Formula Formula::atom(std::string name) { return Formula(make_node(Op::Atom, std::move(name))); }

Formula Formula::negation(Formula f) {
  auto n = make_node(Op::Not);
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = make_node(Op::And);
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = make_node(Op::Or);
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  auto n = make_node(Op::Implies);
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::next(Formula f) {
  auto n = make_node(Op::Next);
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::eventually(Formula f) {
  auto n = make_node(Op::Eventually);
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::always(Formula f) {
  auto n = make_node(Op::Always);
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::until(Formula a, Formula b) {
  auto n = make_node(Op::Until);
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::image(std::string name, std::string relation, Direction dir) {
  auto n = make_node(Op::Image, std::move(name));
  n->relation = std::move(relation);
  n->direction = dir;
  return Formula(std::move(n));
}

Op Formula::op() const noexcept { return node_->op; }

const std::string& Formula::name() const {
  if (op() != Op::Pred && op() != Op::Atom && op() != Op::Image) {
    throw std::logic_error("Formula::name on a connective");
  }
  return node_->name;
}

const std::string& Formula::relation() const {
  if (op() != Op::Image) throw std::logic_error("Formula::relation on a non-image node");
  return node_->relation;
}

Direction Formula::direction() const {
  if (op() != Op::Image) throw std::logic_error("Formula::direction on a non-image node");
  return node_->direction;
}

std::size_t Formula::arity() const noexcept { return node_->children.size(); }

const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth());
  return d + 1;
}

bool Formula::contains(Op o) const {
  if (op() == o) return true;
  for (const auto& c : node_->children)
    if (c.contains(o)) return true;
  return false;
}

std::set<std::string> Formula::predicate_names() const {
  std::set<std::string> out;
  if (op() == Op::Pred || op() == Op::Image) out.insert(node_->name);
  for (const auto& c : node_->children) out.merge(c.predicate_names());
  return out;
}

std::set<std::string> Formula::atom_names() const {
  std::set<std::string> out;
  if (op() == Op::Atom) out.insert(node_->name);
  for (const auto& c : node_->children) out.merge(c.atom_names());
  return out;
}

std::string Formula::to_string() const {
  const auto& ch = node_->children;
  switch (op()) {
    case Op::Pred:
    case Op::Atom:
      return node_->name;
    case Op::Image:
      return node_->relation + (node_->direction == Direction::Inverse ? "^-1[" : "[") + node_->name + "]";
    case Op::Not:
      return "!" + ch[0].to_string();
    case Op::Next:
      return "X " + ch[0].to_string();
    case Op::Eventually:
      return "F " + ch[0].to_string();
    case Op::Always:
      return "G " + ch[0].to_string();
    case Op::And:
      return "(" + ch[0].to_string() + " & " + ch[1].to_string() + ")";
    case Op::Or:
      return "(" + ch[0].to_string() + " | " + ch[1].to_string() + ")";
    case Op::Implies:
      return "(" + ch[0].to_string() + " -> " + ch[1].to_string() + ")";
    case Op::Until:
      return "(" + ch[0].to_string() + " U " + ch[1].to_string() + ")";
  }
  return "?";
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.relation == y.relation && x.direction == y.direction &&
         x.children == y.children;
}

// ---------------------------------------------------------------------------
// Images

Predicate direct_image(const Relation& r, const Predicate& p) {
  if (!(p.carrier() == r.domain())) {
    throw ValidationError("predicate over '" + p.carrier().name() + "' cannot be imaged along a relation from '" +
                          r.domain().name() + "'");
  }
  Predicate out(r.codomain());
  for (const auto& [x, y] : r.pairs())
    if (p.contains(x)) out.insert(y);
  return out;
}

Predicate inverse_image(const Relation& r, const Predicate& p) { return direct_image(r.inverse(), p); }

Formula image_formula(const Formula& phi, const RelationRef& r, Direction dir) {
  switch (phi.op()) {
    case Op::Pred: {
      const bool inverse = (dir == Direction::Inverse) != r.inverted;
      return Formula::image(phi.name(), r.name, inverse ? Direction::Inverse : Direction::Direct);
    }
    case Op::Atom:
      throw NotApplicable("image formulas are defined over predicates only; atom '" + phi.name() +
                          "' is evaluated unchanged on both sides");
    case Op::Image:
      throw NotApplicable("formula already contains an image of '" + phi.name() + "'");
    case Op::Not:
      return Formula::negation(image_formula(phi.child(0), r, dir));
    case Op::Next:
      return Formula::next(image_formula(phi.child(0), r, dir));
    case Op::Eventually:
      return Formula::eventually(image_formula(phi.child(0), r, dir));
    case Op::Always:
      return Formula::always(image_formula(phi.child(0), r, dir));
    case Op::And:
      return Formula::conj(image_formula(phi.child(0), r, dir), image_formula(phi.child(1), r, dir));
    case Op::Or:
      return Formula::disj(image_formula(phi.child(0), r, dir), image_formula(phi.child(1), r, dir));
    case Op::Implies:
      return Formula::implies(image_formula(phi.child(0), r, dir), image_formula(phi.child(1), r, dir));
    case Op::Until:
      return Formula::until(image_formula(phi.child(0), r, dir), image_formula(phi.child(1), r, dir));
  }
  throw std::logic_error("image_formula: unknown operator");
}

// ---------------------------------------------------------------------------
// Semantics

Predicate next_set(const Coalgebra& c, const Predicate& p) {
  Predicate out(c.states());
  for (std::size_t x = 0; x < c.states().size(); ++x)
    if (pred_lift(c.functor(), p, c(x))) out.insert(x);
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const Coalgebra& c, const EvalEnv& env, const NatTrans* nu) : c_(c), env_(env), nu_(nu) {}

  Predicate operator()(const Formula& phi) const {
    switch (phi.op()) {
      case Op::Pred:
        return require_on_states(lookup(phi.name()), "predicate '" + phi.name() + "'");
      case Op::Image:
        return image(phi);
      case Op::Atom:
        return atom(phi.name());
      case Op::Not:
        return (*this)(phi.child(0)).complement();
      case Op::And:
        return (*this)(phi.child(0)).intersect((*this)(phi.child(1)));
      case Op::Or:
        return (*this)(phi.child(0)).unite((*this)(phi.child(1)));
      case Op::Implies:
        return (*this)(phi.child(0)).complement().unite((*this)(phi.child(1)));
      case Op::Next:
        return next_set(c_, (*this)(phi.child(0)));
      case Op::Always:
        return always((*this)(phi.child(0)));
      case Op::Eventually:
        return always((*this)(phi.child(0)).complement()).complement();
      case Op::Until:
        return until((*this)(phi.child(0)), (*this)(phi.child(1)));
    }
    throw std::logic_error("eval: unknown operator");
  }

 private:
  const Predicate& lookup(const std::string& name) const {
    auto it = env_.predicates.find(name);
    if (it == env_.predicates.end()) throw ConfigError("unknown predicate '" + name + "'");
    return it->second;
  }

  Predicate require_on_states(Predicate p, const std::string& what) const {
    if (!(p.carrier() == c_.states())) {
      throw ValidationError(what + " is over '" + p.carrier().name() + "' but the coalgebra's states are '" +
                            c_.states().name() + "'");
    }
    return p;
  }

  Predicate image(const Formula& phi) const {
    auto it = env_.relations.find(phi.relation());
    if (it == env_.relations.end()) throw ConfigError("unknown relation '" + phi.relation() + "'");
    const Predicate& p = lookup(phi.name());
    Predicate out = phi.direction() == Direction::Direct ? direct_image(it->second, p) : inverse_image(it->second, p);
    return require_on_states(std::move(out), "image " + phi.to_string());
  }

  Predicate atom(const std::string& name) const {
    if (nu_ == nullptr) throw ConfigError("atom '" + name + "' needs a natural transformation to evaluate");
    const std::size_t p = nu_->ap().require(name);
    Predicate out(c_.states());
    for (std::size_t x = 0; x < c_.states().size(); ++x)
      if (apply_nu(*nu_, c_.states(), c_(x)).contains(p)) out.insert(x);
    return out;
  }

  std::size_t bound() const { return c_.states().size() + 1; }

  // Greatest S with S = p & next(S), descending from all states.
  Predicate always(const Predicate& p) const {
    Predicate s = Predicate::full(c_.states());
    for (std::size_t i = 0; i <= bound(); ++i) {
      Predicate t = p.intersect(next_set(c_, s));
      if (t == s) return s;
      s = std::move(t);
    }
    throw std::logic_error("greatest fixed point did not stabilise within |X|+1 steps");
  }

  // Least S with S = q | (p & !next(!S)), ascending from the empty set.
  Predicate until(const Predicate& p, const Predicate& q) const {
    Predicate s(c_.states());
    for (std::size_t i = 0; i <= bound(); ++i) {
      Predicate t = q.unite(p.intersect(next_set(c_, s.complement()).complement()));
      if (t == s) return s;
      s = std::move(t);
    }
    throw std::logic_error("least fixed point did not stabilise within |X|+1 steps");
  }

  const Coalgebra& c_;
  const EvalEnv& env_;
  const NatTrans* nu_;
};

}  // namespace

Predicate eval(const Coalgebra& c, const Formula& phi, const EvalEnv& env, const NatTrans* nu) {
  Evaluator ev(c, env, nu);
  Predicate out = ev(phi);
  if (!(out.carrier() == c.states())) {
    throw ValidationError("formula " + phi.to_string() + " denotes a subset of '" + out.carrier().name() +
                          "', not of the states '" + c.states().name() + "'");
  }
  return out;
}

bool satisfies(const Coalgebra& c, std::string_view state, const Formula& phi, const EvalEnv& env,
               const NatTrans* nu) {
  const std::size_t x = c.states().require(state);
  return eval(c, phi, env, nu).contains(x);
}

bool always_oracle(const Coalgebra& c, const Predicate& p, std::size_t x, const Limits& limits) {
  const std::size_t n = c.states().size();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.guard) {
    throw EnumerationTooLarge(n >= 63 ? UINT64_MAX : std::uint64_t{1} << n, limits.guard,
                              "subsets of '" + c.states().name() + "'");
  }
  if (!p.contains(x)) return false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!((mask >> x) & 1U)) continue;
    Predicate q = Predicate::from_mask(c.states(), mask);
    if (q.subset_of(p) && is_invariant(c, q).holds) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

enum class Tok { Name, LParen, RParen, Not, And, Or, Implies, Next, Eventually, Always, Until, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool name_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_' || ch == '.' || ch == '\'';
}

Tok keyword(const std::string& word) {
  static const std::map<std::string, Tok, std::less<>> words = {
      {"X", Tok::Next},       {"next", Tok::Next},     {"F", Tok::Eventually}, {"eventually", Tok::Eventually},
      {"G", Tok::Always},     {"always", Tok::Always}, {"U", Tok::Until},      {"until", Tok::Until},
      {"not", Tok::Not},      {"and", Tok::And},       {"or", Tok::Or},
  };
  auto it = words.find(word);
  return it == words.end() ? Tok::Name : it->second;
}

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>& predicates, const std::set<std::string>& ap)
      : text_(text), predicates_(predicates), ap_(ap) {
    tokenize();
  }

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) error("unexpected '" + peek().text + "'", peek().offset);
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& what, std::size_t offset) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("formula: " + what, line, column);
  }

  void tokenize() {
    std::size_t i = 0;
    auto symbol = [&](std::string_view s) { return text_.substr(i, s.size()) == s; };
    while (i < text_.size()) {
      const char ch = text_[i];
      if (std::isspace(static_cast<unsigned char>(ch)) != 0) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      auto push = [&](Tok k, std::size_t len) {
        tokens_.push_back({k, std::string(text_.substr(start, len)), start});
        i += len;
      };
      if (symbol("->")) push(Tok::Implies, 2);
      else if (symbol("<>")) push(Tok::Eventually, 2);
      else if (symbol("[]")) push(Tok::Always, 2);
      else if (symbol("&&") || symbol("||")) push(ch == '&' ? Tok::And : Tok::Or, 2);
      else if (ch == '(') push(Tok::LParen, 1);
      else if (ch == ')') push(Tok::RParen, 1);
      else if (ch == '!' || ch == '~') push(Tok::Not, 1);
      else if (ch == '&') push(Tok::And, 1);
      else if (ch == '|') push(Tok::Or, 1);
      else if (name_char(ch)) {
        std::size_t j = i;
        while (j < text_.size() && name_char(text_[j])) ++j;
        std::string word(text_.substr(i, j - i));
        tokens_.push_back({keyword(word), word, start});
        i = j;
      } else {
        error(std::string("unexpected character '") + ch + "'", i);
      }
    }
    tokens_.push_back({Tok::End, "end of input", text_.size()});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      take();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      lhs = Formula::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = until();
    while (peek().kind == Tok::And) {
      take();
      lhs = Formula::conj(std::move(lhs), until());
    }
    return lhs;
  }

  Formula until() {
    Formula lhs = unary();
    if (peek().kind == Tok::Until) {
      take();
      return Formula::until(std::move(lhs), until());
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Not:
        return Formula::negation(unary());
      case Tok::Next:
        return Formula::next(unary());
      case Tok::Eventually:
        return Formula::eventually(unary());
      case Tok::Always:
        return Formula::always(unary());
      case Tok::LParen: {
        Formula f = implication();
        if (peek().kind != Tok::RParen) error("expected ')' but found '" + peek().text + "'", peek().offset);
        take();
        return f;
      }
      case Tok::Name:
        if (predicates_.contains(t.text)) return Formula::pred(t.text);
        if (ap_.contains(t.text)) return Formula::atom(t.text);
        throw ConfigError("formula mentions '" + t.text + "', which is neither a predicate nor an atomic proposition");
      default:
        error("expected a formula but found '" + t.text + "'", t.offset);
    }
  }

  std::string_view text_;
  const std::set<std::string>& predicates_;
  const std::set<std::string>& ap_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::set<std::string>& predicates,
                      const std::set<std::string>& ap) {
  return Parser(text, predicates, ap).parse();
}

}  // namespace colift
