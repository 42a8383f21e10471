#include <gtest/gtest.h>

#include "colift/error.hpp"
#include "colift/logic.hpp"
#include "colift/simulation.hpp"
#include "support.hpp"

using namespace colift;
using namespace colift::testing;

namespace {

using Mask = std::uint64_t;

// Semantics over Pow(Id) computed by brute force over all subsets.
struct Oracle {
  const Coalgebra& c;
  const std::map<std::string, Predicate>& preds;

  Mask full() const { return (Mask{1} << c.states().size()) - 1; }
  Mask succ(std::size_t x) const {
    Mask m = 0;
    for (const auto& s : c(x).items()) m |= Mask{1} << c.states().require(s.id());
    return m;
  }
  Mask next(Mask p) const {
    Mask out = 0;
    for (std::size_t x = 0; x < c.states().size(); ++x)
      if ((succ(x) & ~p) == 0) out |= Mask{1} << x;
    return out;
  }
  Mask always(Mask p) const {
    Mask out = 0;
    for (Mask s = 0; s <= full(); ++s)
      if ((s & ~p) == 0 && (s & ~next(s)) == 0) out |= s;
    return out;
  }
  Mask until(Mask a, Mask b) const {
    Mask out = full();
    for (Mask s = 0; s <= full(); ++s) {
      const Mask step = b | (a & ~next(~s & full()));
      if ((step & ~s) == 0) out &= s;
    }
    return out;
  }
  Mask eval(const Formula& f) const {
    switch (f.op()) {
      case Op::Pred: {
        Mask m = 0;
        const Predicate& p = preds.at(f.name());
        for (std::size_t i = 0; i < p.carrier().size(); ++i)
          if (p.contains(i)) m |= Mask{1} << i;
        return m;
      }
      case Op::Not:
        return ~eval(f.child(0)) & full();
      case Op::And:
        return eval(f.child(0)) & eval(f.child(1));
      case Op::Or:
        return eval(f.child(0)) | eval(f.child(1));
      case Op::Implies:
        return (~eval(f.child(0)) | eval(f.child(1))) & full();
      case Op::Next:
        return next(eval(f.child(0)));
      case Op::Always:
        return always(eval(f.child(0)));
      case Op::Eventually:
        return ~always(~eval(f.child(0)) & full()) & full();
      case Op::Until:
        return until(eval(f.child(0)), eval(f.child(1)));
      default:
        throw std::logic_error("oracle: unsupported");
    }
  }
};

Mask to_mask(const Predicate& p) {
  Mask m = 0;
  for (std::size_t i = 0; i < p.carrier().size(); ++i)
    if (p.contains(i)) m |= Mask{1} << i;
  return m;
}

const std::set<Op> kAll = {Op::Not, Op::And, Op::Or, Op::Implies, Op::Next, Op::Always, Op::Eventually, Op::Until};

EvalEnv ev_env() {
  EvalEnv env;
  env.predicates.emplace("Q", Predicate(ys(2), {"y2"}));
  env.predicates.emplace("Empty", Predicate(xs(2)));
  env.relations.emplace("R", Relation(xs(2), ys(2), {{"x1", "y1"}}));
  return env;
}

}  // namespace

TEST(Images, Examples) {
  const Relation r1(xs(2), ys(2), {{"x1", "y2"}});
  EXPECT_EQ(inverse_image(r1, Predicate(ys(2), {"y2"})), Predicate(xs(2), {"x1"}));
  const Relation r2(xs(2), ys(2), {{"x1", "y1"}});
  EXPECT_TRUE(inverse_image(r2, Predicate(ys(2), {"y2"})).empty());
  EXPECT_TRUE(inverse_image(r1, Predicate(ys(2))).empty());
  EXPECT_TRUE(direct_image(r1, Predicate(xs(2))).empty());
  EXPECT_EQ(direct_image(r1, Predicate::full(xs(2))), Predicate(ys(2), {"y2"}));
}

TEST(ImageFormula, Examples) {
  const Formula phi = Formula::next(Formula::pred("P"));
  const Formula inv = image_formula(phi, RelationRef{"R"}, Direction::Inverse);
  EXPECT_EQ(inv, Formula::next(Formula::image("P", "R", Direction::Inverse)));
  EXPECT_EQ(inv.to_string(), "X R^-1[P]");
  // the direct image along R is the inverse image along R^-1, and vice versa
  const Formula direct = image_formula(phi, RelationRef{"R"}, Direction::Direct);
  EXPECT_EQ(direct, image_formula(phi, RelationRef{"R"}.inverse(), Direction::Inverse));
  EXPECT_EQ(inv, image_formula(phi, RelationRef{"R"}.inverse(), Direction::Direct));
  EXPECT_THROW(image_formula(Formula::atom("p"), RelationRef{"R"}, Direction::Direct), NotApplicable);
  EXPECT_THROW(image_formula(inv, RelationRef{"R"}, Direction::Direct), NotApplicable);
}

TEST(Eval, Counterexamples) {
  const Coalgebra c1 = pow_system(xs(2), {{"x1", "x2"}, {"x2"}});
  const Coalgebra d1 = pow_system(ys(2), {{"y2"}, {"y2"}});
  EvalEnv env;
  env.predicates.emplace("P", Predicate(ys(2), {"y2"}));
  env.relations.emplace("R", Relation(xs(2), ys(2), {{"x1", "y2"}}));
  const Formula phi = Formula::next(Formula::pred("P"));
  EXPECT_TRUE(satisfies(d1, "y2", phi, env));
  EXPECT_FALSE(satisfies(c1, "x1", image_formula(phi, RelationRef{"R"}, Direction::Inverse), env));

  const Coalgebra c2 = pow_system(xs(2), {{"x1"}, {"x2"}});
  const Coalgebra d2 = pow_system(ys(2), {{"y1", "y2"}, {"y2"}});
  const EvalEnv env2 = ev_env();
  EXPECT_TRUE(satisfies(d2, "y1", Formula::eventually(Formula::pred("Q")), env2));
  EXPECT_TRUE(eval(c2, Formula::eventually(Formula::pred("Empty")), env2).empty());
  EXPECT_TRUE(eval(c2, Formula::eventually(Formula::image("Q", "R", Direction::Inverse)), env2).empty());
}

TEST(Eval, Errors) {
  const Coalgebra c = pow_system(xs(2), {{"x1"}, {"x2"}});
  EXPECT_THROW(eval(c, Formula::pred("Nope")), ConfigError);
  EXPECT_THROW(eval(c, Formula::atom("p")), ConfigError);
  EvalEnv env;
  env.predicates.emplace("Q", Predicate(ys(2)));
  EXPECT_THROW(eval(c, Formula::pred("Q"), env), ValidationError);
}

TEST(Eval, EmptyStateSpace) {
  const Coalgebra c(Carrier("E", {}), pow_id(), {});
  EvalEnv env;
  env.predicates.emplace("P", Predicate(Carrier("E", {})));
  for (const auto& text : {"P", "G P", "F !P", "P U !P", "X P"}) {
    EXPECT_TRUE(eval(c, parse_formula(text, {"P"}), env).empty()) << text;
  }
}

TEST(AlwaysOracle, Examples) {
  const Coalgebra c = pow_system(xs(2), {{"x1"}, {"x2"}});
  EXPECT_TRUE(always_oracle(c, Predicate::full(xs(2)), 0));
  EXPECT_TRUE(always_oracle(c, Predicate(xs(2), {"x1"}), 0));
  const Coalgebra d = pow_system(ys(2), {{"y1", "y2"}, {"y2"}});
  EXPECT_FALSE(always_oracle(d, Predicate(ys(2), {"y1"}), 0));
}

TEST(Eval, AlwaysMatchesInvariantSearch) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const FunctorExpr f = rng.pick(pool());
    const Coalgebra c = random_coalgebra(f, xs(1 + rng.below(4)), rng);
    const std::size_t n = c.states().size();
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      EvalEnv env;
      env.predicates.emplace("P", Predicate::from_mask(c.states(), m));
      const Predicate box = eval(c, Formula::always(Formula::pred("P")), env);
      for (std::size_t x = 0; x < n; ++x)
        ASSERT_EQ(box.contains(x), always_oracle(c, env.predicates.at("P"), x)) << f.to_string();
    }
  }
}

TEST(Eval, MatchesSubsetEnumerationOnPowId) {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Coalgebra c = random_coalgebra(pow_id(), xs(1 + rng.below(4)), rng);
    std::map<std::string, Predicate> preds = {{"P", random_predicate(c.states(), rng)},
                                              {"Q", random_predicate(c.states(), rng)}};
    const EvalEnv env{preds, {}};
    const Oracle oracle{c, preds};
    for (int i = 0; i < 10; ++i) {
      const Formula phi = random_formula(rng, 4, kAll, {Formula::pred("P"), Formula::pred("Q")});
      ASSERT_EQ(to_mask(eval(c, phi, env)), oracle.eval(phi)) << phi.to_string();
    }
  }
}

TEST(Eval, FixedPointEquations) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const FunctorExpr f = rng.pick(pool());
    const Coalgebra c = random_coalgebra(f, xs(1 + rng.below(4)), rng);
    const EvalEnv env{{{"P", random_predicate(c.states(), rng)}, {"Q", random_predicate(c.states(), rng)}}, {}};
    const Formula p = Formula::pred("P"), q = Formula::pred("Q");
    const Predicate box = eval(c, Formula::always(p), env);
    EXPECT_EQ(box, env.predicates.at("P").intersect(next_set(c, box)));
    EXPECT_EQ(eval(c, Formula::eventually(p), env), eval(c, Formula::always(Formula::negation(p)), env).complement());
    const Predicate u = eval(c, Formula::until(p, q), env);
    auto step = [&](const Predicate& s) {
      return env.predicates.at("Q").unite(env.predicates.at("P").intersect(next_set(c, s.complement()).complement()));
    };
    EXPECT_EQ(step(u), u);
    // no strictly smaller fixed point
    const std::size_t n = c.states().size();
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      const Predicate s = Predicate::from_mask(c.states(), m);
      if (s.subset_of(u) && s != u) EXPECT_NE(step(s), s);
    }
  }
}

TEST(Eval, MonotoneConnectives) {
  Rng rng(43);
  const std::set<Op> positive = {Op::And, Op::Or, Op::Next, Op::Always, Op::Eventually, Op::Until};
  for (int trial = 0; trial < 60; ++trial) {
    const FunctorExpr f = rng.pick(pool());
    const Coalgebra c = random_coalgebra(f, xs(1 + rng.below(3)), rng);
    const Predicate small = random_predicate(c.states(), rng);
    const Predicate large = small.unite(random_predicate(c.states(), rng));
    const Formula phi = random_formula(rng, 3, positive, {Formula::pred("P")});
    const Predicate lo = eval(c, phi, EvalEnv{{{"P", small}}, {}});
    const Predicate hi = eval(c, phi, EvalEnv{{{"P", large}}, {}});
    EXPECT_TRUE(lo.subset_of(hi)) << phi.to_string();
  }
}

TEST(Eval, AtomsUseNu) {
  const Carrier ap("AP", {"p", "q"});
  const FunctorExpr f = FunctorExpr::product(FunctorExpr::powerset(FunctorExpr::constant(ap)), pow_id());
  auto node = [&](std::vector<std::string> labels, std::vector<std::string> succ) {
    std::vector<FValue> ls;
    for (auto& l : labels) ls.push_back(FValue::constant(l));
    return FValue::pair(FValue::set(std::move(ls)), set_of(std::move(succ)));
  };
  const Coalgebra c(xs(2), f, {node({"p"}, {"x2"}), node({"q"}, {"x2"})});
  const NatTrans nu = NatTrans::kripke_projection(f, ap);
  EXPECT_EQ(eval(c, Formula::atom("p"), {}, &nu), Predicate(xs(2), {"x1"}));
  EXPECT_EQ(eval(c, parse_formula("X q", {}, {"p", "q"}), {}, &nu), Predicate::full(xs(2)));
  EXPECT_EQ(eval(c, parse_formula("p U q", {}, {"p", "q"}), {}, &nu), Predicate::full(xs(2)));
  EXPECT_EQ(eval(c, parse_formula("G !p", {}, {"p", "q"}), {}, &nu), Predicate(xs(2), {"x2"}));
}

TEST(Parse, SyntaxAndPrecedence) {
  const std::set<std::string> preds = {"P", "Q"};
  const std::set<std::string> ap = {"p"};
  const Formula p = Formula::pred("P"), q = Formula::pred("Q");
  EXPECT_EQ(parse_formula("P | Q & P", preds), Formula::disj(p, Formula::conj(q, p)));
  EXPECT_EQ(parse_formula("P -> Q -> P", preds), Formula::implies(p, Formula::implies(q, p)));
  EXPECT_EQ(parse_formula("P U Q U P", preds), Formula::until(p, Formula::until(q, p)));
  EXPECT_EQ(parse_formula("!P & Q", preds), Formula::conj(Formula::negation(p), q));
  EXPECT_EQ(parse_formula("X F G P", preds), Formula::next(Formula::eventually(Formula::always(p))));
  EXPECT_EQ(parse_formula("[] <> P", preds), Formula::always(Formula::eventually(p)));
  EXPECT_EQ(parse_formula("not next P and Q", preds), Formula::conj(Formula::negation(Formula::next(p)), q));
  EXPECT_EQ(parse_formula("(P || Q) && p", preds, ap), Formula::conj(Formula::disj(p, q), Formula::atom("p")));
  EXPECT_EQ(parse_formula("P until Q", preds), Formula::until(p, q));
}

TEST(Parse, RoundTripsThroughText) {
  Rng rng(47);
  const std::set<std::string> preds = {"P", "Q"};
  for (int i = 0; i < 200; ++i) {
    const Formula phi = random_formula(rng, 4, kAll, {Formula::pred("P"), Formula::pred("Q")});
    EXPECT_EQ(parse_formula(phi.to_string(), preds), phi) << phi.to_string();
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("P &", {"P"}), ParseError);
  EXPECT_THROW(parse_formula("Z", {"P"}), ConfigError);
  try {
    parse_formula("P &\n  ) ", {"P"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Formula, Queries) {
  const Formula phi = parse_formula("G (P -> X !Q)", {"P", "Q"});
  EXPECT_EQ(phi.depth(), 5u);
  EXPECT_TRUE(phi.contains(Op::Implies));
  EXPECT_FALSE(phi.negation_free());
  EXPECT_EQ(phi.predicate_names(), (std::set<std::string>{"P", "Q"}));
  EXPECT_TRUE(parse_formula("F P", {"P"}).negation_free());
}
