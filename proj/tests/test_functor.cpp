#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "colift/error.hpp"
#include "colift/functor.hpp"
#include "support.hpp"

using namespace colift;
using namespace colift::testing;

namespace {

// Counts f(x) by building every value from its parts, without the library's count formula.
std::uint64_t brute_count(const FunctorExpr& f, std::size_t n, std::size_t max_len) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return n;
    case FunctorKind::Const:
      return f.set().size();
    case FunctorKind::Prod:
      return brute_count(f.left(), n, max_len) * brute_count(f.right(), n, max_len);
    case FunctorKind::Coprod:
      return brute_count(f.left(), n, max_len) + brute_count(f.right(), n, max_len);
    case FunctorKind::Exp: {
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < f.set().size(); ++i) total *= brute_count(f.base(), n, max_len);
      return total;
    }
    case FunctorKind::Pow:
      return std::uint64_t{1} << brute_count(f.base(), n, max_len);
    case FunctorKind::Seq: {
      std::uint64_t total = 0, power = 1;
      const std::uint64_t b = brute_count(f.base(), n, max_len);
      for (std::size_t len = 0; len <= max_len; ++len, power *= b) total += power;
      return total;
    }
  }
  return 0;
}

}  // namespace

TEST(Carrier, RejectsDuplicatesAndFindsIds) {
  EXPECT_THROW(Carrier("S", {"a", "a"}), ValidationError);
  EXPECT_THROW(Carrier("S", {""}), ValidationError);
  const Carrier c("S", {"a", "b"});
  EXPECT_EQ(c.require("b"), 1u);
  EXPECT_FALSE(c.contains("z"));
  EXPECT_THROW(c.require("z"), ValidationError);
  EXPECT_LT(compare_ids("x2", "x10"), 0);
}

TEST(Validate, Examples) {
  const Carrier x = xs(2);
  EXPECT_TRUE(validate_value(FunctorExpr::id(), x, st("x1")));
  EXPECT_FALSE(validate_value(pow_id(), x, FValue::set({st("x1"), st("y9")})));
  const Carrier ap("AP", {"p"});
  const FunctorExpr kripke = FunctorExpr::product(FunctorExpr::powerset(FunctorExpr::constant(ap)), pow_id());
  EXPECT_TRUE(validate_value(kripke, x, FValue::pair(FValue::set({FValue::constant("p")}), FValue::set({}))));
  // a bare state where a set is expected
  EXPECT_FALSE(validate_value(pow_id(), x, st("x1")));
  EXPECT_THROW(require_value(pow_id(), x, st("x1")), ValidationError);
  // an exponent missing a key
  const FunctorExpr e = FunctorExpr::exponent(FunctorExpr::id(), set_a());
  EXPECT_FALSE(validate_value(e, x, FValue::function({{"a1", st("x1")}})));
  EXPECT_TRUE(validate_value(e, x, FValue::function({{"a1", st("x1")}, {"a2", st("x2")}})));
}

TEST(Enumerate, Examples) {
  const auto pow = enumerate_values(pow_id(), xs(2));
  const std::vector<FValue> expected = {set_of({}), set_of({"x1"}), set_of({"x2"}), set_of({"x1", "x2"})};
  EXPECT_EQ(pow, expected);

  const Carrier a1("S", {"a"});
  const auto prod = enumerate_values(FunctorExpr::product(FunctorExpr::id(), FunctorExpr::id()), a1);
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod[0], FValue::pair(st("a"), st("a")));

  // |X|^|A| = 3^2
  EXPECT_EQ(enumerate_values(FunctorExpr::exponent(FunctorExpr::id(), set_a()), xs(3)).size(), 9u);
}

TEST(Enumerate, MatchesCountsAndIsDuplicateFree) {
  Limits limits;
  for (const auto& f : pool()) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const Carrier x = xs(n);
      const auto values = enumerate_values(f, x, limits);
      const std::uint64_t expected = brute_count(f, n, limits.max_seq_length);
      EXPECT_EQ(values.size(), expected) << f.to_string() << " n=" << n;
      EXPECT_EQ(cardinality(f, x, limits), expected) << f.to_string();
      EXPECT_EQ(std::set<FValue>(values.begin(), values.end()).size(), values.size()) << f.to_string();
      for (const auto& v : values) EXPECT_TRUE(validate_value(f, x, v)) << f.to_string() << " " << v.to_string();
    }
  }
}

TEST(Enumerate, GuardThrows) {
  Limits tight;
  tight.guard = 10;
  EXPECT_THROW(enumerate_values(FunctorExpr::powerset(pow_id()), xs(3), tight), EnumerationTooLarge);
  try {
    enumerate_values(FunctorExpr::powerset(pow_id()), xs(3), tight);
  } catch (const EnumerationTooLarge& e) {
    EXPECT_EQ(e.cardinality(), 256u);
    EXPECT_EQ(e.guard(), 10u);
  }
  // the count saturates instead of overflowing
  FunctorExpr big = pow_id();
  for (int i = 0; i < 4; ++i) big = FunctorExpr::powerset(big);
  EXPECT_EQ(cardinality(big, xs(3)), UINT64_MAX);
}

TEST(Value, Equality) {
  EXPECT_EQ(set_of({"a", "b"}), set_of({"b", "a"}));
  EXPECT_EQ(set_of({"a", "a"}), set_of({"a"}));
  EXPECT_NE(FValue::list({st("a"), st("b")}), FValue::list({st("b"), st("a")}));
  EXPECT_NE(FValue::inl(st("a")), FValue::inr(st("a")));
  EXPECT_EQ(FValue::function({{"k2", st("a")}, {"k1", st("b")}}), FValue::function({{"k1", st("b")}, {"k2", st("a")}}));
  EXPECT_THROW(FValue::function({{"k", st("a")}, {"k", st("b")}}), ValidationError);
  EXPECT_TRUE(set_of({"x1", "x2"}).has_member(st("x2")));
}

TEST(Fmap, IdentityAndComposition) {
  Rng rng(3);
  const Carrier x = xs(3);
  auto id = [](const std::string& s) { return s; };
  auto g = [](const std::string& s) { return s == "x3" ? std::string("x1") : s; };
  auto h = [](const std::string& s) { return s == "x1" ? std::string("x2") : s; };
  for (const auto& f : pool()) {
    for (int i = 0; i < 10; ++i) {
      const FValue v = random_value(f, x, rng);
      EXPECT_EQ(fmap(f, v, id), v);
      EXPECT_EQ(fmap(f, fmap(f, v, g), h), fmap(f, v, [&](const std::string& s) { return h(g(s)); }));
    }
  }
  // sets collapse under a non-injective map
  EXPECT_EQ(fmap(pow_id(), set_of({"x1", "x3"}), g), set_of({"x1"}));
}

TEST(Functor, ShapeQueries) {
  const FunctorExpr f = FunctorExpr::product(FunctorExpr::constant(set_a()), pow_id());
  EXPECT_EQ(f.depth(), 3u);
  EXPECT_TRUE(f.contains(FunctorKind::Pow));
  EXPECT_FALSE(f.contains(FunctorKind::Seq));
  EXPECT_EQ(f, FunctorExpr::product(FunctorExpr::constant(set_a()), pow_id()));
  EXPECT_NE(f, pow_id());
  EXPECT_EQ(pool().size(), 16u);
  for (const auto& g : pool()) EXPECT_LE(g.depth(), 2u);
}

TEST(Coalgebra, ValidatesImages) {
  EXPECT_THROW(Coalgebra(xs(2), pow_id(), {set_of({"x1"})}), ValidationError);
  EXPECT_THROW(Coalgebra(xs(1), pow_id(), {st("x1")}), ValidationError);
  const Coalgebra c(xs(1), pow_id(), {set_of({"x1"})});
  EXPECT_EQ(c.at("x1"), set_of({"x1"}));
  const Coalgebra empty(Carrier("E", {}), pow_id(), {});
  EXPECT_EQ(empty.states().size(), 0u);
}
