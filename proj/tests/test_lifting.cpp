#include <gtest/gtest.h>

#include "colift/error.hpp"
#include "colift/lifting.hpp"
#include "colift/orders.hpp"
#include "support.hpp"

using namespace colift;
using namespace colift::testing;

namespace {

// Every relation between x and y, as bit masks.
std::vector<Relation> all_relations(const Carrier& x, const Carrier& y) {
  std::vector<Relation> out;
  const std::size_t cells = x.size() * y.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    Relation r(x, y);
    for (std::size_t k = 0; k < cells; ++k)
      if (mask >> k & 1) r.insert(k / y.size(), k % y.size());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<OrderSpec> orders_for(const FunctorExpr& f, Rng& rng) {
  std::vector<OrderSpec> out = {OrderSpec::equality(f)};
  if (!f.contains(FunctorKind::Seq)) {
    out.push_back(build_order_class(f, {{"A", random_preorder(set_a(), rng)}}));
    out.push_back(build_order_class(f, {{"A", BasePreorder::total(set_a())}}));
  }
  if (f.kind() == FunctorKind::Pow) {
    out.push_back(OrderSpec::pow_subset(f));
    out.push_back(OrderSpec::pow_supset(f));
  }
  return out;
}

}  // namespace

TEST(Relation, Basics) {
  const Relation r(xs(2), ys(2), {{"x1", "y2"}});
  EXPECT_TRUE(r.contains("x1", "y2"));
  EXPECT_FALSE(r.contains("x2", "y2"));
  EXPECT_EQ(r.size(), 1u);
  EXPECT_TRUE(r.inverse().contains("y2", "x1"));
  EXPECT_TRUE(r.subset_of(Relation::full(xs(2), ys(2))));
  EXPECT_EQ(Relation::diagonal(xs(3)).size(), 3u);
  EXPECT_THROW(Relation(xs(2), ys(2), {{"x1", "x1"}}), ValidationError);
  EXPECT_THROW(r.unite(Relation(ys(2), xs(2))), ValidationError);
}

TEST(Predicate, Basics) {
  const Predicate p(xs(3), {"x1", "x3"});
  EXPECT_EQ(p.members(), (std::vector<std::string>{"x1", "x3"}));
  EXPECT_EQ(p.complement(), Predicate(xs(3), {"x2"}));
  EXPECT_EQ(Predicate::from_mask(xs(3), 0b101), p);
  EXPECT_TRUE(Predicate(xs(3), {"x1"}).subset_of(p));
  EXPECT_EQ(diagonal(p).size(), 2u);
}

TEST(RelLift, Examples) {
  const Relation r(xs(2), ys(2), {{"x1", "y1"}});
  EXPECT_TRUE(rel_lift(pow_id(), r, set_of({"x1"}), set_of({"y1"})));
  EXPECT_TRUE(rel_lift(pow_id(), Relation(xs(2), ys(2)), set_of({}), set_of({})));
  EXPECT_FALSE(rel_lift(pow_id(), r, set_of({"x1", "x2"}), set_of({"y1"})));

  const Carrier ap("AP", {"p1", "p2"});
  const FunctorExpr kripke = FunctorExpr::product(FunctorExpr::powerset(FunctorExpr::constant(ap)), pow_id());
  const FValue u = FValue::pair(FValue::set({FValue::constant("p1")}), set_of({"x2"}));
  const FValue v = FValue::pair(FValue::set({FValue::constant("p2")}), set_of({"y2"}));
  for (const auto& any : {Relation(xs(2), ys(2)), Relation::full(xs(2), ys(2))}) EXPECT_FALSE(rel_lift(kripke, any, u, v));
}

TEST(RelLift, DiagonalIsEquality) {
  for (const auto& f : pool())
    for (std::size_t n = 1; n <= 3; ++n) {
      const Carrier x = xs(n);
      const Relation diag = Relation::diagonal(x);
      const auto values = enumerate_values(f, x);
      for (const auto& u : values)
        for (const auto& v : values) ASSERT_EQ(rel_lift(f, diag, u, v), u == v) << f.to_string();
    }
}

TEST(RelLift, ShapeMismatchThrows) {
  const Relation r(xs(1), ys(1));
  EXPECT_THROW(rel_lift(pow_id(), r, st("x1"), set_of({"y1"})), ValidationError);
  EXPECT_THROW(rel_lift(pow_id(), r, set_of({"x9"}), set_of({"y1"})), ValidationError);
}

TEST(PredLift, Examples) {
  const Predicate p(xs(2), {"x2"});
  EXPECT_TRUE(pred_lift(pow_id(), p, set_of({"x2"})));
  EXPECT_FALSE(pred_lift(pow_id(), p, set_of({"x1", "x2"})));
  for (std::uint64_t m = 0; m < 4; ++m) EXPECT_TRUE(pred_lift(pow_id(), Predicate::from_mask(xs(2), m), set_of({})));
  for (const auto& u : enumerate_values(FunctorExpr::id(), xs(2))) {
    EXPECT_TRUE(pred_lift(FunctorExpr::id(), Predicate::full(xs(2)), u));
    EXPECT_FALSE(pred_lift(FunctorExpr::id(), Predicate(xs(2)), u));
    EXPECT_FALSE(pred_lift_via_rel(FunctorExpr::id(), Predicate(xs(2)), u));
  }
  const FunctorExpr k = FunctorExpr::constant(set_a());
  for (const auto& u : enumerate_values(k, xs(2))) {
    EXPECT_TRUE(pred_lift(k, Predicate(xs(2)), u));
    EXPECT_TRUE(pred_lift_via_rel(k, Predicate(xs(2)), u));
  }
}

TEST(PredLift, AgreesWithRelationRouteOnPowId) {
  std::size_t agreements = 0;
  for (std::uint64_t m = 0; m < 4; ++m) {
    const Predicate p = Predicate::from_mask(xs(2), m);
    for (const auto& u : enumerate_values(pow_id(), xs(2))) {
      EXPECT_EQ(pred_lift(pow_id(), p, u), pred_lift_via_rel(pow_id(), p, u));
      ++agreements;
    }
  }
  EXPECT_EQ(agreements, 16u);
}

TEST(PredLift, AgreesWithRelationRouteOnPool) {
  for (const auto& f : pool())
    for (std::size_t n = 1; n <= 2; ++n) {
      const Carrier x = xs(n);
      for (std::uint64_t m = 0; m < (1u << n); ++m) {
        const Predicate p = Predicate::from_mask(x, m);
        for (const auto& u : enumerate_values(f, x)) ASSERT_EQ(pred_lift(f, p, u), pred_lift_via_rel(f, p, u));
      }
    }
}

TEST(RelLiftOrdered, Examples) {
  // superset order: the successor set may shrink on the right
  const Relation r1(xs(2), ys(2), {{"x1", "y2"}});
  const OrderSpec supset = OrderSpec::pow_supset(pow_id());
  EXPECT_TRUE(rel_lift_ordered(pow_id(), supset, r1, set_of({"x1", "x2"}), set_of({"y2"})));
  auto w = rel_lift_ordered_witness(pow_id(), supset, r1, set_of({"x1", "x2"}), set_of({"y2"}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->left, set_of({"x1"}));
  EXPECT_EQ(w->right, set_of({"y2"}));
  EXPECT_FALSE(rel_lift(pow_id(), r1, set_of({"x1", "x2"}), set_of({"y2"})));

  const Relation r2(xs(2), ys(2), {{"x1", "y1"}});
  const OrderSpec subset = OrderSpec::pow_subset(pow_id());
  EXPECT_TRUE(rel_lift_ordered(pow_id(), subset, r2, set_of({"x1"}), set_of({"y1", "y2"})));
  EXPECT_FALSE(rel_lift_ordered(pow_id(), supset, r2, set_of({"x1"}), set_of({"y1", "y2"})));
}

TEST(RelLiftOrdered, EqualityCollapsesToRelLift) {
  for (const auto& f : pool())
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::size_t m = 1; m <= 2; ++m) {
        const Carrier x = xs(n), y = ys(m);
        const auto fx = enumerate_values(f, x);
        const auto fy = enumerate_values(f, y);
        const OrderSpec eq = OrderSpec::equality(f);
        for (const auto& r : all_relations(x, y))
          for (const auto& u : fx)
            for (const auto& v : fy) ASSERT_EQ(rel_lift_ordered(f, eq, r, u, v), rel_lift(f, r, u, v)) << f.to_string();
      }
}

TEST(RelLiftOrdered, FactoredRouteMatchesLiteralDefinition) {
  Rng rng(11);
  for (const auto& f : pool())
    for (const auto& ord : orders_for(f, rng))
      for (std::size_t n = 1; n <= 2; ++n) {
        const Carrier x = xs(n), y = ys(2);
        const auto fx = enumerate_values(f, x);
        const auto fy = enumerate_values(f, y);
        for (const auto& r : all_relations(x, y))
          for (const auto& u : fx)
            for (const auto& v : fy) {
              const bool literal = rel_lift_ordered_witness(f, ord, r, u, v).has_value();
              ASSERT_EQ(rel_lift_ordered(f, ord, r, u, v), literal)
                  << f.to_string() << " " << ord.describe() << " " << r.to_string() << " " << u.to_string() << " "
                  << v.to_string();
            }
      }
}

TEST(PairCarrier, ProjectsPairs) {
  const Relation r(xs(2), ys(2), {{"x1", "y2"}, {"x2", "y1"}});
  const PairCarrier pc = pair_carrier(r);
  ASSERT_EQ(pc.carrier.size(), 2u);
  EXPECT_EQ(pc.first, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(pc.second, (std::vector<std::string>{"y2", "y1"}));
}
