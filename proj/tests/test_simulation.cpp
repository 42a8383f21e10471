#include <gtest/gtest.h>

#include "colift/error.hpp"
#include "colift/simulation.hpp"
#include "support.hpp"

using namespace colift;
using namespace colift::testing;

namespace {

Coalgebra next_c() { return pow_system(xs(2), {{"x1", "x2"}, {"x2"}}); }
Coalgebra next_d() { return pow_system(ys(2), {{"y2"}, {"y2"}}); }
Coalgebra ev_c() { return pow_system(xs(2), {{"x1"}, {"x2"}}); }
Coalgebra ev_d() { return pow_system(ys(2), {{"y1", "y2"}, {"y2"}}); }

Relation relation_from_mask(const Carrier& x, const Carrier& y, std::uint64_t mask) {
  Relation r(x, y);
  for (std::size_t k = 0; k < x.size() * y.size(); ++k)
    if (mask >> k & 1) r.insert(k / y.size(), k % y.size());
  return r;
}

// Back-and-forth condition for Pow(Id), written out by hand.
bool pow_bisim_oracle(const Coalgebra& c, const Coalgebra& d, const Relation& r) {
  for (const auto& [x, y] : r.pairs()) {
    const FValue& u = c(x);
    const FValue& v = d(y);
    for (const auto& a : u.items()) {
      bool matched = false;
      for (const auto& b : v.items()) matched = matched || r.contains(a.id(), b.id());
      if (!matched) return false;
    }
    for (const auto& b : v.items()) {
      bool matched = false;
      for (const auto& a : u.items()) matched = matched || r.contains(a.id(), b.id());
      if (!matched) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Bisimulation, Examples) {
  const Coalgebra c = next_c();
  EXPECT_TRUE(is_bisimulation(c, c, Relation::diagonal(c.states())).holds);
  EXPECT_TRUE(is_bisimulation(next_c(), next_d(), Relation(xs(2), ys(2))).holds);
  const CheckReport r = is_bisimulation(next_c(), next_d(), Relation(xs(2), ys(2), {{"x1", "y2"}}));
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->states, (std::vector<std::string>{"x1", "y2"}));
  EXPECT_THROW(is_bisimulation(next_c(), next_d(), Relation(ys(2), xs(2))), ValidationError);
}

TEST(Bisimulation, MatchesBackAndForthOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Carrier x = xs(1 + rng.below(3)), y = ys(1 + rng.below(3));
    const Coalgebra c = random_coalgebra(pow_id(), x, rng);
    const Coalgebra d = random_coalgebra(pow_id(), y, rng);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (x.size() * y.size())); ++m) {
      const Relation r = relation_from_mask(x, y, m);
      ASSERT_EQ(is_bisimulation(c, d, r).holds, pow_bisim_oracle(c, d, r));
    }
  }
}

TEST(Bisimulation, InverseIsBisimulation) {
  Rng rng(4);
  for (const auto& f : pool())
    for (int i = 0; i < 5; ++i) {
      const Coalgebra c = random_coalgebra(f, xs(1 + rng.below(3)), rng);
      const Coalgebra d = random_coalgebra(f, ys(1 + rng.below(3)), rng);
      const Relation r = largest_bisimulation(c, d, random_relation(c.states(), d.states(), rng));
      ASSERT_TRUE(is_bisimulation(c, d, r).holds);
      EXPECT_TRUE(is_bisimulation(d, c, r.inverse()).holds) << f.to_string();
    }
}

TEST(Invariant, Examples) {
  const Coalgebra c = ev_c();
  EXPECT_TRUE(is_invariant(c, Predicate::full(c.states())).holds);
  EXPECT_TRUE(is_invariant(c, Predicate(c.states(), {"x1"})).holds);
  const CheckReport r = is_invariant(ev_d(), Predicate(ys(2), {"y1"}));
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->states, (std::vector<std::string>{"y1"}));
}

TEST(Simulation, Examples) {
  EXPECT_TRUE(is_simulation(next_c(), next_d(), OrderSpec::pow_supset(pow_id()), Relation(xs(2), ys(2), {{"x1", "y2"}}))
                  .holds);
  EXPECT_FALSE(
      is_simulation(next_c(), next_d(), OrderSpec::pow_subset(pow_id()), Relation(xs(2), ys(2), {{"x1", "y2"}})).holds);
  EXPECT_TRUE(
      is_simulation(ev_c(), ev_d(), OrderSpec::pow_subset(pow_id()), Relation(xs(2), ys(2), {{"x1", "y1"}})).holds);
  EXPECT_THROW(is_simulation(next_c(), next_d(), OrderSpec::equality(FunctorExpr::id()), Relation(xs(2), ys(2))),
               ValidationError);
}

TEST(Simulation, EqualityOrderIsBisimulation) {
  Rng rng(8);
  for (const auto& f : pool())
    for (int i = 0; i < 4; ++i) {
      const Coalgebra c = random_coalgebra(f, xs(1 + rng.below(3)), rng);
      const Coalgebra d = random_coalgebra(f, ys(1 + rng.below(3)), rng);
      const Relation r = random_relation(c.states(), d.states(), rng);
      EXPECT_EQ(is_simulation(c, d, OrderSpec::equality(f), r).holds, is_bisimulation(c, d, r).holds);
      EXPECT_EQ(largest_simulation(c, d, OrderSpec::equality(f)), largest_bisimulation(c, d));
    }
}

TEST(Largest, Examples) {
  const Carrier s("S", {"s"});
  const Coalgebra loop(s, FunctorExpr::id(), {st("s")});
  EXPECT_EQ(largest_bisimulation(loop, loop), Relation(s, s, {{"s", "s"}}));
  EXPECT_TRUE(largest_bisimulation(next_c(), next_d()).contains("x2", "y2"));
  const Relation sim = largest_simulation(next_c(), next_d(), OrderSpec::pow_supset(pow_id()));
  EXPECT_TRUE(sim.contains("x1", "y2"));
}

TEST(Largest, EqualsUnionOfAllSimulations) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Carrier x = xs(1 + rng.below(3)), y = ys(1 + rng.below(3));
    const Coalgebra c = random_coalgebra(pow_id(), x, rng);
    const Coalgebra d = random_coalgebra(pow_id(), y, rng);
    for (const OrderSpec& ord : {OrderSpec::equality(pow_id()), OrderSpec::pow_subset(pow_id()),
                                 OrderSpec::pow_supset(pow_id())}) {
      Relation all(x, y);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << (x.size() * y.size())); ++m) {
        const Relation r = relation_from_mask(x, y, m);
        if (is_simulation(c, d, ord, r).holds) all = all.unite(r);
      }
      EXPECT_EQ(largest_simulation(c, d, ord), all) << ord.describe();
    }
  }
}

TEST(Largest, RespectsStartAndIsFixedPoint) {
  Rng rng(17);
  for (const auto& f : pool())
    for (int i = 0; i < 3; ++i) {
      const Coalgebra c = random_coalgebra(f, xs(1 + rng.below(3)), rng);
      const Coalgebra d = random_coalgebra(f, ys(1 + rng.below(3)), rng);
      const Relation start = random_relation(c.states(), d.states(), rng);
      const Relation b = largest_bisimulation(c, d, start);
      EXPECT_TRUE(b.subset_of(start));
      EXPECT_TRUE(is_bisimulation(c, d, b).holds);
      if (!f.contains(FunctorKind::Seq)) {
        const OrderSpec ord = build_order_class(f, {{"A", random_preorder(set_a(), rng)}});
        const Relation s = largest_simulation(c, d, ord, {}, start);
        EXPECT_TRUE(s.subset_of(start));
        EXPECT_TRUE(is_simulation(c, d, ord, s).holds);
        EXPECT_TRUE(b.subset_of(s));
      }
    }
}

TEST(Largest, KripkeExample) {
  const SystemDescription sys = load_system(data_file("kripke-example.json"));
  const Coalgebra& c = sys.coalgebras.at("c");
  const Coalgebra& d = sys.coalgebras.at("d");
  EXPECT_FALSE(largest_bisimulation(c, d).contains("x1", "y1"));
  const Relation sim = largest_simulation(c, d, sys.orders.at("order"));
  EXPECT_TRUE(sim.contains("x1", "y1"));
  EXPECT_TRUE(is_simulation(c, d, sys.orders.at("order"), sys.relations.at("R")).holds);
}

TEST(Largest, OrderClassOnPowIdIsBisimulation) {
  Rng rng(23);
  const OrderSpec ord = build_order_class(pow_id());
  for (int i = 0; i < 50; ++i) {
    const Coalgebra c = random_coalgebra(pow_id(), xs(1 + rng.below(4)), rng);
    const Coalgebra d = random_coalgebra(pow_id(), ys(1 + rng.below(4)), rng);
    EXPECT_EQ(largest_simulation(c, d, ord), largest_bisimulation(c, d));
  }
}
