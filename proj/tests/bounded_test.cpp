#include "pa/bounded.hpp"
#include "pa/parser.hpp"
#include "support/qe_check.hpp"
#include "support/random_formula.hpp"

#include <gtest/gtest.h>

using namespace pa;

namespace {

Var v(const char* name) { return Var::named(name); }

}  // namespace

TEST(DecideBounded, Examples) {
  EXPECT_TRUE(decide_bounded(
      parse("forall x. (0 <= x & x <= 5) -> exists y. 0 <= y & y <= 5 & x + y = 5")));
  EXPECT_FALSE(decide_bounded(
      parse("forall x. (0 <= x & x <= 5) -> exists y. 0 <= y & y <= 4 & x + y = 5")));
  EXPECT_FALSE(decide_bounded(parse("exists x. 0 <= x & x <= 5 & x = 7 (mod 9)")));
  EXPECT_TRUE(decide_bounded(parse("exists x. 0 <= x & x <= 5 & !(x = 0 (mod 2))")));
}

TEST(DecideBounded, PropagatesThroughSums) {
  // y has no bound of its own; x + y <= 3 with x >= 0 supplies one.
  BoundedDecider d;
  EXPECT_TRUE(d.decide(parse("exists x. exists y. 0 <= x & 0 <= y & x + y <= 3 & x - y = 3")));
  EXPECT_EQ(d.stats().fallbacks, 0U);
}

TEST(DecideBounded, UnboundedBlocksFallBackToElimination) {
  BoundedDecider d;
  EXPECT_TRUE(d.decide(parse("forall x. exists y. 2*y = x | 2*y = x + 1")));
  EXPECT_GT(d.stats().fallbacks, 0U);
  EXPECT_FALSE(decide_bounded(parse("exists x. forall y. y <= x")));
}

TEST(DecideBounded, FreeFloatingVariables) {
  // d only needs some value of its own; it is never enumerated.
  BoundedDecider d;
  EXPECT_TRUE(d.decide(parse("forall x. (0 <= x & x <= 2) -> exists d. exists y. "
                             "0 <= d & 0 <= y & y <= 2 & y = x")));
  EXPECT_EQ(d.stats().fallbacks, 0U);
}

TEST(DecideBounded, DisjunctiveBounds) {
  // z is pinned by a disjunction of equalities.
  BoundedDecider d;
  EXPECT_TRUE(d.decide(parse(
      "exists z. exists w. (z = 3 | z = 5) & z <= 5 & (w = 1 | w = 2) & z - w = 4")));
  EXPECT_EQ(d.stats().fallbacks, 0U);
}

TEST(DecideBounded, MemoizesRepeatedSubgames) {
  BoundedDecider d;
  // The inner universal depends on y only, so it repeats across values of x.
  EXPECT_TRUE(d.decide(parse("forall x. (0 <= x & x <= 3) -> exists y. 0 <= y & y <= 1 & "
                             "x <= 3 + y & (forall z. (0 <= z & z <= 2) -> z <= 2*y)")));
  EXPECT_GT(d.stats().memo_hits, 0U);
}

TEST(DecideBounded, RejectsFreeVariables) {
  EXPECT_THROW((void)decide_bounded(parse("x <= 1")), FormulaError);
}

TEST(DecideBounded, PointBudget) {
  BoundedOptions tiny;
  tiny.max_points = 5;
  EXPECT_THROW((void)decide_bounded(parse("forall x. forall y. (0 <= x & x <= 100 & 0 <= y & y <= 100) -> "
                                          "!(x + y = 1000 (mod 1001))"),
                                    tiny),
               ResourceExhausted);
}

TEST(EliminateBounded, PointsInOrder) {
  Formula phi = parse("0 <= x & x <= 3 & exists y. 0 <= y & y <= 1 & x = 2*y");
  Formula r = eliminate_bounded(phi);
  EXPECT_TRUE(is_quantifier_free(r));
  EXPECT_EQ(to_string(r), to_string(parse("(x <= 0 & -x <= 0) | (x <= 2 & -x <= -2)")));
}

TEST(EliminateBounded, KeepsFloatingConstraints) {
  Formula r = eliminate_bounded(parse("0 <= d & 0 <= x & x <= 1"), std::vector<Var>{v("x")});
  for (int d = -2; d <= 2; ++d) {
    for (int x = -2; x <= 3; ++x) {
      Assignment a;
      a.set(v("d"), d);
      a.set(v("x"), x);
      EXPECT_EQ(evaluate(r, a), d >= 0 && x >= 0 && x <= 1);
    }
  }
}

TEST(Properties, AgreesWithCooperOnSentences) {
  std::mt19937_64 rng(99);
  testkit::QuantifiedShape shape;
  for (int i = 0; i < 300; ++i) {
    Formula phi = testkit::random_quantified(rng, {}, testkit::uniform(rng, 1, 3), shape);
    ASSERT_EQ(decide_bounded(phi), decide_sentence(phi)) << to_string(phi);
  }
}

TEST(Properties, EliminationMatchesOracle) {
  std::mt19937_64 rng(100);
  std::vector<Var> pool{v("a"), v("b")};
  testkit::QuantifiedShape shape;
  for (int i = 0; i < 150; ++i) {
    int d = testkit::uniform(rng, 1, 2);
    std::vector<Var> free(pool.begin(), pool.begin() + d);
    Formula phi = testkit::random_quantified(rng, free, testkit::uniform(rng, 1, 2), shape);
    // Half the cases confine the free variables so they get enumerated.
    if (i % 2 == 0) {
      std::vector<Formula> box{phi};
      for (Var x : free) box.push_back(parse(x.name() + " >= -4 & " + x.name() + " <= 4"));
      phi = Formula::conjunction(std::move(box));
    }
    Formula r = eliminate_bounded(phi);
    ASSERT_TRUE(is_quantifier_free(r)) << to_string(phi);
    auto bad = testkit::check_elimination(phi, r, 6);
    ASSERT_FALSE(bad) << to_string(phi) << "\n" << *bad;
  }
}
