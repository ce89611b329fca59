#include "pa/cooper.hpp"
#include "pa/parser.hpp"
#include "pa/simplify.hpp"
#include "support/qe_check.hpp"
#include "support/random_formula.hpp"

#include <gtest/gtest.h>

using namespace pa;

namespace {

Var v(const char* name) { return Var::named(name); }

// True iff f (free in `vars` only) agrees with `expected` on [lo, hi]^d.
template <typename F>
bool agrees_on_grid(const Formula& f, const std::vector<Var>& vars, long lo, long hi, F expected) {
  bool ok = true;
  testkit::for_each_point(vars, lo, hi, [&](const Assignment& a, const std::vector<long>& p) {
    if (evaluate(f, a) != expected(p)) ok = false;
  });
  return ok;
}

const EliminationOptions kPlain = EliminationOptions::plain();

}  // namespace

TEST(Classify, FourShapes) {
  Var x = v("x");
  EXPECT_EQ(classify(parse("x <= y"), x), LiteralClass::UpperBound);
  EXPECT_EQ(classify(parse("y <= x"), x), LiteralClass::LowerBound);
  EXPECT_EQ(classify(parse("x = y (mod 3)"), x), LiteralClass::Cong);
  EXPECT_EQ(classify(parse("x != y (mod 3)"), x), LiteralClass::NegCong);
  EXPECT_EQ(classify(parse("y <= 3"), x), LiteralClass::Absent);
  EXPECT_EQ(classify(parse("-x = y (mod 3)"), x), LiteralClass::Cong);
  EXPECT_THROW((void)classify(parse("2*x <= y"), x), FormulaError);
  EXPECT_THROW((void)classify(parse("x <= 1 & y <= 1"), x), FormulaError);
}

TEST(NormalizeTarget, SingleCoefficientTwo) {
  NormalizedTarget n = normalize_target(parse("2*x <= y & y <= 2*x"), v("x"));
  EXPECT_EQ(n.lcm, 2);
  Formula expected = Formula::conjunction(
      {Formula::conjunction({Formula::leq(LinearTerm(n.var, 1) - LinearTerm(v("y"), 1)),
                             Formula::leq(LinearTerm(v("y"), 1) - LinearTerm(n.var, 1))}),
       Formula::cong(2, LinearTerm(n.var, 1))});
  EXPECT_EQ(n.formula, expected);
}

TEST(NormalizeTarget, IdentityScaling) {
  NormalizedTarget n = normalize_target(parse("x <= 7"), v("x"));
  EXPECT_EQ(n.lcm, 1);
  EXPECT_EQ(n.formula, Formula::conjunction({Formula::leq(LinearTerm(n.var, 1, -7)),
                                             Formula::cong(1, LinearTerm(n.var, 1))}));
}

TEST(NormalizeTarget, MixedCoefficientsAgreeOnGrid) {
  Formula phi = to_nnf(parse("3*x <= y & 2*x >= z"));
  NormalizedTarget n = normalize_target(phi, v("x"));
  EXPECT_EQ(n.lcm, 6);
  LinearTerm xp(n.var, 1);
  Formula expected = Formula::conjunction(
      {Formula::conjunction({Formula::leq(xp - LinearTerm(v("y"), 2)),
                             Formula::leq(LinearTerm(v("z"), 3) - xp)}),
       Formula::cong(6, xp)});
  EXPECT_EQ(n.formula, expected);
  // Both bodies agree under x' = 6x.
  std::vector<Var> vars{v("x"), v("y"), v("z")};
  testkit::for_each_point(vars, -6, 6, [&](const Assignment& a, const std::vector<long>& p) {
    Assignment b = a;
    b.set(n.var, 6 * p[0]);
    ASSERT_EQ(evaluate(phi, a), evaluate(n.formula, b));
  });
}

TEST(NormalizeTarget, RejectsBoundTarget) {
  EXPECT_THROW((void)normalize_target(parse("exists x. x <= 0"), v("x")), FormulaError);
}

TEST(EliminateExists, ClosedIntervalIsTrue) {
  for (const auto& opts : {EliminationOptions{}, kPlain}) {
    Formula r = eliminate_exists(parse("exists x. 3 <= x & x <= 7"), nullptr, opts);
    EXPECT_TRUE(free_variables(r).empty());
    EXPECT_EQ(simplify(r), Formula::top());
  }
}

TEST(EliminateExists, SinglePointInterval) {
  // The least witness coincides with the lower bound itself.
  for (const auto& opts : {EliminationOptions{}, kPlain}) {
    Formula r = eliminate_exists(parse("exists x. 3 <= x & x <= 3"), nullptr, opts);
    EXPECT_EQ(simplify(r), Formula::top());
    Formula s = eliminate_exists(parse("exists x. y <= x & x <= y & x = 0 (mod 1)"), nullptr, opts);
    EXPECT_EQ(simplify(s), Formula::top());
  }
}

TEST(EliminateExists, EvenNumbers) {
  for (const auto& opts : {EliminationOptions{}, kPlain}) {
    Formula r = eliminate_exists(parse("exists x. 2*x <= y & y <= 2*x"), nullptr, opts);
    EXPECT_FALSE(mentions(r, v("x")));
    EXPECT_TRUE(agrees_on_grid(r, {v("y")}, -10, 10, [](auto& p) { return p[0] % 2 == 0; }));
  }
}

TEST(EliminateExists, ContradictoryBounds) {
  for (const auto& opts : {EliminationOptions{}, kPlain}) {
    Formula r = eliminate_exists(parse("exists x. x <= y & -x <= -y - 1"), nullptr, opts);
    EXPECT_EQ(simplify(r), Formula::bottom());
  }
}

TEST(EliminateExists, RejectsNestedQuantifier) {
  EXPECT_THROW((void)eliminate_exists(parse("exists x. exists y. x <= y")), FormulaError);
}

TEST(EliminateAll, Examples) {
  for (const auto& opts : {EliminationOptions{}, kPlain}) {
    EXPECT_EQ(simplify(eliminate_all(parse("forall x. exists y. x <= y"), nullptr, opts)),
              Formula::top());
    EXPECT_EQ(simplify(eliminate_all(parse("exists x. x = 2 (mod 4) & x = 0 (mod 6)"), nullptr,
                                     opts)),
              Formula::top());
    Formula r = eliminate_all(parse("exists x. y <= 3*x & 3*x <= y"), nullptr, opts);
    EXPECT_TRUE(is_quantifier_free(r));
    EXPECT_TRUE(agrees_on_grid(r, {v("y")}, -9, 9, [](auto& p) { return p[0] % 3 == 0; }));
  }
}

TEST(EliminateAll, WitnessSearchForCongruences) {
  // Witness x = 6 lies in [0, 12).
  bool found = false;
  for (long x = 0; x < 12; ++x) found |= (x % 4 == 2) && (x % 6 == 0);
  EXPECT_TRUE(found);
}

TEST(EliminateAll, NonPrenexKeepsFreeVariables) {
  Formula phi = parse("y <= 4 & (exists x. x <= y & 2 <= x) | forall z. z <= w | w + 1 <= z");
  Formula r = eliminate_all(phi);
  EXPECT_TRUE(is_quantifier_free(r));
  // forall z. (z <= w | w+1 <= z) is valid; so the formula is true.
  EXPECT_EQ(simplify(r), Formula::top());
}

TEST(DecideSentence, Examples) {
  for (const auto& opts : {EliminationOptions{}, kPlain}) {
    EXPECT_FALSE(decide_sentence(parse("exists x. x <= 0 & 1 <= x"), nullptr, opts));
    EXPECT_TRUE(decide_sentence(parse("forall x. x = 0 (mod 1)"), nullptr, opts));
    EXPECT_TRUE(decide_sentence(parse("forall y. exists x. 2*x <= y & y <= 2*x + 1"), nullptr,
                                opts));
    EXPECT_FALSE(decide_sentence(parse("forall y. exists x. 2*x <= y & y <= 2*x"), nullptr, opts));
    EXPECT_TRUE(decide_sentence(parse("forall y. exists x. y = 3*x | y = 3*x + 1 | y = 3*x + 2"),
                                nullptr, opts));
  }
  EXPECT_THROW((void)decide_sentence(parse("x <= 0")), FormulaError);
}

TEST(DecideSentence, FloorHalfOnGrid) {
  // x = floor(y / 2) witnesses the sentence on the grid.
  for (long y = -8; y <= 8; ++y) {
    long x = y >= 0 ? y / 2 : -((-y + 1) / 2);
    EXPECT_TRUE(2 * x <= y && y <= 2 * x + 1);
  }
}

TEST(DecideSentence, UnboundedNesting) {
  // Alternations without guards, checked by hand.
  EXPECT_TRUE(decide_sentence(parse("forall x. exists y. forall z. z <= x | y <= z & y = x + 1")));
  EXPECT_FALSE(decide_sentence(parse("exists x. forall y. y <= x")));
  EXPECT_TRUE(decide_sentence(parse("forall x, y. exists z. x <= z & y <= z & z = 0 (mod 5)")));
  EXPECT_FALSE(decide_sentence(parse("forall x. exists y. 3*y = x + 1 & y = 0 (mod 2)")));
  EXPECT_TRUE(decide_sentence(parse("forall x. exists y. 6*y <= x & x <= 6*y + 5")));
}

TEST(Trace, RecordsStepTwoBookkeeping) {
  EliminationTrace trace;
  (void)eliminate_all(parse("exists x. 3*x <= y & z <= 2*x & x != 1 (mod 4)"), &trace, kPlain);
  ASSERT_EQ(trace.steps.size(), 1U);
  const EliminationStep& s = trace.steps[0];
  EXPECT_EQ(s.method, StepMethod::Cooper);
  EXPECT_EQ(s.lcm, 6);
  EXPECT_EQ(s.lcm_moduli, 24);
  EXPECT_EQ(s.bound_terms, 1U);
  EXPECT_EQ(s.phi3.length, s.phi1.length + 2);
}

TEST(Properties, SoundnessAndVariableRemoval) {
  std::mt19937_64 rng(2024);
  std::vector<Var> pool{v("a"), v("b"), v("c")};
  testkit::QuantifiedShape shape;
  for (int i = 0; i < 120; ++i) {
    int d = testkit::uniform(rng, 0, 2);
    std::vector<Var> free(pool.begin(), pool.begin() + d);
    Formula phi = testkit::random_quantified(rng, free, testkit::uniform(rng, 1, 3), shape);
    EliminationOptions capped_plain = kPlain;
    capped_plain.max_disjuncts = 20'000;
    for (const auto& opts : {EliminationOptions{}, capped_plain}) {
      EliminationTrace trace;
      Formula r;
      try {
        r = eliminate_all(phi, &trace, opts);
      } catch (const ResourceExhausted&) {
        ASSERT_FALSE(opts.one_point) << "default options exhausted on " << to_string(phi);
        continue;
      }
      ASSERT_TRUE(is_quantifier_free(r));
      for (Var q : bound_variables(phi)) ASSERT_FALSE(mentions(r, q)) << to_string(phi);
      for (const auto& s : trace.steps)
        if (s.method == StepMethod::Cooper) ASSERT_EQ(s.phi3.length, s.phi1.length + 2);
      auto bad = testkit::check_elimination(phi, r, 6);
      ASSERT_FALSE(bad) << to_string(phi) << "\n" << *bad;
    }
  }
}

TEST(Properties, BudgetIsEnforced) {
  EliminationOptions tiny;
  tiny.max_disjuncts = 3;
  EXPECT_THROW((void)eliminate_all(parse("exists x. x = y (mod 7) & z <= x & x <= w"), nullptr,
                                   tiny),
               ResourceExhausted);
}
