#include "pa/cooper.hpp"
#include "pa/dnf.hpp"
#include "pa/parser.hpp"
#include "support/projection.hpp"
#include "support/random_formula.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace pa;

namespace {

Var v(const char* name) { return Var::named(name); }

std::vector<std::string> serialized(const std::vector<Conjunct>& dnf) {
  std::vector<std::string> out;
  for (const auto& c : dnf) out.push_back(to_string(c.to_formula()));
  return out;
}

Formula disjunction_of(const std::vector<Conjunct>& dnf) {
  std::vector<Formula> parts;
  for (const auto& c : dnf) parts.push_back(c.to_formula());
  return Formula::disjunction(std::move(parts));
}

Conjunct conjunct_of(const Formula& f) {
  auto dnf = to_dnf(f, {.subsumption = false});
  EXPECT_EQ(dnf.size(), 1U);
  return dnf.empty() ? Conjunct{} : dnf.front();
}

}  // namespace

TEST(ToDnf, SingleAtom) {
  auto dnf = to_dnf(parse("x <= 5"));
  ASSERT_EQ(dnf.size(), 1U);
  EXPECT_EQ(dnf[0].leq, std::vector<LinearTerm>{LinearTerm(v("x"), 1, -5)});
  EXPECT_TRUE(dnf[0].congs.empty());
}

TEST(ToDnf, DistributesOverOneDisjunction) {
  auto dnf = to_dnf(parse("(x <= 1 | y <= 2) & z <= 3"));
  EXPECT_EQ(serialized(dnf),
            (std::vector<std::string>{"x <= 1 & z <= 3", "y <= 2 & z <= 3"}));
}

TEST(ToDnf, DistributesOverTwoDisjunctions) {
  auto dnf = to_dnf(parse("(x <= 1 | y <= 2) & (z <= 3 | w <= 4)"));
  EXPECT_EQ(dnf.size(), 4U);
  std::set<std::string> distinct;
  for (const auto& s : serialized(dnf)) distinct.insert(s);
  EXPECT_EQ(distinct.size(), 4U);
}

TEST(ToDnf, DropsSyntacticContradictions) {
  EXPECT_TRUE(to_dnf(parse("x <= 1 & 2 <= x")).empty());
  EXPECT_TRUE(to_dnf(parse("x = 1 (mod 3) & x != 1 (mod 3)")).empty());
  EXPECT_TRUE(to_dnf(parse("x = 1 (mod 3) & x = 2 (mod 3)")).empty());
  EXPECT_TRUE(to_dnf(parse("false")).empty());
  auto top = to_dnf(parse("true"));
  ASSERT_EQ(top.size(), 1U);
  EXPECT_TRUE(top[0].empty());
  // Only the contradictory branch disappears.
  EXPECT_EQ(serialized(to_dnf(parse("(x <= 1 | 5 <= x) & 3 <= x"))),
            (std::vector<std::string>{"-x <= -3 & -x <= -5"}));
}

TEST(ToDnf, SubsumedConjunctsAreDropped) {
  Formula f = parse("(x <= 1 | y <= 2) & (x <= 1 | z <= 3)");
  EXPECT_EQ(serialized(to_dnf(f)), (std::vector<std::string>{"x <= 1", "y <= 2 & z <= 3"}));
  EXPECT_EQ(to_dnf(f, {.subsumption = false}).size(), 4U);
}

TEST(ToDnf, OrderIsSortedAndDeterministic) {
  auto a = serialized(to_dnf(parse("(b <= 1 | a <= 2) & (d <= 3 | c = 0 (mod 2))")));
  auto b = serialized(to_dnf(parse("(c = 0 (mod 2) | d <= 3) & (a <= 2 | b <= 1)")));
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(a, b);
}

TEST(ToDnf, RejectsQuantifiers) {
  EXPECT_THROW((void)to_dnf(parse("exists x. x <= 0")), FormulaError);
}

TEST(ToDnf, BudgetIsEnforced) {
  Formula f = parse("(a <= 0 | a >= 5) & (b <= 0 | b >= 5) & (c <= 0 | c >= 5)");
  EXPECT_EQ(to_dnf(f).size(), 8U);
  EXPECT_THROW((void)to_dnf(f, {.max_conjuncts = 7}), ResourceExhausted);
}

TEST(Linearize, PositiveCongruence) {
  Conjunct c{.congs = {{3, parse_term("y - 1"), false}}};
  LinearSystem sys = linearize(c);
  ASSERT_EQ(sys.vars.size(), 2U);
  EXPECT_EQ(sys.vars[0], v("y"));
  EXPECT_EQ(sys.original, 1U);
  Var z = sys.vars[1];
  // 3z = y - 1 as a pair of rows.
  LinearTerm eq = LinearTerm(z, 3) - parse_term("y - 1");
  EXPECT_EQ(sys.rows, (std::vector<LinearTerm>{eq, -eq}));
}

TEST(Linearize, NegatedCongruence) {
  Conjunct c{.congs = {{3, LinearTerm(v("y"), 1), true}}};
  LinearSystem sys = linearize(c);
  ASSERT_EQ(sys.vars.size(), 3U);
  Var z = sys.vars[1];
  Var zp = sys.vars[2];
  // 3z = y - z', 1 <= z' <= 2
  LinearTerm eq = LinearTerm(z, 3) - LinearTerm(v("y"), 1) + LinearTerm(zp, 1);
  EXPECT_EQ(sys.rows, (std::vector<LinearTerm>{eq, -eq, LinearTerm(zp, -1, 1),
                                               LinearTerm(zp, 1, -2)}));
}

TEST(Linearize, NoCongruencesIsIdentity) {
  Conjunct c = conjunct_of(parse("x + y <= 3 & 2*x >= y"));
  LinearSystem sys = linearize(c);
  EXPECT_EQ(sys.auxiliaries(), 0U);
  EXPECT_EQ(sys.rows, c.leq);
}

TEST(Linearize, LeadingVariableOrder) {
  Conjunct c = conjunct_of(parse("y <= 3 & x = 0 (mod 2)"));
  std::vector<Var> order{v("x"), v("w"), v("y")};
  LinearSystem sys = linearize(c, order);
  EXPECT_EQ(sys.original, 3U);
  EXPECT_EQ(std::vector<Var>(sys.vars.begin(), sys.vars.begin() + 3), order);
  EXPECT_EQ(sys.auxiliaries(), 1U);
}

TEST(Properties, ProjectionEquivalence) {
  std::mt19937_64 rng(31);
  std::vector<Var> pool{v("a"), v("b"), v("c")};
  testkit::FormulaShape shape{.min_const = -6, .max_const = 6, .max_modulus = 6};
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<Var> vars(pool.begin(), pool.begin() + testkit::uniform(rng, 1, 3));
    Conjunct conj;
    for (int k = testkit::uniform(rng, 1, 4); k > 0; --k) {
      LinearTerm t = testkit::random_term(rng, vars, shape);
      if (testkit::uniform(rng, 0, 2) == 0) {
        conj.leq.push_back(t);
      } else {
        conj.congs.push_back({testkit::uniform(rng, 1, 6), t, testkit::uniform(rng, 0, 1) == 1});
      }
    }
    LinearSystem sys = linearize(conj, vars);
    ASSERT_LE(sys.auxiliaries(), 2 * conj.congs.size());
    for (std::size_t j = sys.original; j < sys.vars.size(); ++j) {
      bool used = false;
      for (const auto& row : sys.rows) used |= row.mentions(sys.vars[j]);
      ASSERT_TRUE(used);
    }
    Formula f = conj.to_formula();
    testkit::for_each_point(vars, -10, 10, [&](const Assignment& a, const std::vector<long>&) {
      ASSERT_EQ(evaluate(f, a), testkit::completes(sys, conj, a, 10)) << to_string(f);
      ++checked;
    });
  }
  EXPECT_GT(checked, 0);
}

TEST(Properties, DnfEquivalenceOnGrid) {
  std::mt19937_64 rng(77);
  std::vector<Var> pool{v("a"), v("b"), v("c")};
  testkit::FormulaShape shape{.max_depth = 3};
  for (int i = 0; i < 80; ++i) {
    std::vector<Var> vars(pool.begin(), pool.begin() + testkit::uniform(rng, 1, 3));
    Formula psi = testkit::random_qf(rng, vars, shape);
    auto dnf = to_dnf(psi);
    Formula back = disjunction_of(dnf);
    auto keys = serialized(dnf);
    ASSERT_TRUE(std::is_sorted(keys.begin(), keys.end()));
    for (const auto& c : dnf) {
      Formula f = c.to_formula();
      if (f.kind() == Kind::And) {
        for (const auto& l : f.children()) ASSERT_TRUE(l.is_literal());
      } else {
        ASSERT_TRUE(f.is_literal() || f.kind() == Kind::True);
      }
    }
    testkit::for_each_point(vars, -8, 8, [&](const Assignment& a, const std::vector<long>&) {
      ASSERT_EQ(evaluate(psi, a), evaluate(back, a)) << to_string(psi);
    });
  }
}

TEST(Properties, DimensionBound) {
  std::mt19937_64 rng(5);
  std::vector<Var> pool{v("a"), v("b"), v("c")};
  testkit::FormulaShape shape{.max_depth = 3};
  for (int i = 0; i < 80; ++i) {
    Formula psi = testkit::random_qf(rng, pool, shape);
    std::vector<Var> free = free_variables(psi);
    for (const auto& c : to_dnf(psi)) {
      LinearSystem sys = linearize(c, free);
      ASSERT_EQ(sys.original, free.size());
      ASSERT_LE(sys.vars.size(), free.size() + 2 * c.congs.size());
      // One congruence per variable keeps the system within 3d.
      std::set<Var> touched;
      bool one_each = true;
      for (const auto& g : c.congs)
        for (const auto& [x, k] : g.term.monomials()) one_each &= touched.insert(x).second;
      if (one_each && c.congs.size() <= free.size()) ASSERT_LE(sys.vars.size(), 3 * free.size());
    }
  }
}
