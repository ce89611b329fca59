#include "campaign/model.hpp"
#include "campaign/spec.hpp"
#include "support/specs.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace campaign;

namespace {

VoterType type_of(const std::string& order) {
  VoterType t{order, {}};
  for (char c : order) t.preference.push_back(c - 'a');
  return t;
}

// Scores one voter at a time, without the weighted sum.
std::vector<Count> score_by_voter(const std::vector<std::string>& voters, const ScoringRule& rule) {
  std::vector<Count> s(rule.scores.size(), 0);
  for (const auto& v : voters)
    for (std::size_t r = 0; r < v.size(); ++r) s[v[r] - 'a'] += rule.scores[r];
  return s;
}

}  // namespace

TEST(SwapCost, Examples) {
  std::vector<VoterType> t{type_of("abc"), type_of("bac"), type_of("cba")};
  CostMatrix c = swap_cost_matrix(t);
  EXPECT_EQ(c[0][1], 1);
  EXPECT_EQ(c[0][2], 3);
  EXPECT_EQ(c[1][1], 0);
}

TEST(SwapCost, RejectsMismatchedCandidates) {
  std::vector<VoterType> t{type_of("abc"), type_of("ab")};
  EXPECT_THROW((void)swap_cost_matrix(t), ModelError);
}

TEST(ChangeOf, Examples) {
  EXPECT_EQ(change_of({{0, 1}, {0, 0}}), (Change{-1, 1}));
  EXPECT_EQ(change_of(zero_move(3)), (Change{0, 0, 0}));
  EXPECT_EQ(change_of({{0, 2, 0}, {0, 0, 1}, {0, 0, 0}}), (Change{-2, 1, 1}));
}

TEST(ApplyMove, Examples) {
  EXPECT_EQ(apply_move({2, 1}, {{0, 0}, {1, 0}}), (Society{3, 0}));
  EXPECT_THROW((void)apply_move({2, 1}, {{0, 0}, {2, 0}}), ModelError);
  EXPECT_EQ(apply_move({1, 1, 1}, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), (Society{0, 1, 2}));
}

TEST(ApplyMove, OverdrawIsCaughtEvenWhenInflowCovers) {
  // s + delta >= 0 holds, but type 1 sends two of its one voter.
  Move m{{0, 2}, {2, 0}};
  EXPECT_FALSE(is_possible({1, 1}, m));
  EXPECT_TRUE(is_possible({1, 1}, m, true));
  EXPECT_THROW((void)apply_move({1, 1}, m), ModelError);
  EXPECT_EQ(apply_move({1, 1}, m, true), (Society{1, 1}));
}

TEST(MoveCost, Examples) {
  CostMatrix c{{0, 1, 3}, {1, 0, 2}, {3, 2, 0}};
  EXPECT_EQ(move_cost({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, c), 1);
  EXPECT_EQ(move_cost(zero_move(3), c), 0);
  EXPECT_EQ(move_cost({{0, 0, 2}, {0, 0, 1}, {0, 0, 0}}, c), 8);
  CostMatrix inf{{0, std::nullopt}, {1, 0}};
  EXPECT_THROW((void)move_cost({{0, 1}, {0, 0}}, inf), ModelError);
  EXPECT_EQ(move_cost({{5, 0}, {1, 0}}, inf), 1);  // diagonal is free
}

TEST(Scores, Examples) {
  std::vector<VoterType> t{type_of("abc"), type_of("bca")};
  EXPECT_EQ(scores({2, 1}, t, ScoringRule::borda(3)), (std::vector<Count>{4, 4, 1}));
  EXPECT_EQ(score_by_voter({"abc", "abc", "bca"}, ScoringRule::borda(3)),
            (std::vector<Count>{4, 4, 1}));
  std::vector<VoterType> one{type_of("abc")};
  EXPECT_EQ(scores({1}, one, ScoringRule::borda(3)), (std::vector<Count>{2, 1, 0}));
  EXPECT_EQ(scores({0, 0}, t, ScoringRule::borda(3)), (std::vector<Count>{0, 0, 0}));
  EXPECT_EQ(scores({2, 1}, t, ScoringRule::plurality(3)), (std::vector<Count>{2, 1, 0}));
}

TEST(UniqueWinner, Examples) {
  EXPECT_FALSE(unique_winner(std::vector<Count>{4, 4, 1}, 0));
  EXPECT_TRUE(unique_winner(std::vector<Count>{5, 3, 1}, 0));
  EXPECT_FALSE(unique_winner(std::vector<Count>{5, 3, 1}, 1));
  EXPECT_EQ(margin(std::vector<Count>{5, 3, 1}, 0), 2);
  EXPECT_EQ(margin(std::vector<Count>{5, 3, 1}, 2), -4);
}

TEST(ExpandLoyal, Structure) {
  std::vector<VoterType> t{type_of("ab"), type_of("ba")};
  Expansion e = expand_loyal(t, swap_cost_matrix(t));
  ASSERT_EQ(e.types.size(), 4U);
  for (std::size_t i = 2; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(e.costs[i][j].has_value(), i == j);
  EXPECT_EQ(e.costs[0][3], 1);   // ab -> ba'
  EXPECT_FALSE(e.costs[0][2]);   // no paid lock without a change
  EXPECT_FALSE(e.costs[0][1]);   // unprimed targets are unreachable
  EXPECT_EQ(e.types[3].preference, t[1].preference);
  EXPECT_EQ(e.types[3].stage, 1);
}

TEST(ExpandSemiloyal, Structure) {
  std::vector<VoterType> t{type_of("ab"), type_of("ba")};
  Expansion e = expand_semiloyal(t, swap_cost_matrix(t), 1, 2);
  ASSERT_EQ(e.types.size(), 6U);
  EXPECT_EQ(e.costs[0][3], 1);      // t_0 -> u_1: base
  EXPECT_EQ(e.costs[2][5], 1 + 2);  // t_1 -> u_2: base + surcharge
  EXPECT_FALSE(e.costs[0][5]);      // skipping a stage
  EXPECT_FALSE(e.costs[4][1]);      // last stage is final
  EXPECT_FALSE(e.costs[2][1]);      // no way back
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(e.costs[i][i], 0);
  Expansion e2 = expand_semiloyal(t, swap_cost_matrix(t), 2, 0);
  EXPECT_EQ(e2.types.size(), 10U);
}

TEST(Properties, BordaConservation) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    int m = std::uniform_int_distribution<int>(2, 6)(rng);
    int tau = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<VoterType> types;
    Society s;
    for (int t = 0; t < tau; ++t) {
      types.push_back({"t", testkit::random_permutation(rng, m)});
      s.push_back(std::uniform_int_distribution<Count>(0, 20)(rng));
    }
    auto sc = scores(s, types, ScoringRule::borda(m));
    Count n = std::accumulate(s.begin(), s.end(), Count{0});
    ASSERT_EQ(std::accumulate(sc.begin(), sc.end(), Count{0}), n * m * (m - 1) / 2);
  }
}

TEST(Properties, ChangesSumToZeroAndPopulationIsKept) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    std::size_t tau = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    Society s(tau);
    for (auto& c : s) c = std::uniform_int_distribution<Count>(0, 9)(rng);
    Move m = zero_move(tau);
    for (std::size_t a = 0; a < tau; ++a) {
      Count room = s[a];
      for (std::size_t b = 0; b < tau; ++b) {
        m[a][b] = std::uniform_int_distribution<Count>(0, room)(rng);
        if (a != b) room -= m[a][b];
      }
    }
    Change d = change_of(m);
    ASSERT_EQ(std::accumulate(d.begin(), d.end(), Count{0}), 0);
    ASSERT_TRUE(is_possible(s, m));
    Society next = apply_move(s, m);
    ASSERT_EQ(std::accumulate(next.begin(), next.end(), Count{0}),
              std::accumulate(s.begin(), s.end(), Count{0}));
  }
}

TEST(Properties, SwapCostsFormAMetric) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    int m = std::uniform_int_distribution<int>(2, 6)(rng);
    std::vector<VoterType> t;
    for (int k = 0; k < 3; ++k) t.push_back({"t", testkit::random_permutation(rng, m)});
    CostMatrix c = swap_cost_matrix(t);
    for (std::size_t a = 0; a < 3; ++a) {
      ASSERT_EQ(c[a][a], 0);
      for (std::size_t b = 0; b < 3; ++b) {
        ASSERT_EQ(c[a][b], c[b][a]);
        ASSERT_LE(*c[a][b], m * (m - 1) / 2);
        for (std::size_t k = 0; k < 3; ++k) ASSERT_LE(*c[a][k], *c[a][b] + *c[b][k]);
      }
    }
  }
}

TEST(Properties, ExpansionsPreserveWinners) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    int m = std::uniform_int_distribution<int>(2, 4)(rng);
    int tau = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<VoterType> types;
    Society s;
    for (int t = 0; t < tau; ++t) {
      types.push_back({"t", testkit::random_permutation(rng, m)});
      s.push_back(std::uniform_int_distribution<Count>(0, 5)(rng));
    }
    CostMatrix c = swap_cost_matrix(types);
    ScoringRule rule = ScoringRule::borda(m);
    for (int p = 0; p < m; ++p) {
      bool before = unique_winner(s, types, rule, p);
      Expansion loyal = expand_loyal(types, c);
      Expansion semi = expand_semiloyal(types, c, 2, 1);
      ASSERT_EQ(unique_winner(embed(s, loyal), loyal.types, rule, p), before);
      ASSERT_EQ(unique_winner(embed(s, semi), semi.types, rule, p), before);
    }
  }
}

TEST(GameSpecJson, RoundTrip) {
  auto g = testkit::make_spec("abc", {"abc", "bca"}, {2, 1}, 1, 2, 2);
  g.behavior = Behavior::Loyal;
  GameSpec back = parse_spec(spec_to_json(g));
  EXPECT_EQ(back, g);
}

TEST(GameSpecJson, Parses) {
  GameSpec g = parse_spec(R"({"candidates":["p","q"],
    "types":[{"name":"a","preference":["p","q"]},{"name":"b","preference":["q","p"]}],
    "society":[2,1],"preferred":"p","bribers":3,"rounds":2,
    "budget":{"scheme":"chunked","ours":[1,2],"adversary":[[1,2],[0,1]]},
    "rule":"scores:[3,0]","winning":{"kind":"margin","margin":2}})");
  EXPECT_EQ(g.bribers, 3);
  EXPECT_EQ(g.adversaries.size(), 2U);
  EXPECT_EQ(g.adversaries[1].amounts, (std::vector<Count>{0, 1}));
  EXPECT_EQ(g.rule.scores, (std::vector<Count>{3, 0}));
  EXPECT_EQ(g.winning.margin, 2);
  EXPECT_EQ(g.adversary_preferred, (std::vector<int>{1, 1}));
}

TEST(GameSpecJson, RejectsInvalid) {
  const std::string base = R"({"candidates":["p","q"],"types":[{"preference":["p","q"]}],
    "society":[1],"preferred":"p","rounds":ROUNDS,"budget":{"ours":[1],"adversary":[1]}POST})";
  auto with = [&](const std::string& rounds, const std::string& post) {
    std::string s = base;
    s.replace(s.find("ROUNDS"), 6, rounds);
    s.replace(s.find("POST"), 4, post);
    return s;
  };
  EXPECT_NO_THROW((void)parse_spec(with("1", "")));
  EXPECT_THROW((void)parse_spec(with("0", "")), SpecError);
  EXPECT_THROW((void)parse_spec(with("1", R"(,"postprocess":"diffusion")")), SpecError);
  EXPECT_THROW((void)parse_spec(with("1", R"(,"rule":"copeland")")), SpecError);
  EXPECT_THROW((void)parse_spec("{"), SpecError);
}

TEST(Collapse, Examples) {
  auto g = testkit::two_way({2, 1}, 1, 2);
  g.bribers = 3;
  g.adversaries = {{{2}}, {{2}}};
  g.adversary_preferred.clear();
  validate(g);
  GameSpec c = collapse_adversaries(g);
  EXPECT_EQ(c.bribers, 2);
  EXPECT_EQ(c.adversaries.front().amounts, (std::vector<Count>{4}));

  auto two = testkit::two_way({2, 1}, 1, 2);
  EXPECT_EQ(collapse_adversaries(two), two);

  auto chunked = testkit::two_way({2, 1}, 1, 1, 2);
  chunked.scheme = BudgetScheme::Chunked;
  chunked.bribers = 3;
  chunked.adversaries = {{{1, 2}}, {{1, 2}}};
  chunked.adversary_preferred.clear();
  validate(chunked);
  EXPECT_EQ(collapse_adversaries(chunked).adversaries.front().amounts, (std::vector<Count>{2, 4}));

  chunked.adversary_mode = AdversaryMode::MovNonDecrease;
  EXPECT_THROW((void)collapse_adversaries(chunked), SpecError);
}
