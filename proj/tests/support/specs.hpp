#pragma once

#include "campaign/spec.hpp"

#include <random>
#include <string>
#include <vector>

namespace testkit {

using campaign::Count;

// Single-letter candidates; each preference is a string such as "abc".
inline campaign::GameSpec make_spec(const std::string& candidates,
                                    const std::vector<std::string>& prefs,
                                    campaign::Society society, Count ours, Count adversary,
                                    int rounds = 1) {
  campaign::GameSpec g;
  for (char c : candidates) g.candidates.emplace_back(1, c);
  for (const auto& p : prefs) {
    campaign::VoterType t;
    t.name = p;
    for (char c : p) t.preference.push_back(static_cast<int>(candidates.find(c)));
    t.base = static_cast<int>(g.types.size());
    g.types.push_back(t);
  }
  g.society = std::move(society);
  g.rounds = rounds;
  g.ours = {{ours}};
  g.adversaries = {{{adversary}}};
  g.rule = campaign::ScoringRule::borda(static_cast<int>(candidates.size()));
  campaign::validate(g);
  return g;
}

// p and q with types p>q and q>p.
inline campaign::GameSpec two_way(campaign::Society s, Count ours, Count adversary,
                                  int rounds = 1) {
  return make_spec("pq", {"pq", "qp"}, std::move(s), ours, adversary, rounds);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int m) {
  std::vector<int> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testkit

namespace testkit {

// A small random game: m in {2,3}, up to three distinct types, counts <= 3.
inline campaign::GameSpec random_small_spec(std::mt19937_64& rng, int max_rounds = 2) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int m = pick(2, 3);
  std::string cands = m == 2 ? "pq" : "pqr";
  std::vector<std::string> all;
  std::string perm = cands;
  std::sort(perm.begin(), perm.end());
  do all.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::shuffle(all.begin(), all.end(), rng);
  const int tau = pick(1, std::min<int>(3, static_cast<int>(all.size())));
  std::vector<std::string> prefs(all.begin(), all.begin() + tau);
  campaign::Society s;
  for (int t = 0; t < tau; ++t) s.push_back(pick(0, 3));
  if (std::all_of(s.begin(), s.end(), [](Count c) { return c == 0; })) s[0] = 1;
  auto g = make_spec(cands, prefs, s, pick(0, 2), pick(0, 2), pick(1, max_rounds));
  if (pick(0, 1) == 1) g.behavior = campaign::Behavior::Loyal;
  return g;
}

}  // namespace testkit
