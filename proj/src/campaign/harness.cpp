#include "campaign/harness.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

namespace campaign {

namespace {

std::string show(const SolveOutcome& o) {
  std::ostringstream out;
  out << to_string(o.status);
  if (o.status == Status::Win) {
    out << " cost " << o.cost << " move [";
    for (std::size_t i = 0; i < o.first_move.size(); ++i) {
      if (i) out << "; ";
      for (std::size_t j = 0; j < o.first_move[i].size(); ++j)
        out << (j ? " " : "") << o.first_move[i][j];
    }
    out << "]";
  }
  return out.str();
}

// The game the pipeline solves.
GameSpec encoded_game(const GameSpec& spec) {
  GameSpec g = spec;
  validate(g);
  if (g.adversary_mode == AdversaryMode::WorstCase) g = collapse_adversaries(g);
  return g;
}

}  // namespace

Verdict check_outcome(const GameSpec& spec, const SolveOutcome& claimed,
                      const OracleOptions& oracle) {
  Verdict v;
  v.pipeline = claimed;
  const GameSpec game = encoded_game(spec);
  v.oracle = minimax_solve(game, oracle);
  auto fail = [&](const std::string& why) {
    v.detail = why + ": pipeline " + show(claimed) + ", oracle " + show(v.oracle);
    return v;
  };
  if (claimed.status != v.oracle.status) return fail("status differs");
  if (claimed.status == Status::NoStrategy) {
    v.agree = true;
    return v;
  }
  const Expansion e = expand(game);
  try {
    if (move_cost(claimed.first_move, e.costs) != claimed.cost)
      return fail("reported cost is not the cost of the move");
  } catch (const ModelError& err) {
    return fail(std::string("move is malformed (") + err.what() + ")");
  }
  if (!first_move_wins(game, claimed.first_move, oracle)) return fail("move does not win");
  if (claimed.cost != v.oracle.cost) return fail("cost is not minimal");
  if (claimed.first_move != v.oracle.first_move) return fail("tie-break differs");
  v.agree = true;
  return v;
}

Verdict verify(const GameSpec& spec, const PipelineOptions& pipeline, const OracleOptions& oracle) {
  PipelineOptions p = pipeline;
  p.encode.min_cost = oracle.min_cost;
  p.encode.delta_only = oracle.delta_only;
  return check_outcome(spec, solve_first_move(spec, p), oracle);
}

SmallFamily::SmallFamily() {
  for (int m = 2; m <= 3; ++m) {
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    const int total = static_cast<int>(perms.size());
    for (int tau = 1; tau <= std::min(4, total); ++tau) {
      // Subsets of size tau in lexicographic order.
      std::vector<int> pick(static_cast<std::size_t>(tau));
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<std::vector<int>> prefs;
        for (int k : pick) prefs.push_back(perms[static_cast<std::size_t>(k)]);
        Society counts(static_cast<std::size_t>(tau), 0);
        while (true) {
          std::size_t t = counts.size();
          while (t > 0 && counts[t - 1] == 3) counts[--t] = 0;
          if (t == 0) break;
          ++counts[t - 1];
          societies_.push_back({m, prefs, counts});
        }
        int i = tau - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - tau + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < tau; ++j)
          pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
}

GameSpec SmallFamily::at(std::size_t index) const {
  const Base& base = societies_.at(index / kVariants);
  std::size_t v = index % kVariants;
  const Count adversary = static_cast<Count>(v % 3);
  v /= 3;
  const Count ours = static_cast<Count>(v % 3);
  v /= 3;
  const bool loyal = v % 2 == 1;
  v /= 2;
  const int rounds = static_cast<int>(v) + 1;

  GameSpec g;
  for (int c = 0; c < base.candidates; ++c) g.candidates.emplace_back(1, static_cast<char>('a' + c));
  for (const auto& pref : base.prefs) {
    VoterType t;
    for (int c : pref) t.name += static_cast<char>('a' + c);
    t.preference = pref;
    t.base = static_cast<int>(g.types.size());
    g.types.push_back(std::move(t));
  }
  g.society = base.counts;
  g.preferred = 0;
  g.rounds = rounds;
  g.ours = {{ours}};
  g.adversaries = {{{adversary}}};
  g.rule = ScoringRule::borda(base.candidates);
  g.behavior = loyal ? Behavior::Loyal : Behavior::Plain;
  validate(g);
  return g;
}

std::vector<std::size_t> SmallFamily::subsample(std::size_t n) const {
  std::vector<std::size_t> out;
  const std::size_t total = size();
  for (std::size_t i = 0; i < n && i < total; ++i) out.push_back((2 * i + 1) * total / (2 * n));
  return out;
}

namespace {

template <class Get>
FamilyReport run_checks(std::size_t count, Get get, const PipelineOptions& pipeline,
                        const OracleOptions& oracle,
                        const std::function<bool(std::size_t, const Verdict&)>& keep_going) {
  FamilyReport rep;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    auto [label, spec] = get(i);
    Verdict v;
    try {
      v = verify(spec, pipeline, oracle);
    } catch (const std::exception& e) {
      v.detail = std::string("error: ") + e.what();
      ++rep.errors;
    }
    ++rep.checked;
    if (v.agree) ++rep.agreed;
    if (v.agree && v.pipeline.status == Status::Win) ++rep.wins;
    if (!v.agree) rep.failures.push_back(label + ": " + v.detail);
    if (keep_going && !keep_going(i, v)) break;
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

FamilyReport verify_all(const std::vector<GameSpec>& specs, const PipelineOptions& pipeline,
                        const OracleOptions& oracle,
                        const std::function<bool(std::size_t, const Verdict&)>& keep_going) {
  return run_checks(
      specs.size(),
      [&](std::size_t i) { return std::pair{"spec " + std::to_string(i), specs[i]}; }, pipeline,
      oracle, keep_going);
}

FamilyReport verify_family(const SmallFamily& family, const std::vector<std::size_t>& indices,
                           const PipelineOptions& pipeline, const OracleOptions& oracle,
                           const std::function<bool(std::size_t, const Verdict&)>& keep_going) {
  return run_checks(
      indices.size(),
      [&](std::size_t i) {
        return std::pair{"family #" + std::to_string(indices[i]), family.at(indices[i])};
      },
      pipeline, oracle, keep_going);
}

}  // namespace campaign
