#include "campaign/model.hpp"

#include <algorithm>

namespace campaign {

ScoringRule ScoringRule::borda(int m) {
  ScoringRule r;
  for (int i = m - 1; i >= 0; --i) r.scores.push_back(i);
  return r;
}

ScoringRule ScoringRule::plurality(int m) {
  ScoringRule r{std::vector<Count>(static_cast<std::size_t>(m), 0)};
  if (m > 0) r.scores[0] = 1;
  return r;
}

Count kendall_tau(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ModelError("preferences over different candidate sets");
  std::vector<int> pos_b(b.size(), -1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 0 || static_cast<std::size_t>(b[i]) >= b.size() || pos_b[b[i]] >= 0)
      throw ModelError("preference is not a permutation");
    pos_b[b[i]] = static_cast<int>(i);
  }
  std::vector<int> seen(a.size(), 0);
  for (int c : a) {
    if (c < 0 || static_cast<std::size_t>(c) >= a.size() || seen[c]++)
      throw ModelError("preferences over different candidate sets");
  }
  Count inversions = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (pos_b[a[i]] > pos_b[a[j]]) ++inversions;
  return inversions;
}

CostMatrix swap_cost_matrix(std::span<const VoterType> types) {
  CostMatrix c(types.size(), std::vector<Cost>(types.size()));
  for (std::size_t i = 0; i < types.size(); ++i)
    for (std::size_t j = 0; j < types.size(); ++j)
      c[i][j] = kendall_tau(types[i].preference, types[j].preference);
  return c;
}

Move zero_move(std::size_t tau) { return Move(tau, std::vector<Count>(tau, 0)); }

Change change_of(const Move& move) {
  Change d(move.size(), 0);
  for (std::size_t i = 0; i < move.size(); ++i) {
    for (std::size_t j = 0; j < move.size(); ++j) {
      d[i] -= move[i][j];
      d[j] += move[i][j];
    }
  }
  return d;
}

Count outflow(const Move& move, std::size_t i) {
  Count out = 0;
  for (std::size_t j = 0; j < move[i].size(); ++j)
    if (j != i) out += move[i][j];
  return out;
}

namespace {

void check_shape(const Society& s, const Move& move) {
  if (move.size() != s.size()) throw ModelError("move and society sizes differ");
  for (const auto& row : move) {
    if (row.size() != s.size()) throw ModelError("move is not square");
    for (Count v : row)
      if (v < 0) throw ModelError("negative transfer");
  }
}

}  // namespace

bool is_possible(const Society& s, const Move& move, bool delta_only) {
  check_shape(s, move);
  if (!delta_only) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (outflow(move, i) > s[i]) return false;
  }
  Change d = change_of(move);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] + d[i] < 0) return false;
  return true;
}

Society apply_move(const Society& s, const Move& move, bool delta_only) {
  check_shape(s, move);
  if (!delta_only) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (outflow(move, i) > s[i])
        throw ModelError("move overdraws type " + std::to_string(i));
  }
  Change d = change_of(move);
  Society out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = s[i] + d[i];
    if (out[i] < 0) throw ModelError("move leaves a negative count at type " + std::to_string(i));
  }
  return out;
}

Count move_cost(const Move& move, const CostMatrix& costs) {
  Count total = 0;
  for (std::size_t i = 0; i < move.size(); ++i) {
    for (std::size_t j = 0; j < move[i].size(); ++j) {
      if (move[i][j] == 0 || i == j) continue;
      if (!costs[i][j]) throw ModelError("transfer through an infinite-cost cell");
      total += *costs[i][j] * move[i][j];
    }
  }
  return total;
}

std::vector<Count> scores(const Society& s, std::span<const VoterType> types,
                          const ScoringRule& rule) {
  std::vector<Count> out(rule.scores.size(), 0);
  for (std::size_t t = 0; t < types.size(); ++t) {
    const auto& pref = types[t].preference;
    for (std::size_t r = 0; r < pref.size(); ++r) out[pref[r]] += s[t] * rule.scores[r];
  }
  return out;
}

bool unique_winner(std::span<const Count> score, int p) {
  for (std::size_t c = 0; c < score.size(); ++c)
    if (static_cast<int>(c) != p && score[c] >= score[p]) return false;
  return true;
}

bool unique_winner(const Society& s, std::span<const VoterType> types, const ScoringRule& rule,
                   int p) {
  return unique_winner(scores(s, types, rule), p);
}

Count margin(std::span<const Count> score, int p) {
  std::optional<Count> best;
  for (std::size_t c = 0; c < score.size(); ++c) {
    if (static_cast<int>(c) == p) continue;
    Count gap = score[p] - score[c];
    if (!best || gap < *best) best = gap;
  }
  return best.value_or(0);
}

Expansion expand_plain(std::span<const VoterType> types, const CostMatrix& costs) {
  Expansion e{{types.begin(), types.end()}, costs, {}};
  for (std::size_t i = 0; i < types.size(); ++i) {
    e.types[i].base = static_cast<int>(i);
    e.origin.push_back(i);
  }
  return e;
}

namespace {

// Copies of every type for stages 0..stages-1, grouped by stage.
Expansion staged(std::span<const VoterType> types, int stages, const char* mark) {
  Expansion e;
  const std::size_t tau = types.size();
  for (int st = 0; st < stages; ++st) {
    for (std::size_t t = 0; t < tau; ++t) {
      VoterType v = types[t];
      v.base = static_cast<int>(t);
      v.stage = st;
      if (st > 0) v.name += mark + (stages > 2 ? std::to_string(st) : std::string());
      e.types.push_back(std::move(v));
    }
  }
  for (std::size_t t = 0; t < tau; ++t) e.origin.push_back(t);
  e.costs.assign(e.types.size(), std::vector<Cost>(e.types.size()));
  for (std::size_t i = 0; i < e.types.size(); ++i) e.costs[i][i] = 0;
  return e;
}

bool same_preference(const VoterType& a, const VoterType& b) {
  return a.preference == b.preference;
}

}  // namespace

Expansion expand_loyal(std::span<const VoterType> types, const CostMatrix& costs) {
  const std::size_t tau = types.size();
  Expansion e = staged(types, 2, "'");
  for (std::size_t t = 0; t < tau; ++t)
    for (std::size_t u = 0; u < tau; ++u)
      if (!same_preference(types[t], types[u])) e.costs[t][tau + u] = costs[t][u];
  return e;
}

Expansion expand_semiloyal(std::span<const VoterType> types, const CostMatrix& costs, int rounds,
                           Count surcharge) {
  if (rounds < 1) throw ModelError("semiloyal expansion needs at least one round");
  if (surcharge < 0) throw ModelError("negative surcharge");
  const std::size_t tau = types.size();
  const int stages = 2 * rounds + 1;
  Expansion e = staged(types, stages, "#");
  for (int j = 0; j + 1 < stages; ++j) {
    for (std::size_t t = 0; t < tau; ++t) {
      for (std::size_t u = 0; u < tau; ++u) {
        if (same_preference(types[t], types[u]) || !costs[t][u]) continue;
        e.costs[j * tau + t][(j + 1) * tau + u] = *costs[t][u] + j * surcharge;
      }
    }
  }
  return e;
}

Society embed(const Society& s, const Expansion& e) {
  if (s.size() != e.origin.size()) throw ModelError("society size differs from type count");
  Society out(e.types.size(), 0);
  for (std::size_t t = 0; t < s.size(); ++t) out[e.origin[t]] = s[t];
  return out;
}

}  // namespace campaign
