#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace campaign {

using Count = std::int64_t;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Voter behaviour tags. Plain types have stage 0; loyal twins have stage 1;
/// semiloyal copies carry their bribe count as the stage.
struct VoterType {
  std::string name;
  /// Candidate ids, most preferred first.
  std::vector<int> preference;
  int base = 0;
  int stage = 0;

  friend bool operator==(const VoterType&, const VoterType&) = default;
};

using Society = std::vector<Count>;
using Change = std::vector<Count>;
/// Row-major transfer matrix: m[i][j] voters of type i turned to type j.
using Move = std::vector<std::vector<Count>>;
/// nullopt is an infinite cost.
using Cost = std::optional<Count>;
using CostMatrix = std::vector<std::vector<Cost>>;

struct ScoringRule {
  /// Points for rank 0, 1, ...; non-increasing, not all equal.
  std::vector<Count> scores;

  static ScoringRule borda(int m);
  static ScoringRule plurality(int m);

  friend bool operator==(const ScoringRule&, const ScoringRule&) = default;
};

/// Number of candidate pairs ordered differently by a and b.
[[nodiscard]] Count kendall_tau(std::span<const int> a, std::span<const int> b);

/// Pairwise inversion distances. Throws ModelError when two preferences do
/// not rank the same candidates.
[[nodiscard]] CostMatrix swap_cost_matrix(std::span<const VoterType> types);

[[nodiscard]] Move zero_move(std::size_t tau);

/// delta_i = sum_j m[j][i] - m[i][j].
[[nodiscard]] Change change_of(const Move& move);

/// Voters leaving type i (the diagonal is a no-op and is not counted).
[[nodiscard]] Count outflow(const Move& move, std::size_t i);

/// Per-source feasibility (outflow <= count) together with s + delta >= 0.
/// With `delta_only` only the second condition is checked.
[[nodiscard]] bool is_possible(const Society& s, const Move& move, bool delta_only = false);

/// s + delta. Throws ModelError on a negative entry, a size mismatch, a
/// source overdraw, or (unless `delta_only`) any infeasibility.
[[nodiscard]] Society apply_move(const Society& s, const Move& move, bool delta_only = false);

/// sum c[i][j] * m[i][j]. Throws ModelError on a transfer through an
/// infinite cell.
[[nodiscard]] Count move_cost(const Move& move, const CostMatrix& costs);

/// S_c = sum_t s_t * scores[rank(c, t)].
[[nodiscard]] std::vector<Count> scores(const Society& s, std::span<const VoterType> types,
                                        const ScoringRule& rule);

/// S_p > S_c for every other candidate.
[[nodiscard]] bool unique_winner(std::span<const Count> score, int p);

[[nodiscard]] bool unique_winner(const Society& s, std::span<const VoterType> types,
                                 const ScoringRule& rule, int p);

/// min over c != p of S_p - S_c.
[[nodiscard]] Count margin(std::span<const Count> score, int p);

struct Expansion {
  std::vector<VoterType> types;
  CostMatrix costs;
  /// Index of the stage-0 copy of each original type.
  std::vector<std::size_t> origin;
};

/// No expansion: the given types and costs.
[[nodiscard]] Expansion expand_plain(std::span<const VoterType> types, const CostMatrix& costs);

/// 2*tau types: the originals followed by locked twins. A bribe that turns
/// t into a different preference u lands in u' at the base cost c(t, u);
/// twins never move again.
[[nodiscard]] Expansion expand_loyal(std::span<const VoterType> types, const CostMatrix& costs);

/// (2l+1)*tau types t_0..t_{2l} grouped by bribe count. t_j turns into a
/// different preference u_{j+1} at c(t, u) + j * surcharge; every other
/// off-diagonal cell is infinite.
[[nodiscard]] Expansion expand_semiloyal(std::span<const VoterType> types,
                                         const CostMatrix& costs, int rounds, Count surcharge);

/// Counts of an original society placed on the stage-0 copies.
[[nodiscard]] Society embed(const Society& s, const Expansion& e);

}  // namespace campaign
