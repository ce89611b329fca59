#pragma once

#include "campaign/spec.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace campaign {

/// The search would exceed a configured size limit.
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  /// Drop the budget constraint on our first move; the cheapest winning
  /// move is still returned and its cost is charged against the budget.
  bool min_cost = false;
  /// Only require s + delta >= 0 instead of per-source feasibility.
  bool delta_only = false;
  std::size_t max_moves = 200'000;    // per node
  std::size_t max_states = 4'000'000;  // memo entries
};

/// Every possible, affordable move in lexicographic (row-major) order,
/// starting with the zero move. Diagonal and infinite-cost cells stay zero.
/// `budget` nullopt means unlimited; a negative budget allows nothing.
/// Throws TooLarge when more than `limit` moves exist or the lattice is
/// unbounded.
[[nodiscard]] std::vector<Move> enumerate_moves(const Society& s, const CostMatrix& costs,
                                                std::optional<Count> budget,
                                                bool delta_only = false,
                                                std::size_t limit = 200'000);

/// Exhaustive game-tree search. Rounds run our briber first, then each
/// adversary in order; p must win after the last move of the last round.
/// Returns the cheapest winning first move, ties broken by the
/// lexicographically smallest move.
[[nodiscard]] SolveOutcome minimax_solve(const GameSpec& spec, const OracleOptions& options = {});

/// Same game with the adversaries moving before our briber in every round.
[[nodiscard]] bool minimax_second_player(const GameSpec& spec, const OracleOptions& options = {});

/// Whether our briber still wins after opening with `move` (expanded
/// coordinates). False for a move that is not possible or not affordable.
[[nodiscard]] bool first_move_wins(const GameSpec& spec, const Move& move,
                                   const OracleOptions& options = {});

}  // namespace campaign
