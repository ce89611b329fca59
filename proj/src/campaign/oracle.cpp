#include "campaign/oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace campaign {

std::vector<Move> enumerate_moves(const Society& s, const CostMatrix& costs,
                                  std::optional<Count> budget, bool delta_only,
                                  std::size_t limit) {
  const std::size_t tau = s.size();
  std::vector<Move> out;
  if (budget && *budget < 0) return out;

  struct Cell {
    std::size_t i, j;
    Count cost;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < tau; ++i)
    for (std::size_t j = 0; j < tau; ++j)
      if (i != j && costs[i][j]) cells.push_back({i, j, *costs[i][j]});

  Move m = zero_move(tau);
  Society room = s;  // per-source outflow still allowed
  auto recurse = [&](auto&& self, std::size_t k, Count left) -> void {
    if (k == cells.size()) {
      if (delta_only && !is_possible(s, m, true)) return;
      if (out.size() >= limit)
        throw TooLarge("more than " + std::to_string(limit) + " moves at one node");
      out.push_back(m);
      return;
    }
    const Cell& c = cells[k];
    std::optional<Count> cap;
    if (!delta_only) cap = room[c.i];
    if (budget && c.cost > 0) {
      Count by_budget = left / c.cost;
      cap = cap ? std::min(*cap, by_budget) : by_budget;
    }
    if (!cap) throw TooLarge("unbounded move lattice (zero-cost cell without a source limit)");
    for (Count v = 0; v <= *cap; ++v) {
      m[c.i][c.j] = v;
      room[c.i] -= v;
      self(self, k + 1, left - v * c.cost);
      room[c.i] += v;
    }
    m[c.i][c.j] = 0;
  };
  recurse(recurse, 0, budget.value_or(0));
  return out;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<Count>& v) const noexcept {
    std::size_t h = v.size();
    for (Count x : v) h = h * 1'000'003U ^ static_cast<std::size_t>(x);
    return h;
  }
};

class Minimax {
 public:
  Minimax(const GameSpec& spec, const OracleOptions& options, bool adversary_first)
      : spec_(spec), options_(options), expansion_(expand(spec)) {
    start_ = embed(spec.society, expansion_);
    if (adversary_first) {
      for (int a = 1; a < spec.bribers; ++a) order_.push_back(a);
      order_.push_back(0);
    } else {
      for (int b = 0; b < spec.bribers; ++b) order_.push_back(b);
    }
  }

  [[nodiscard]] const Society& start() const { return start_; }
  [[nodiscard]] const CostMatrix& costs() const { return expansion_.costs; }
  [[nodiscard]] std::vector<Count> initial_carry() const {
    return std::vector<Count>(static_cast<std::size_t>(spec_.bribers), 0);
  }

  [[nodiscard]] Count available(int briber, int round, const std::vector<Count>& carry) const {
    return carry[briber] + fresh_money(spec_, stream(briber), round);
  }

  // Moves of `briber` from s, after the MovNonDecrease filter. A nullopt
  // budget lifts the budget constraint.
  [[nodiscard]] std::vector<Move> moves(int briber, const Society& s,
                                        std::optional<Count> budget) const {
    auto all = enumerate_moves(s, expansion_.costs, budget, options_.delta_only, options_.max_moves);
    if (briber == 0 || spec_.adversary_mode != AdversaryMode::MovNonDecrease) return all;
    const int q = spec_.adversary_preferred[briber - 1];
    const Count before = margin(scores(s, expansion_.types, spec_.rule), q);
    std::erase_if(all, [&](const Move& m) {
      Society next = apply_move(s, m, options_.delta_only);
      return margin(scores(next, expansion_.types, spec_.rule), q) < before;
    });
    return all;
  }

  // Budget carried to the briber's next turn.
  [[nodiscard]] Count carry_after(int briber, Count avail, Count spent, const Society& faced) const {
    if (!carries_over(spec_)) return 0;
    Count next = avail - spent;
    if (spec_.scheme == BudgetScheme::Adaptive) {
      const int q = briber == 0 ? spec_.preferred : spec_.adversary_preferred[briber - 1];
      next += stream(briber).weight * scores(faced, expansion_.types, spec_.rule)[q];
    }
    return next;
  }

  [[nodiscard]] bool won(const Society& s) const {
    auto sc = scores(s, expansion_.types, spec_.rule);
    if (spec_.winning.kind == WinningKind::Unique) return unique_winner(sc, spec_.preferred);
    for (std::size_t c = 0; c < sc.size(); ++c)
      if (static_cast<int>(c) != spec_.preferred && !(sc[c] < sc[spec_.preferred] + spec_.winning.margin))
        return false;
    return true;
  }

  // Outcome for our briber from the state before turn `turn` of `round`.
  bool wins(int round, std::size_t turn, const Society& s, const std::vector<Count>& carry) {
    if (round == spec_.rounds) return won(s);
    std::vector<Count> key{round, static_cast<Count>(turn)};
    key.insert(key.end(), s.begin(), s.end());
    key.insert(key.end(), carry.begin(), carry.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int briber = order_[turn];
    const Count avail = available(briber, round, carry);
    bool result = briber != 0;  // ours: exists; adversary: for all
    for (const Move& m : moves(briber, s, avail)) {
      if (after(round, turn, s, carry, m, avail) != result) {
        result = !result;
        break;
      }
    }
    if (memo_.size() >= options_.max_states)
      throw TooLarge("game tree exceeds " + std::to_string(options_.max_states) + " states");
    memo_.emplace(std::move(key), result);
    return result;
  }

  // Plays `m` for the briber at `turn` and continues.
  bool after(int round, std::size_t turn, const Society& s, const std::vector<Count>& carry,
             const Move& m, Count avail) {
    const int briber = order_[turn];
    Society next = apply_move(s, m, options_.delta_only);
    std::vector<Count> c = carry;
    c[briber] = carry_after(briber, avail, move_cost(m, expansion_.costs), s);
    if (turn + 1 == order_.size()) return wins(round + 1, 0, next, c);
    return wins(round, turn + 1, next, c);
  }

 private:
  [[nodiscard]] const Stream& stream(int briber) const {
    return briber == 0 ? spec_.ours : spec_.adversaries[briber - 1];
  }

  const GameSpec& spec_;
  OracleOptions options_;
  Expansion expansion_;
  Society start_;
  std::vector<int> order_;
  std::unordered_map<std::vector<Count>, bool, KeyHash> memo_;
};

GameSpec checked(const GameSpec& spec) {
  GameSpec copy = spec;
  validate(copy);
  return copy;
}

}  // namespace

SolveOutcome minimax_solve(const GameSpec& input, const OracleOptions& options) {
  const GameSpec spec = checked(input);
  Minimax game(spec, options, false);
  const auto carry = game.initial_carry();
  const Count avail = game.available(0, 0, carry);
  std::optional<Count> budget = avail;
  if (options.min_cost) budget.reset();

  SolveOutcome best;
  for (const Move& m : game.moves(0, game.start(), budget)) {
    const Count cost = move_cost(m, game.costs());
    if (best.status == Status::Win && cost >= best.cost) continue;
    if (game.after(0, 0, game.start(), carry, m, avail)) best = {Status::Win, m, cost};
  }
  return best;
}

bool minimax_second_player(const GameSpec& input, const OracleOptions& options) {
  const GameSpec spec = checked(input);
  Minimax game(spec, options, true);
  return game.wins(0, 0, game.start(), game.initial_carry());
}

bool first_move_wins(const GameSpec& input, const Move& given, const OracleOptions& options) {
  const GameSpec spec = checked(input);
  Move move = given;  // diagonal entries are no-ops
  Minimax game(spec, options, false);
  const auto carry = game.initial_carry();
  const Count avail = game.available(0, 0, carry);
  if (move.size() != game.start().size()) return false;
  for (std::size_t i = 0; i < move.size(); ++i) {
    if (move[i].size() != move.size()) return false;
    move[i][i] = 0;
    for (std::size_t j = 0; j < move.size(); ++j) {
      if (move[i][j] < 0) return false;
      if (move[i][j] != 0 && !game.costs()[i][j]) return false;
    }
  }
  if (!is_possible(game.start(), move, options.delta_only)) return false;
  if (!options.min_cost && move_cost(move, game.costs()) > avail) return false;
  return game.after(0, 0, game.start(), carry, move, avail);
}

}  // namespace campaign
