#pragma once

#include "pa/cooper.hpp"

#include <cstddef>
#include <span>
#include <unordered_map>

namespace pa {

struct BoundedOptions {
  /// Upper bound on enumerated assignments over one decider's lifetime.
  std::size_t max_points = 20'000'000;
  /// Used for blocks whose variables have no finite bounds.
  EliminationOptions fallback{};
};

struct BoundedStats {
  std::size_t points = 0;     // enumerated assignments
  std::size_t memo_hits = 0;  // subformulas answered from the table
  std::size_t fallbacks = 0;  // blocks handed to Cooper elimination
};

/// Decides Presburger sentences by expanding quantifier blocks whose
/// variables are confined to finite ranges.
///
/// For a block Q x1..xn. body the body is read as a conjunction (for a
/// universal block, the conjunction equivalent to its negation). Constant
/// bounds are propagated through its inequalities; every variable with a
/// finite range is enumerated, and the instantiated remainder is simplified
/// and decided recursively. Results are memoized on the instantiated
/// formula, so identical subgames are decided once. Variables that occur
/// only in one-variable constraints are checked for satisfiability on their
/// own. A block with no finitely bounded variable is handed to Cooper
/// elimination, so the procedure is complete for all sentences.
class BoundedDecider {
 public:
  explicit BoundedDecider(BoundedOptions options = {}) : options_(options) {}

  /// Throws FormulaError if phi has free variables and ResourceExhausted
  /// when the point budget runs out.
  [[nodiscard]] bool decide(const Formula& sentence);

  /// Quantifier-free equivalent of phi over its free variables. Bounded
  /// free variables are enumerated, giving a disjunction of points (each
  /// conjoined with the constraints of variables left symbolic). Points are
  /// listed in lexicographic order of `order` (free variables not in
  /// `order` follow in first-occurrence order).
  [[nodiscard]] Formula eliminate(const Formula& phi, std::span<const Var> order = {});

  [[nodiscard]] const BoundedStats& stats() const { return stats_; }

 private:
  bool decide_rec(const Formula& f);
  bool block(const Formula& f);
  bool exists_block(std::vector<Var> vars, std::vector<Formula> conjuncts);
  Formula eliminate_conjunction(std::vector<Var> vars, std::vector<Formula> conjuncts);
  void tick();

  BoundedOptions options_;
  BoundedStats stats_;
  std::unordered_map<Formula, bool> memo_;
};

[[nodiscard]] bool decide_bounded(const Formula& sentence, const BoundedOptions& options = {});

[[nodiscard]] Formula eliminate_bounded(const Formula& phi, std::span<const Var> order = {},
                                        const BoundedOptions& options = {});

/// Replaces every assigned variable by its value; quantified variables must
/// not be assigned.
[[nodiscard]] Formula instantiate(const Formula& phi, const Assignment& values);

}  // namespace pa
