#pragma once

#include "campaign/spec.hpp"
#include "pa/bounded.hpp"
#include "pa/minimize.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace campaign {

struct EncodeOptions {
  /// Leave our opening move unconstrained by the budget.
  bool min_cost = false;
  /// Only require s + delta >= 0 instead of per-source feasibility as well.
  bool delta_only = false;
  /// The adversaries open every round; the result is a sentence.
  bool adversary_first = false;
};

struct Encoding {
  pa::Formula phi;
  /// Our opening move, row-major over the expanded types. Empty when the
  /// adversaries move first.
  std::vector<pa::Var> first_move;
  Expansion expansion;
  Society start;
};

/// (z = t1 | ... | z = tn) & z <= t1 & ... & z <= tn. Throws
/// std::invalid_argument for an empty list.
[[nodiscard]] pa::Formula encode_min(std::span<const pa::LinearTerm> terms, pa::Var z);

/// The two-briber formula over plain types with per-round budgets:
///
///   Pre(m1_1) & exists s1_2. (s1_2 = s + delta(m1_1) &
///     forall m1_2. (Pre(m1_2) -> exists s2_1. (... & Win(sf))))
///
/// where Pre is non-negativity, per-source feasibility, s + delta >= 0 and
/// c.m <= B. The opening move m1_1 (all tau^2 cells) is free. Variables are
/// named m<round>_<briber>_<from>_<to>, s<round>_<briber>_<type> for the
/// society a turn starts from, and sf_<type> for the final society.
/// Throws SpecError for specs outside that fragment.
[[nodiscard]] Encoding encode_basic_phi(const GameSpec& spec, const EncodeOptions& options = {});

/// The general formula: any number of bribers moving in sequence, budget
/// variables B<round>_<briber> carried between rounds, loyal and semiloyal
/// expansions (infinite-cost cells are fixed to 0 in the opening move and
/// absent elsewhere), margin-of-victory winning, and the do-not-decrease
/// constraint on adversary moves. Coincides with encode_basic_phi on its
/// fragment.
[[nodiscard]] Encoding encode_modular_phi(const GameSpec& spec, const EncodeOptions& options = {});

enum class QeStrategy {
  Bounded,  // enumerate bounded blocks, Cooper for the rest
  Cooper,   // eliminate_all on the whole formula
};

struct PipelineOptions {
  EncodeOptions encode;
  QeStrategy qe = QeStrategy::Bounded;
  /// Merge worst-case adversaries into one before encoding. When false they
  /// move one after another, each with its own budget.
  bool collapse = true;
  pa::BoundedOptions bounded;
  pa::EliminationOptions cooper;
  pa::DnfOptions dnf;
  pa::MinimizeOptions minimize;
};

struct PipelineReport {
  pa::Metrics phi;
  std::size_t free_vars = 0;
  std::size_t bound_vars = 0;
  pa::Metrics qe_result;
  std::size_t conjuncts = 0;
  pa::BoundedStats bounded;
  std::size_t minimize_nodes = 0;
  double encode_ms = 0;
  double qe_ms = 0;
  double dnf_ms = 0;
  double minimize_ms = 0;
};

/// Collapses worst-case adversaries, expands behaviour, encodes, removes the
/// quantifiers, and minimizes c.m1_1 over the resulting DNF. Ties go to the
/// lexicographically smallest opening move. Throws pa::ResourceExhausted
/// when a budget runs out.
[[nodiscard]] SolveOutcome solve_first_move(const GameSpec& spec,
                                            const PipelineOptions& options = {},
                                            PipelineReport* report = nullptr);

/// Whether our briber wins when the adversaries open every round.
[[nodiscard]] bool decide_second_player(const GameSpec& spec, const PipelineOptions& options = {},
                                        PipelineReport* report = nullptr);

}  // namespace campaign
