#pragma once

#include "pa/dnf.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pa {

enum class OptStatus { Optimal, Infeasible, Unbounded };

/// Linear objective over the original variables of a system. The constant
/// is added to the reported value.
using Objective = LinearTerm;

struct OptResult {
  OptStatus status = OptStatus::Infeasible;
  std::vector<Var> vars;
  /// Optimal: the tie-broken optimum. Unbounded: an integer feasible point.
  std::vector<Integer> point;
  Integer value = 0;
  /// Unbounded only: integer d with A*d <= 0 and obj*d < 0.
  std::vector<Integer> direction;
  std::size_t nodes = 0;  // branch-and-bound nodes over all phases

  friend bool operator==(const OptResult&, const OptResult&) = default;
};

struct MinimizeOptions {
  /// Give up with ResourceExhausted after this many LP relaxations.
  std::size_t max_nodes = 200'000;
  /// Branch-and-bound nodes per subproblem before switching to exact
  /// variable elimination, which terminates where branching may not
  /// (unbounded polyhedra without integer points).
  std::size_t fallback_after = 500;
};

/// Exact integer minimization over `sys` by branch-and-bound on an exact
/// rational simplex (Bland's rule). Branching picks the lowest-index
/// fractional coordinate and explores the floor side first.
///
/// Unbounded results carry the tie-broken feasible point (the rule below
/// applied to the whole feasible set) and a ray of the relaxation.
///
/// Among optimal points the lexicographically smallest one (in `sys.vars`
/// order) is returned. Where a coordinate is unbounded below on the optimal
/// face, the tie-break takes its least non-negative value, or failing that
/// its greatest value.
///
/// Throws std::invalid_argument if `obj` mentions a variable outside the
/// original variables of `sys`.
[[nodiscard]] OptResult minimize(const LinearSystem& sys, const Objective& obj,
                                 const MinimizeOptions& options = {});

/// Linearizes every conjunct over the common leading order `original` and
/// returns the best branch: Unbounded if any branch is, else the least value
/// with ties broken by the lexicographically smallest point over `original`.
/// The point covers `original` only. Variables of the objective or of a
/// conjunct missing from `original` are appended to it.
[[nodiscard]] OptResult minimize_dnf(std::span<const Conjunct> conjuncts, const Objective& obj,
                                     std::span<const Var> original = {},
                                     const MinimizeOptions& options = {});

[[nodiscard]] const char* to_string(OptStatus status);

}  // namespace pa
