#pragma once

#include "pa/formula.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pa {

/// Raised when an operation would exceed a configured size budget. Never
/// accompanied by a partial answer.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LiteralClass {
  UpperBound,  // x <= t
  LowerBound,  // t <= x
  Cong,        // p | x + t
  NegCong,     // !(p | x + t)
  Absent,      // x does not occur
};

/// Classifies a literal with respect to x. Throws FormulaError when x occurs
/// with a coefficient other than +1 or -1 or the formula is not a literal.
[[nodiscard]] LiteralClass classify(const Formula& literal, Var x);

struct NormalizedTarget {
  Formula formula;  // every atom mentioning `var` has coefficient +1 or -1
  Var var;          // fresh variable standing for lcm * x
  Integer lcm = 1;
};

/// Scales every atom mentioning x so that its x-coefficient becomes +-M
/// (M = lcm of the absolute x-coefficients), renames M*x to a fresh x', and
/// conjoins x' = 0 (mod M). phi_nnf must be quantifier-free and in NNF.
[[nodiscard]] NormalizedTarget normalize_target(const Formula& phi_nnf, Var x);

enum class BoundSide { Lower, Upper };

enum class StepMethod {
  Cooper,        // full three-step elimination
  Substitution,  // x pinned by an equality with a unit coefficient
  Enumeration,   // x confined to [t, t + k] by two unit-coefficient conjuncts
  Vacuous,       // x does not occur after simplification
};

struct EliminationStep {
  Var var;
  Kind quantifier = Kind::Exists;
  StepMethod method = StepMethod::Cooper;
  Integer lcm = 1;        // M
  Integer lcm_moduli = 1; // M'
  std::size_t bound_terms = 0;
  BoundSide side = BoundSide::Lower;
  Metrics phi1;      // NNF body before normalization
  Metrics phi3;      // after normalization, including x' = 0 (mod M)
  Metrics phi4_raw;  // the unsimplified disjunction, computed without building it
  Metrics result;    // after simplification
  bool exhausted = false;  // aborted by the disjunct budget; result unset
};

struct EliminationTrace {
  std::vector<EliminationStep> steps;
};

struct EliminationOptions {
  /// Simplify each generated disjunct and the final result.
  bool simplify = true;
  /// Use whichever of the lower/upper bound sets is smaller.
  bool choose_side = true;
  /// Distribute the quantifier over disjunctions and pull out conjuncts
  /// that do not mention the variable.
  bool miniscope = true;
  /// Eliminate variables pinned by a unit-coefficient equality by
  /// substitution.
  bool one_point = true;
  /// Within a block of like quantifiers, pick the cheapest variable first.
  bool reorder_blocks = true;
  /// Replace the quantifier by a finite disjunction when a conjunction
  /// pins x to an interval [t, t + k] with k <= max_interval.
  bool enumerate_intervals = true;
  std::size_t max_interval = 64;
  /// Upper bound on the number of disjuncts a single step may generate.
  std::size_t max_disjuncts = 2'000'000;

  /// Plain three-step elimination with the lower-bound set and no
  /// structural shortcuts; light simplification only.
  static EliminationOptions plain() {
    return {.simplify = true,
            .choose_side = false,
            .miniscope = false,
            .one_point = false,
            .reorder_blocks = false,
            .enumerate_intervals = false};
  }
};

/// Eliminates the outermost quantifier of `exists_phi` (an Exists node
/// whose body is quantifier-free).
[[nodiscard]] Formula eliminate_exists(const Formula& exists_phi,
                                       EliminationTrace* trace = nullptr,
                                       const EliminationOptions& options = {});

/// Same as above with the variable and quantifier-free body given
/// separately.
[[nodiscard]] Formula eliminate_exists(Var x, const Formula& body,
                                       EliminationTrace* trace = nullptr,
                                       const EliminationOptions& options = {});

/// Quantifier-free equivalent of phi. Quantifiers are eliminated innermost
/// first; universal blocks go through a single negation per block.
[[nodiscard]] Formula eliminate_all(const Formula& phi, EliminationTrace* trace = nullptr,
                                    const EliminationOptions& options = {});

/// Truth value of a sentence. Throws FormulaError if phi has free variables.
[[nodiscard]] bool decide_sentence(const Formula& phi, EliminationTrace* trace = nullptr,
                                   const EliminationOptions& options = {});

}  // namespace pa
