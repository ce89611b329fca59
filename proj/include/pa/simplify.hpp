#pragma once

#include "pa/formula.hpp"

namespace pa {

/// Canonical form of a single atom: constant atoms fold to true/false,
/// inequalities are divided by the content of their coefficients (with the
/// constant rounded up), congruences get coefficients reduced to symmetric
/// residues, a first coefficient that is positive, a constant in [0, p), and
/// common factors with the modulus removed.
[[nodiscard]] Formula normalize_atom(const Formula& atom);

/// Equivalence-preserving cleanup of a formula: NNF, atom normalization,
/// flattening, true/false absorption, duplicate removal, tightest-bound
/// selection among inequalities with the same linear part, and detection
/// of contradictory (in conjunctions) or exhaustive (in disjunctions)
/// bound pairs. Quantified subformulas are simplified underneath their
/// quantifiers.
[[nodiscard]] Formula simplify(const Formula& phi);

}  // namespace pa
