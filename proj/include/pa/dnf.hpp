#pragma once

#include "pa/formula.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pa {

struct CongLiteral {
  Integer modulus;
  LinearTerm term;  // modulus | term, or its negation
  bool negated = false;

  friend bool operator==(const CongLiteral&, const CongLiteral&) = default;
};

/// A conjunction of literals: inequalities `term <= 0` and (possibly
/// negated) congruences.
struct Conjunct {
  std::vector<LinearTerm> leq;
  std::vector<CongLiteral> congs;

  [[nodiscard]] Formula to_formula() const;
  [[nodiscard]] bool empty() const { return leq.empty() && congs.empty(); }

  friend bool operator==(const Conjunct&, const Conjunct&) = default;
};

struct DnfOptions {
  /// Give up with ResourceExhausted beyond this many conjuncts.
  std::size_t max_conjuncts = 1'000'000;
  /// Drop conjuncts whose literal set contains another conjunct's.
  bool subsumption = true;
};

/// Disjunctive normal form of a quantifier-free formula. Conjuncts that are
/// unsatisfiable by syntax (complementary congruences, crossing bounds on
/// one linear part, constant-false atoms) are dropped. The list is sorted
/// by serialized form. `true` gives one empty conjunct, `false` none.
[[nodiscard]] std::vector<Conjunct> to_dnf(const Formula& psi, const DnfOptions& options = {});

/// Linear inequalities `row <= 0` over `vars`: the original variables
/// first, then the auxiliaries introduced for congruences.
struct LinearSystem {
  std::vector<Var> vars;
  std::size_t original = 0;
  std::vector<LinearTerm> rows;

  [[nodiscard]] std::size_t auxiliaries() const { return vars.size() - original; }
  [[nodiscard]] bool satisfied_by(const Assignment& values) const;
};

/// Replaces every congruence by linear constraints:
///   p | a.y + c      ->  p*z = a.y + c
///   !(p | a.y + c)   ->  p*z = a.y - z',  b+1 <= z' <= b+p-1,  b = (-c) mod p
/// The integer solutions project onto exactly the solutions of the
/// conjunct. `original` fixes the leading variable order; variables of the
/// conjunct missing from it are appended in order of first appearance.
[[nodiscard]] LinearSystem linearize(const Conjunct& conj, std::span<const Var> original = {});

}  // namespace pa
