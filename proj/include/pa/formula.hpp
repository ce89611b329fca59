#pragma once

#include "pa/integer.hpp"
#include "pa/term.hpp"

#include <compare>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pa {

enum class Kind : std::uint8_t {
  True,
  False,
  Leq,   // term <= 0
  Cong,  // modulus | term
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
};

class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One of 64 bits chosen by variable id, for cheap absence tests.
inline std::uint64_t var_bit(Var v) { return std::uint64_t{1} << (v.id() % 64); }

/// Immutable extended Presburger formula. Copies share structure.
///
/// Atoms are stored homogenized: `Leq` means `term <= 0` and `Cong` means
/// `modulus | term` (modulus >= 1). All other relations are parser sugar.
class Formula {
 public:
  /// Default-constructs `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula constant(bool value) { return value ? top() : bottom(); }
  /// term <= 0
  static Formula leq(LinearTerm term);
  /// lhs <= rhs
  static Formula leq(const LinearTerm& lhs, const LinearTerm& rhs) { return leq(lhs - rhs); }
  /// lhs = rhs, as the conjunction of two Leq atoms.
  static Formula equal(const LinearTerm& lhs, const LinearTerm& rhs);
  /// modulus | term; throws FormulaError when modulus < 1.
  static Formula cong(Integer modulus, LinearTerm term);
  static Formula negation(Formula f);
  /// Empty list gives `true`; a single child is returned unchanged.
  static Formula conjunction(std::vector<Formula> children);
  /// Empty list gives `false`; a single child is returned unchanged.
  static Formula disjunction(std::vector<Formula> children);
  static Formula implies(Formula premise, Formula conclusion);
  static Formula exists(Var v, Formula body);
  static Formula forall(Var v, Formula body);
  static Formula exists(std::span<const Var> vars, Formula body);
  static Formula forall(std::span<const Var> vars, Formula body);

  [[nodiscard]] Kind kind() const { return node_->kind; }
  [[nodiscard]] const LinearTerm& term() const { return node_->term; }
  [[nodiscard]] const Integer& modulus() const { return node_->modulus; }
  [[nodiscard]] Var bound_var() const { return node_->var; }
  [[nodiscard]] std::span<const Formula> children() const { return node_->children; }
  [[nodiscard]] const Formula& child(std::size_t i = 0) const { return node_->children[i]; }
  [[nodiscard]] const Formula& body() const { return node_->children[0]; }

  [[nodiscard]] bool is_atom() const { return kind() == Kind::Leq || kind() == Kind::Cong; }
  [[nodiscard]] bool is_constant() const { return kind() == Kind::True || kind() == Kind::False; }
  [[nodiscard]] bool is_quantifier() const {
    return kind() == Kind::Exists || kind() == Kind::Forall;
  }
  /// An atom, or `Not` applied directly to an atom.
  [[nodiscard]] bool is_literal() const {
    return is_atom() || (kind() == Kind::Not && child().is_atom());
  }

  [[nodiscard]] std::size_t hash() const { return node_->hash; }
  /// Union of var_bit over every variable occurring in the formula, bound
  /// or free. A zero bit proves absence.
  [[nodiscard]] std::uint64_t var_mask() const { return node_->mask; }
  [[nodiscard]] bool same_node(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering compare(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::True;
    LinearTerm term;
    Integer modulus = 0;
    Var var;
    std::vector<Formula> children;
    std::size_t hash = 0;
    std::uint64_t mask = 0;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

/// Formula size and number magnitudes.
struct Metrics {
  /// Atoms + connectives + quantifiers. An n-ary And/Or counts n-1
  /// connectives; `true`/`false` count as one symbol.
  std::size_t length = 0;
  /// Largest |coefficient| or congruence modulus over all atoms.
  Integer max_coeff = 0;
  /// Largest |constant| of a homogenized atom.
  Integer max_const = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

[[nodiscard]] Metrics metrics(const Formula& phi);

/// Quantifier-free evaluation. Throws FormulaError on a quantifier and
/// std::out_of_range on an unassigned variable.
[[nodiscard]] bool evaluate(const Formula& phi, const Assignment& values);

/// Truth value of a single atom under `values`.
[[nodiscard]] bool evaluate_atom(const Formula& atom, const Assignment& values);

/// Negation normal form: no Implies; Not only directly above Cong atoms;
/// negated inequalities use the integer shift !(t <= 0) == (-t + 1 <= 0).
[[nodiscard]] Formula to_nnf(const Formula& phi);

/// v := t in every atom. Throws FormulaError if v is bound in phi or t
/// mentions a variable bound in phi.
[[nodiscard]] Formula substitute(const Formula& phi, Var v, const LinearTerm& t);

/// Free variables in first-occurrence order.
[[nodiscard]] std::vector<Var> free_variables(const Formula& phi);
/// Bound variables in quantifier (pre-)order.
[[nodiscard]] std::vector<Var> bound_variables(const Formula& phi);
/// Free variables first, then bound variables; indices are positions.
[[nodiscard]] std::vector<Var> canonical_variables(const Formula& phi);

[[nodiscard]] bool mentions(const Formula& phi, Var v);
[[nodiscard]] bool is_quantifier_free(const Formula& phi);

/// Checks the structural invariants (no variable both free and bound, each
/// bound variable introduced once). Throws FormulaError on violation.
void check_well_formed(const Formula& phi);

/// Serializes in the textual grammar; parse(to_string(f)) == f.
[[nodiscard]] std::string to_string(const Formula& phi);

/// Atom in readable relational form, e.g. "2*x + y <= 7".
[[nodiscard]] std::string atom_to_string(const Formula& atom);

}  // namespace pa

template <>
struct std::hash<pa::Formula> {
  std::size_t operator()(const pa::Formula& f) const noexcept { return f.hash(); }
};
