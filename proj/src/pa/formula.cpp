#include "pa/formula.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace pa {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Node node) {
  std::size_t h = static_cast<std::size_t>(node.kind) * 0x100000001b3ULL;
  std::uint64_t mask = 0;
  switch (node.kind) {
    case Kind::Leq:
      h = mix(h, node.term.hash());
      break;
    case Kind::Cong:
      h = mix(mix(h, node.term.hash()), static_cast<std::size_t>(static_cast<long long>(node.modulus % 1000003)));
      break;
    case Kind::Exists:
    case Kind::Forall:
      h = mix(h, node.var.id());
      mask |= var_bit(node.var);
      break;
    default:
      break;
  }
  for (const auto& [v, k] : node.term.monomials()) mask |= var_bit(v);
  for (const auto& c : node.children) {
    h = mix(h, c.hash());
    mask |= c.var_mask();
  }
  node.hash = h;
  node.mask = mask;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula f = make(Node{.kind = Kind::True});
  return f;
}

Formula Formula::bottom() {
  static const Formula f = make(Node{.kind = Kind::False});
  return f;
}

Formula Formula::leq(LinearTerm term) {
  return make(Node{.kind = Kind::Leq, .term = std::move(term)});
}

Formula Formula::equal(const LinearTerm& lhs, const LinearTerm& rhs) {
  return conjunction({leq(lhs - rhs), leq(rhs - lhs)});
}

Formula Formula::cong(Integer modulus, LinearTerm term) {
  if (modulus < 1) throw FormulaError("congruence modulus must be positive, got " + modulus.str());
  return make(Node{.kind = Kind::Cong, .term = std::move(term), .modulus = std::move(modulus)});
}

Formula Formula::negation(Formula f) {
  return make(Node{.kind = Kind::Not, .children = {std::move(f)}});
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) return top();
  if (children.size() == 1) return std::move(children.front());
  return make(Node{.kind = Kind::And, .children = std::move(children)});
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) return bottom();
  if (children.size() == 1) return std::move(children.front());
  return make(Node{.kind = Kind::Or, .children = std::move(children)});
}

Formula Formula::implies(Formula premise, Formula conclusion) {
  return make(Node{.kind = Kind::Implies, .children = {std::move(premise), std::move(conclusion)}});
}

Formula Formula::exists(Var v, Formula body) {
  return make(Node{.kind = Kind::Exists, .var = v, .children = {std::move(body)}});
}

Formula Formula::forall(Var v, Formula body) {
  return make(Node{.kind = Kind::Forall, .var = v, .children = {std::move(body)}});
}

Formula Formula::exists(std::span<const Var> vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

Formula Formula::forall(std::span<const Var> vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Leq:
      return compare(a.term(), b.term());
    case Kind::Cong:
      if (auto c = compare(a.modulus(), b.modulus()); c != 0) return c;
      return compare(a.term(), b.term());
    case Kind::Exists:
    case Kind::Forall:
      if (auto c = a.bound_var() <=> b.bound_var(); c != 0) return c;
      break;
    default:
      break;
  }
  auto ca = a.children();
  auto cb = b.children();
  std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = compare(ca[i], cb[i]); c != 0) return c;
  return ca.size() <=> cb.size();
}

Metrics metrics(const Formula& phi) {
  Metrics m;
  auto visit = [&m](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case Kind::True:
      case Kind::False:
        ++m.length;
        return;
      case Kind::Leq:
      case Kind::Cong:
        ++m.length;
        m.max_coeff = std::max(m.max_coeff, f.term().max_abs_coefficient());
        if (f.kind() == Kind::Cong) m.max_coeff = std::max(m.max_coeff, f.modulus());
        m.max_const = std::max(m.max_const, abs(f.term().constant()));
        return;
      case Kind::And:
      case Kind::Or:
        m.length += f.children().size() - 1;
        break;
      default:
        ++m.length;
        break;
    }
    for (const auto& c : f.children()) self(self, c);
  };
  visit(visit, phi);
  return m;
}

bool evaluate_atom(const Formula& atom, const Assignment& values) {
  Integer v = atom.term().evaluate(values);
  if (atom.kind() == Kind::Leq) return v <= 0;
  return v % atom.modulus() == 0;
}

bool evaluate(const Formula& phi, const Assignment& values) {
  switch (phi.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leq:
    case Kind::Cong:
      return evaluate_atom(phi, values);
    case Kind::Not:
      return !evaluate(phi.child(), values);
    case Kind::And:
      for (const auto& c : phi.children())
        if (!evaluate(c, values)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : phi.children())
        if (evaluate(c, values)) return true;
      return false;
    case Kind::Implies:
      return !evaluate(phi.child(0), values) || evaluate(phi.child(1), values);
    case Kind::Exists:
    case Kind::Forall:
      throw FormulaError("evaluate: quantifier over " + phi.bound_var().name());
  }
  return false;
}

namespace {

Formula nnf(const Formula& phi, bool negate) {
  switch (phi.kind()) {
    case Kind::True:
    case Kind::False:
      return Formula::constant((phi.kind() == Kind::True) != negate);
    case Kind::Leq:
      if (!negate) return phi;
      return Formula::leq(-phi.term() + Integer(1));
    case Kind::Cong:
      return negate ? Formula::negation(phi) : phi;
    case Kind::Not:
      return nnf(phi.child(), !negate);
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> out;
      out.reserve(phi.children().size());
      for (const auto& c : phi.children()) out.push_back(nnf(c, negate));
      bool conj = (phi.kind() == Kind::And) != negate;
      return conj ? Formula::conjunction(std::move(out)) : Formula::disjunction(std::move(out));
    }
    case Kind::Implies: {
      // a -> b == !a | b
      Formula a = nnf(phi.child(0), !negate);
      Formula b = nnf(phi.child(1), negate);
      return negate ? Formula::conjunction({std::move(a), std::move(b)})
                    : Formula::disjunction({std::move(a), std::move(b)});
    }
    case Kind::Exists:
    case Kind::Forall: {
      Formula body = nnf(phi.body(), negate);
      bool ex = (phi.kind() == Kind::Exists) != negate;
      return ex ? Formula::exists(phi.bound_var(), std::move(body))
                : Formula::forall(phi.bound_var(), std::move(body));
    }
  }
  return phi;
}

}  // namespace

Formula to_nnf(const Formula& phi) { return nnf(phi, false); }

namespace {

Formula substitute_rec(const Formula& phi, Var v, const LinearTerm& t) {
  switch (phi.kind()) {
    case Kind::True:
    case Kind::False:
      return phi;
    case Kind::Leq:
      if (!phi.term().mentions(v)) return phi;
      return Formula::leq(phi.term().substitute(v, t));
    case Kind::Cong:
      if (!phi.term().mentions(v)) return phi;
      return Formula::cong(phi.modulus(), phi.term().substitute(v, t));
    case Kind::Exists:
    case Kind::Forall: {
      if (phi.bound_var() == v) throw FormulaError("substitute: " + v.name() + " is bound");
      if (t.mentions(phi.bound_var()))
        throw FormulaError("substitute: capture of " + phi.bound_var().name());
      Formula body = substitute_rec(phi.body(), v, t);
      if (body.same_node(phi.body())) return phi;
      return phi.kind() == Kind::Exists ? Formula::exists(phi.bound_var(), std::move(body))
                                        : Formula::forall(phi.bound_var(), std::move(body));
    }
    case Kind::Not:
      return Formula::negation(substitute_rec(phi.child(), v, t));
    case Kind::Implies:
      return Formula::implies(substitute_rec(phi.child(0), v, t),
                              substitute_rec(phi.child(1), v, t));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> out;
      out.reserve(phi.children().size());
      bool changed = false;
      for (const auto& c : phi.children()) {
        out.push_back(substitute_rec(c, v, t));
        changed = changed || !out.back().same_node(c);
      }
      if (!changed) return phi;
      return phi.kind() == Kind::And ? Formula::conjunction(std::move(out))
                                     : Formula::disjunction(std::move(out));
    }
  }
  return phi;
}

void collect_vars(const Formula& phi, std::vector<Var>& free_out, std::vector<Var>& bound_out,
                  std::vector<Var>& scope) {
  auto note_free = [&](Var v) {
    if (std::find(scope.begin(), scope.end(), v) != scope.end()) return;
    if (std::find(free_out.begin(), free_out.end(), v) == free_out.end()) free_out.push_back(v);
  };
  switch (phi.kind()) {
    case Kind::Leq:
    case Kind::Cong:
      for (const auto& [v, c] : phi.term().monomials()) note_free(v);
      return;
    case Kind::Exists:
    case Kind::Forall:
      bound_out.push_back(phi.bound_var());
      scope.push_back(phi.bound_var());
      collect_vars(phi.body(), free_out, bound_out, scope);
      scope.pop_back();
      return;
    default:
      for (const auto& c : phi.children()) collect_vars(c, free_out, bound_out, scope);
      return;
  }
}

}  // namespace

Formula substitute(const Formula& phi, Var v, const LinearTerm& t) {
  if (t.mentions(v)) throw FormulaError("substitute: term mentions " + v.name());
  return substitute_rec(phi, v, t);
}

std::vector<Var> free_variables(const Formula& phi) {
  std::vector<Var> free, bound, scope;
  collect_vars(phi, free, bound, scope);
  return free;
}

std::vector<Var> bound_variables(const Formula& phi) {
  std::vector<Var> free, bound, scope;
  collect_vars(phi, free, bound, scope);
  return bound;
}

std::vector<Var> canonical_variables(const Formula& phi) {
  std::vector<Var> free, bound, scope;
  collect_vars(phi, free, bound, scope);
  free.insert(free.end(), bound.begin(), bound.end());
  return free;
}

bool mentions(const Formula& phi, Var v) {
  if (phi.is_atom()) return phi.term().mentions(v);
  if (phi.is_quantifier() && phi.bound_var() == v) return false;
  for (const auto& c : phi.children())
    if (mentions(c, v)) return true;
  return false;
}

bool is_quantifier_free(const Formula& phi) {
  if (phi.is_quantifier()) return false;
  for (const auto& c : phi.children())
    if (!is_quantifier_free(c)) return false;
  return true;
}

void check_well_formed(const Formula& phi) {
  std::vector<Var> free, bound, scope;
  collect_vars(phi, free, bound, scope);
  std::unordered_set<Var> seen;
  for (Var v : bound) {
    if (!seen.insert(v).second) throw FormulaError(v.name() + " is bound by more than one quantifier");
    if (std::find(free.begin(), free.end(), v) != free.end())
      throw FormulaError(v.name() + " occurs both free and bound");
  }
  auto check_lists = [](auto&& self, const Formula& f) -> void {
    if ((f.kind() == Kind::And || f.kind() == Kind::Or) && f.children().empty())
      throw FormulaError("empty connective");
    for (const auto& c : f.children()) self(self, c);
  };
  check_lists(check_lists, phi);
}

std::string atom_to_string(const Formula& atom) {
  LinearTerm lhs = atom.term().with_constant(0);
  Integer rhs = -atom.term().constant();
  std::ostringstream out;
  if (atom.kind() == Kind::Leq) {
    if (lhs.is_constant()) {
      out << atom.term().constant() << " <= 0";
    } else {
      out << lhs.str() << " <= " << rhs;
    }
  } else {
    if (lhs.is_constant()) {
      out << atom.term().constant() << " = 0 (mod " << atom.modulus() << ")";
    } else {
      out << lhs.str() << " = " << rhs << " (mod " << atom.modulus() << ")";
    }
  }
  return out.str();
}

namespace {

void print(const Formula& phi, std::ostream& out);

void print_operand(const Formula& phi, std::ostream& out, bool bare_atoms = true) {
  if (phi.is_constant() || (bare_atoms && phi.is_atom())) {
    print(phi, out);
  } else {
    out << "(";
    print(phi, out);
    out << ")";
  }
}

void print(const Formula& phi, std::ostream& out) {
  switch (phi.kind()) {
    case Kind::True:
      out << "true";
      return;
    case Kind::False:
      out << "false";
      return;
    case Kind::Leq:
    case Kind::Cong:
      out << atom_to_string(phi);
      return;
    case Kind::Not:
      out << "!";
      print_operand(phi.child(), out, false);
      return;
    case Kind::And:
    case Kind::Or: {
      const char* op = phi.kind() == Kind::And ? " & " : " | ";
      bool first = true;
      for (const auto& c : phi.children()) {
        if (!first) out << op;
        print_operand(c, out);
        first = false;
      }
      return;
    }
    case Kind::Implies:
      print_operand(phi.child(0), out);
      out << " -> ";
      print_operand(phi.child(1), out);
      return;
    case Kind::Exists:
    case Kind::Forall:
      out << (phi.kind() == Kind::Exists ? "exists " : "forall ") << phi.bound_var().name() << ". ";
      print(phi.body(), out);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& phi) {
  std::ostringstream out;
  print(phi, out);
  return out.str();
}

}  // namespace pa
