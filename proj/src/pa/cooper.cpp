#include "pa/cooper.hpp"

#include "pa/simplify.hpp"

#include <algorithm>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>

namespace pa {

namespace {

using AtomMap = std::function<Formula(const Formula&)>;

// Rebuilds f with every atom replaced by fn(atom). Quantifier-free input.
Formula map_atoms(const Formula& f, const AtomMap& fn) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Leq:
    case Kind::Cong:
      return fn(f);
    case Kind::Not:
      return Formula::negation(map_atoms(f.child(), fn));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(map_atoms(c, fn));
      return f.kind() == Kind::And ? Formula::conjunction(std::move(kids))
                                   : Formula::disjunction(std::move(kids));
    }
    case Kind::Implies:
      return Formula::implies(map_atoms(f.child(0), fn), map_atoms(f.child(1), fn));
    case Kind::Exists:
    case Kind::Forall:
      throw FormulaError("quantifier inside a formula expected to be quantifier-free");
  }
  return f;
}

struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return a == b; }
};
using AtomSet = std::unordered_set<Formula, std::hash<Formula>, FormulaEq>;

void collect_atoms(const Formula& f, Var x, AtomSet& out, std::vector<Formula>& order) {
  if (f.is_atom()) {
    if (f.term().mentions(x) && out.insert(f).second) order.push_back(f);
    return;
  }
  if (f.is_quantifier())
    throw FormulaError("quantifier inside a formula expected to be quantifier-free");
  for (const auto& c : f.children()) collect_atoms(c, x, out, order);
}

// Distinct atoms mentioning x, in first-occurrence order.
std::vector<Formula> atoms_with(const Formula& f, Var x) {
  AtomSet seen;
  std::vector<Formula> order;
  collect_atoms(f, x, seen, order);
  return order;
}

void note_atom(Metrics& m, const Formula& atom) {
  for (const auto& [v, c] : atom.term().monomials()) m.max_coeff = std::max(m.max_coeff, abs(c));
  if (atom.kind() == Kind::Cong) m.max_coeff = std::max(m.max_coeff, atom.modulus());
  m.max_const = std::max(m.max_const, abs(atom.term().constant()));
}

void note_atoms_without(Metrics& m, const Formula& f, Var x) {
  if (f.is_atom()) {
    if (!f.term().mentions(x)) note_atom(m, f);
    return;
  }
  for (const auto& c : f.children()) note_atoms_without(m, c, x);
}

Formula substitute_atom(const Formula& atom, Var x, const LinearTerm& s) {
  if (!atom.term().mentions(x)) return atom;
  LinearTerm t = atom.term().substitute(x, s);
  return atom.kind() == Kind::Leq ? Formula::leq(std::move(t))
                                  : Formula::cong(atom.modulus(), std::move(t));
}

Formula substitute_qf(const Formula& f, Var x, const LinearTerm& s) {
  return map_atoms(f, [&](const Formula& a) { return substitute_atom(a, x, s); });
}

Formula clean(const Formula& f, const EliminationOptions& options) {
  return options.simplify ? simplify(f) : f;
}

std::size_t to_size(const Integer& n, const EliminationOptions& options) {
  if (n > Integer(options.max_disjuncts))
    throw ResourceExhausted("quantifier elimination would generate more than " +
                            std::to_string(options.max_disjuncts) + " disjuncts");
  return static_cast<std::size_t>(n);
}

// The three-step elimination on an NNF body that mentions x.
Formula cooper(Var x, const Formula& phi1, Kind quantifier, EliminationTrace* trace,
               const EliminationOptions& options) {
  EliminationStep step;
  step.var = x;
  step.quantifier = quantifier;
  step.phi1 = metrics(phi1);

  NormalizedTarget norm = normalize_target(phi1, x);
  const Formula& phi3 = norm.formula;
  const Var xp = norm.var;
  step.lcm = norm.lcm;
  step.phi3 = metrics(phi3);

  std::vector<Formula> atoms = atoms_with(phi3, xp);
  std::vector<LinearTerm> lower;
  std::vector<LinearTerm> upper;
  Integer lcm_moduli = 1;
  {
    std::map<LinearTerm, bool, decltype([](const LinearTerm& a, const LinearTerm& b) {
               return compare(a, b) < 0;
             })>
        seen_lower, seen_upper;
    for (const auto& a : atoms) {
      switch (classify(a, xp)) {
        case LiteralClass::LowerBound: {
          LinearTerm t = a.term().without(xp);
          if (seen_lower.emplace(t, true).second) lower.push_back(std::move(t));
          break;
        }
        case LiteralClass::UpperBound: {
          LinearTerm t = -a.term().without(xp);
          if (seen_upper.emplace(t, true).second) upper.push_back(std::move(t));
          break;
        }
        case LiteralClass::Cong:
        case LiteralClass::NegCong:
          lcm_moduli = lcm(lcm_moduli, a.modulus());
          break;
        case LiteralClass::Absent:
          break;
      }
    }
  }
  step.lcm_moduli = lcm_moduli;

  const bool use_upper = options.choose_side && upper.size() < lower.size();
  step.side = use_upper ? BoundSide::Upper : BoundSide::Lower;
  const std::vector<LinearTerm>& bounds = use_upper ? upper : lower;
  step.bound_terms = bounds.size();

  const Integer count_big = lcm_moduli * (bounds.size() + 1);

  // Witness terms: j (or -j) for the unbounded case, then b -+ 1 +- j for
  // each bound b. With non-strict bounds b <= x the least solution lies in
  // [b, b + M' - 1], hence the offset by one.
  auto witness_inf = [&](const Integer& j) { return LinearTerm(use_upper ? Integer(-j) : j); };
  auto witness_bound = [&](const LinearTerm& b, const Integer& j) {
    return use_upper ? b + Integer(1) - j : b - Integer(1) + j;
  };

  // Metrics of the unsimplified disjunction. Lengths are multiplicative;
  // constants are affine in j, so checking j = 1 and j = M' suffices.
  {
    Metrics raw;
    Integer len = count_big * step.phi3.length + (count_big - 1);
    raw.length = len > Integer(SIZE_MAX) ? SIZE_MAX : static_cast<std::size_t>(len);
    note_atoms_without(raw, phi3, xp);
    for (const auto& a : atoms) {
      LiteralClass cls = classify(a, xp);
      bool is_bound = cls == LiteralClass::LowerBound || cls == LiteralClass::UpperBound;
      for (const Integer& j : {Integer(1), lcm_moduli}) {
        if (!is_bound) note_atom(raw, substitute_atom(a, xp, witness_inf(j)));
        for (const auto& b : bounds) note_atom(raw, substitute_atom(a, xp, witness_bound(b, j)));
      }
    }
    step.phi4_raw = raw;
  }
  if (count_big > Integer(options.max_disjuncts)) {
    step.exhausted = true;
    if (trace != nullptr) trace->steps.push_back(step);
    to_size(count_big, options);  // throws
  }
  const std::size_t period = static_cast<std::size_t>(lcm_moduli);

  const Formula infinity = map_atoms(phi3, [&](const Formula& a) {
    switch (classify(a, xp)) {
      case LiteralClass::UpperBound:
        return Formula::constant(!use_upper);
      case LiteralClass::LowerBound:
        return Formula::constant(use_upper);
      default:
        return a;
    }
  });
  const Formula infinity_clean = clean(infinity, options);

  std::vector<Formula> parts;
  bool is_true = false;
  auto add = [&](Formula d) {
    d = clean(d, options);
    if (d.kind() == Kind::True) is_true = true;
    if (d.kind() != Kind::False) parts.push_back(std::move(d));
  };
  if (infinity_clean.kind() != Kind::False) {
    for (std::size_t j = 1; j <= period && !is_true; ++j)
      add(substitute_qf(infinity_clean, xp, witness_inf(Integer(j))));
  }
  for (const auto& b : bounds) {
    for (std::size_t j = 1; j <= period && !is_true; ++j)
      add(substitute_qf(phi3, xp, witness_bound(b, Integer(j))));
  }

  Formula result = is_true ? Formula::top() : clean(Formula::disjunction(std::move(parts)), options);
  step.result = metrics(result);
  if (trace != nullptr) trace->steps.push_back(std::move(step));
  return result;
}

// x = -c * r when the conjunction contains both c*x + r <= 0 and
// -(c*x + r) <= 0 with c = +-1.
std::optional<LinearTerm> pinned_value(const Formula& phi, Var x) {
  if (phi.kind() != Kind::And) return std::nullopt;
  std::map<LinearTerm, Integer, decltype([](const LinearTerm& a, const LinearTerm& b) {
             return compare_linear_part(a, b) < 0;
           })>
      leqs;
  for (const auto& c : phi.children())
    if (c.kind() == Kind::Leq && abs(c.term().coefficient(x)) == 1)
      leqs.emplace(c.term(), c.term().constant());
  for (const auto& [t, k] : leqs) {
    auto opp = leqs.find(-t);
    if (opp == leqs.end() || k + opp->second != 0) continue;
    Integer c = t.coefficient(x);
    return t.without(x) * Integer(-c);
  }
  return std::nullopt;
}

struct Interval {
  LinearTerm low;  // x ranges over low, low + 1, ..., low + width
  Integer width;
};

// Narrowest window t <= x <= t + k given by two conjuncts with unit
// x-coefficients and the same remaining linear part.
std::optional<Interval> pinned_interval(const Formula& phi, Var x) {
  if (phi.kind() != Kind::And) return std::nullopt;
  std::vector<LinearTerm> lows, highs;
  for (const auto& c : phi.children()) {
    if (c.kind() != Kind::Leq) continue;
    Integer a = c.term().coefficient(x);
    if (a == -1) lows.push_back(c.term().without(x));    // -x + r <= 0: x >= r
    if (a == 1) highs.push_back(-c.term().without(x));   // x + r <= 0: x <= -r
  }
  std::optional<Interval> best;
  for (const auto& lo : lows) {
    for (const auto& hi : highs) {
      if (compare_linear_part(lo, hi) != 0) continue;
      Integer width = hi.constant() - lo.constant();
      if (!best || width < best->width) best = Interval{lo, width};
    }
  }
  return best;
}

Formula exists_qf(Var x, const Formula& body, Kind quantifier, EliminationTrace* trace,
                  const EliminationOptions& options) {
  Formula phi1 = clean(to_nnf(body), options);
  if (!mentions(phi1, x)) {
    if (trace != nullptr) {
      EliminationStep step;
      step.var = x;
      step.quantifier = quantifier;
      step.method = StepMethod::Vacuous;
      step.phi1 = step.result = metrics(phi1);
      trace->steps.push_back(std::move(step));
    }
    return phi1;
  }
  if (options.miniscope) {
    if (phi1.kind() == Kind::Or) {
      std::vector<Formula> parts;
      for (const auto& c : phi1.children()) {
        Formula r = exists_qf(x, c, quantifier, trace, options);
        if (r.kind() == Kind::True) return r;
        parts.push_back(std::move(r));
      }
      return clean(Formula::disjunction(std::move(parts)), options);
    }
    if (phi1.kind() == Kind::And) {
      std::vector<Formula> with, without;
      for (const auto& c : phi1.children()) (mentions(c, x) ? with : without).push_back(c);
      if (!without.empty()) {
        without.push_back(exists_qf(x, Formula::conjunction(std::move(with)), quantifier, trace,
                                    options));
        return clean(Formula::conjunction(std::move(without)), options);
      }
    }
  }
  if (options.one_point) {
    if (auto value = pinned_value(phi1, x)) {
      Formula r = clean(substitute_qf(phi1, x, *value), options);
      if (trace != nullptr) {
        EliminationStep step;
        step.var = x;
        step.quantifier = quantifier;
        step.method = StepMethod::Substitution;
        step.phi1 = metrics(phi1);
        step.result = metrics(r);
        trace->steps.push_back(std::move(step));
      }
      return r;
    }
  }
  if (options.enumerate_intervals) {
    auto window = pinned_interval(phi1, x);
    if (window && window->width <= Integer(options.max_interval)) {
      std::vector<Formula> parts;
      bool is_true = false;
      for (Integer i = 0; i <= window->width && !is_true; ++i) {
        Formula d = clean(substitute_qf(phi1, x, window->low + i), options);
        is_true = d.kind() == Kind::True;
        parts.push_back(std::move(d));
      }
      Formula r = is_true ? Formula::top() : clean(Formula::disjunction(std::move(parts)), options);
      if (trace != nullptr) {
        EliminationStep step;
        step.var = x;
        step.quantifier = quantifier;
        step.method = StepMethod::Enumeration;
        step.phi1 = metrics(phi1);
        step.result = metrics(r);
        trace->steps.push_back(std::move(step));
      }
      return r;
    }
  }
  return cooper(x, phi1, quantifier, trace, options);
}

// Rough size of eliminating x from phi: M' * (1 + fewer bound count).
Integer elimination_cost(const Formula& phi, Var x) {
  std::vector<Formula> atoms = atoms_with(phi, x);
  if (atoms.empty()) return 0;
  if (pinned_value(phi, x)) return 0;
  if (auto window = pinned_interval(phi, x)) {
    if (window->width < 0) return 0;
    if (window->width <= 64) return window->width + 1;
  }
  Integer m = 1;
  for (const auto& a : atoms) m = lcm(m, a.term().coefficient(x));
  Integer period = m;
  std::size_t lo = 0, hi = 0;
  for (const auto& a : atoms) {
    Integer c = a.term().coefficient(x);
    if (a.kind() == Kind::Cong) {
      period = lcm(period, a.modulus() * (m / abs(c)));
    } else if (c > 0) {
      ++hi;
    } else {
      ++lo;
    }
  }
  return period * (1 + std::min(lo, hi));
}

Formula eliminate_rec(const Formula& f, EliminationTrace* trace, const EliminationOptions& options) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Leq:
    case Kind::Cong:
      return f;
    case Kind::Not:
      return Formula::negation(eliminate_rec(f.child(), trace, options));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(eliminate_rec(c, trace, options));
      return f.kind() == Kind::And ? Formula::conjunction(std::move(kids))
                                   : Formula::disjunction(std::move(kids));
    }
    case Kind::Implies:
      return Formula::implies(eliminate_rec(f.child(0), trace, options),
                              eliminate_rec(f.child(1), trace, options));
    case Kind::Exists:
    case Kind::Forall:
      break;
  }

  const Kind q = f.kind();
  std::vector<Var> block;
  Formula inner = f;
  while (inner.kind() == q) {
    block.push_back(inner.bound_var());
    inner = inner.body();
  }
  Formula psi = eliminate_rec(inner, trace, options);
  if (q == Kind::Forall) psi = Formula::negation(psi);
  psi = clean(to_nnf(psi), options);

  while (!block.empty()) {
    std::size_t pick = block.size() - 1;  // innermost
    if (options.reorder_blocks && block.size() > 1) {
      Integer best = elimination_cost(psi, block[pick]);
      for (std::size_t i = block.size() - 1; i-- > 0;) {
        Integer c = elimination_cost(psi, block[i]);
        if (c < best) {
          best = c;
          pick = i;
        }
      }
    }
    Var x = block[pick];
    block.erase(block.begin() + static_cast<std::ptrdiff_t>(pick));
    psi = exists_qf(x, psi, q, trace, options);
  }
  if (q == Kind::Forall) psi = clean(to_nnf(Formula::negation(psi)), options);
  return psi;
}

}  // namespace

LiteralClass classify(const Formula& literal, Var x) {
  const bool negated = literal.kind() == Kind::Not;
  const Formula& atom = negated ? literal.child() : literal;
  if (!atom.is_atom() || (negated && atom.kind() != Kind::Cong))
    throw FormulaError("classify expects a literal, got " + to_string(literal));
  Integer c = atom.term().coefficient(x);
  if (c == 0) return LiteralClass::Absent;
  if (abs(c) != 1)
    throw FormulaError("coefficient of " + x.name() + " is not +-1 in " + to_string(literal));
  if (atom.kind() == Kind::Cong) return negated ? LiteralClass::NegCong : LiteralClass::Cong;
  return c > 0 ? LiteralClass::UpperBound : LiteralClass::LowerBound;
}

NormalizedTarget normalize_target(const Formula& phi_nnf, Var x) {
  for (Var b : bound_variables(phi_nnf))
    if (b == x) throw FormulaError(x.name() + " is bound inside the formula");
  Integer m = 1;
  for (const auto& a : atoms_with(phi_nnf, x)) m = lcm(m, a.term().coefficient(x));
  Var xp = Var::fresh(x.name());
  Formula body = map_atoms(phi_nnf, [&](const Formula& a) {
    Integer c = a.term().coefficient(x);
    if (c == 0) return a;
    Integer k = m / abs(c);
    LinearTerm t = a.term().without(x) * k;
    t += LinearTerm(xp, c > 0 ? 1 : -1);
    return a.kind() == Kind::Leq ? Formula::leq(std::move(t))
                                 : Formula::cong(a.modulus() * k, std::move(t));
  });
  return {Formula::conjunction({std::move(body), Formula::cong(m, LinearTerm(xp, 1))}), xp, m};
}

Formula eliminate_exists(Var x, const Formula& body, EliminationTrace* trace,
                         const EliminationOptions& options) {
  if (!is_quantifier_free(body))
    throw FormulaError("eliminate_exists expects a quantifier-free body");
  return exists_qf(x, body, Kind::Exists, trace, options);
}

Formula eliminate_exists(const Formula& exists_phi, EliminationTrace* trace,
                         const EliminationOptions& options) {
  if (exists_phi.kind() != Kind::Exists)
    throw FormulaError("eliminate_exists expects an existential formula");
  return eliminate_exists(exists_phi.bound_var(), exists_phi.body(), trace, options);
}

Formula eliminate_all(const Formula& phi, EliminationTrace* trace,
                      const EliminationOptions& options) {
  return clean(to_nnf(eliminate_rec(phi, trace, options)), options);
}

bool decide_sentence(const Formula& phi, EliminationTrace* trace,
                     const EliminationOptions& options) {
  auto free = free_variables(phi);
  if (!free.empty()) throw FormulaError("sentence has free variable " + free.front().name());
  Formula r = simplify(eliminate_all(phi, trace, options));
  return evaluate(r, {});
}

}  // namespace pa
