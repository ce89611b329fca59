#include "pa/simplify.hpp"

#include <map>
#include <unordered_set>

namespace pa {

namespace {

Integer symmetric_residue(const Integer& a, const Integer& p) {
  Integer r = mod_floor(a, p);
  if (2 * r > p) r -= p;
  return r;
}

Formula normalize_leq(const LinearTerm& t) {
  if (t.is_constant()) return Formula::constant(t.constant() <= 0);
  Integer g = t.content();
  if (g == 1) return Formula::leq(t);
  LinearTerm reduced = t.with_constant(0).divided_exactly(g);
  reduced += ceil_div(t.constant(), g);
  return Formula::leq(std::move(reduced));
}

Formula normalize_cong(const Integer& modulus, const LinearTerm& t) {
  const Integer& p = modulus;
  if (p == 1) return Formula::top();
  std::vector<LinearTerm::Monomial> mons;
  mons.reserve(t.monomials().size());
  for (const auto& [v, c] : t.monomials()) {
    Integer r = symmetric_residue(c, p);
    if (r != 0) mons.emplace_back(v, std::move(r));
  }
  Integer c = mod_floor(t.constant(), p);
  if (mons.empty()) return Formula::constant(c == 0);
  if (mons.front().second < 0) {
    for (auto& [v, k] : mons) k = symmetric_residue(-k, p);
    c = mod_floor(-c, p);
  }
  Integer content = 0;
  for (const auto& [v, k] : mons) content = gcd(content, k);
  Integer h = gcd(content, p);
  if (c % h != 0) return Formula::bottom();
  LinearTerm out = LinearTerm::from(std::move(mons), std::move(c));
  if (h == 1) return Formula::cong(p, std::move(out));
  Integer q = p / h;
  if (q == 1) return Formula::top();
  return Formula::cong(q, out.divided_exactly(h));
}

struct LinearPartLess {
  bool operator()(const LinearTerm& a, const LinearTerm& b) const {
    return compare_linear_part(a, b) < 0;
  }
};

struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return a == b; }
};

using FormulaSet = std::unordered_set<Formula, std::hash<Formula>, FormulaEq>;

Formula simp(const Formula& f);

// Shared by conjunction (and_mode) and disjunction.
Formula combine(const Formula& f, bool and_mode) {
  const Kind self = and_mode ? Kind::And : Kind::Or;
  const Kind absorbing = and_mode ? Kind::False : Kind::True;
  const Kind neutral = and_mode ? Kind::True : Kind::False;

  std::vector<Formula> items;
  FormulaSet seen;
  auto add = [&](const Formula& s) -> bool {
    if (s.kind() == absorbing) return false;
    if (s.kind() == neutral) return true;
    if (seen.insert(s).second) items.push_back(s);
    return true;
  };
  for (const auto& c : f.children()) {
    Formula s = simp(c);
    if (s.kind() == self) {
      for (const auto& g : s.children())
        if (!add(g)) return Formula::constant(!and_mode);
    } else if (!add(s)) {
      return Formula::constant(!and_mode);
    }
  }

  // Best inequality per linear part: largest constant in a conjunction
  // (tightest), smallest in a disjunction (loosest).
  std::map<LinearTerm, std::size_t, LinearPartLess> best;
  std::vector<bool> keep(items.size(), true);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind() != Kind::Leq) continue;
    auto [it, inserted] = best.emplace(items[i].term(), i);
    if (inserted) continue;
    const Integer& cur = items[it->second].term().constant();
    const Integer& cand = items[i].term().constant();
    bool better = and_mode ? cand > cur : cand < cur;
    if (better) {
      keep[it->second] = false;
      it->second = i;
    } else {
      keep[i] = false;
    }
  }
  for (const auto& [term, idx] : best) {
    auto opp = best.find(-term);
    if (opp == best.end()) continue;
    Integer sum = term.constant() + items[opp->second].term().constant();
    // Conjunction: -c2 <= L <= -c1 is empty when c1 + c2 > 0.
    // Disjunction: L <= -c1 or L >= c2 covers Z when c1 + c2 <= 1.
    if (and_mode && sum > 0) return Formula::bottom();
    if (!and_mode && sum <= 1) return Formula::top();
  }

  // Congruences over the same modulus and linear part.
  std::map<std::pair<Integer, LinearTerm>, std::size_t,
           decltype([](const std::pair<Integer, LinearTerm>& a,
                       const std::pair<Integer, LinearTerm>& b) {
             if (a.first != b.first) return a.first < b.first;
             return compare_linear_part(a.second, b.second) < 0;
           })>
      positive;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind() != Kind::Cong) continue;
    auto [it, inserted] = positive.emplace(std::make_pair(items[i].modulus(), items[i].term()), i);
    if (!inserted && and_mode) return Formula::bottom();  // distinct residues
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind() != Kind::Not) continue;
    const Formula& atom = items[i].child();
    if (atom.kind() != Kind::Cong) continue;
    auto it = positive.find(std::make_pair(atom.modulus(), atom.term()));
    if (it == positive.end()) continue;
    bool same = items[it->second].term().constant() == atom.term().constant();
    if (same) return Formula::constant(!and_mode);
    // p | L + c  implies  !(p | L + c') for c != c'.
    if (and_mode) keep[i] = false;
    else keep[it->second] = false;
  }

  // Absorption: a & (a | b) == a, a | (a & b) == a, for literal a.
  FormulaSet literals;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (keep[i] && items[i].is_literal()) literals.insert(items[i]);
  if (!literals.empty()) {
    const Kind dual = and_mode ? Kind::Or : Kind::And;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!keep[i] || items[i].kind() != dual) continue;
      for (const auto& g : items[i].children()) {
        if (literals.contains(g)) {
          keep[i] = false;
          break;
        }
      }
    }
  }

  std::vector<Formula> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    if (keep[i]) out.push_back(std::move(items[i]));
  return and_mode ? Formula::conjunction(std::move(out)) : Formula::disjunction(std::move(out));
}

Formula simp(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Leq:
    case Kind::Cong:
      return normalize_atom(f);
    case Kind::Not: {
      const Formula& c = f.child();
      if (c.kind() == Kind::Cong) {
        Formula n = normalize_atom(c);
        if (n.is_constant()) return Formula::constant(n.kind() == Kind::False);
        return Formula::negation(std::move(n));
      }
      return simp(to_nnf(f));
    }
    case Kind::And:
      return combine(f, true);
    case Kind::Or:
      return combine(f, false);
    case Kind::Implies:
      return simp(to_nnf(f));
    case Kind::Exists:
    case Kind::Forall: {
      Formula body = simp(f.body());
      if (!mentions(body, f.bound_var())) return body;
      return f.kind() == Kind::Exists ? Formula::exists(f.bound_var(), std::move(body))
                                      : Formula::forall(f.bound_var(), std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula normalize_atom(const Formula& atom) {
  if (atom.kind() == Kind::Leq) return normalize_leq(atom.term());
  if (atom.kind() == Kind::Cong) return normalize_cong(atom.modulus(), atom.term());
  return atom;
}

Formula simplify(const Formula& phi) { return simp(phi); }

}  // namespace pa
