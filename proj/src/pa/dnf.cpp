#include "pa/dnf.hpp"

#include "pa/cooper.hpp"
#include "pa/simplify.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace pa {

namespace {

using Literals = std::vector<Formula>;  // sorted by compare(), no duplicates

bool formula_less(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

struct LinearPartLess {
  bool operator()(const LinearTerm& a, const LinearTerm& b) const {
    return compare_linear_part(a, b) < 0;
  }
};

// Syntactic unsatisfiability of a literal set.
bool contradictory(const Literals& lits) {
  std::map<LinearTerm, Integer, LinearPartLess> tightest;
  std::map<std::pair<Integer, LinearTerm>, std::pair<Integer, bool>,
           decltype([](const std::pair<Integer, LinearTerm>& a,
                       const std::pair<Integer, LinearTerm>& b) {
             if (a.first != b.first) return a.first < b.first;
             return compare_linear_part(a.second, b.second) < 0;
           })>
      positive;
  for (const auto& l : lits) {
    if (l.kind() == Kind::False) return true;
    if (l.kind() == Kind::Leq) {
      const LinearTerm& t = l.term();
      if (t.is_constant()) {
        if (t.constant() > 0) return true;
        continue;
      }
      auto [it, inserted] = tightest.emplace(t, t.constant());
      if (!inserted && t.constant() > it->second) it->second = t.constant();
    } else if (l.kind() == Kind::Cong) {
      auto key = std::make_pair(l.modulus(), l.term());
      auto [it, inserted] = positive.emplace(key, std::make_pair(l.term().constant(), true));
      if (!inserted && it->second.first != l.term().constant()) return true;
    }
  }
  for (const auto& [t, c] : tightest) {
    auto opp = tightest.find(-t);
    if (opp != tightest.end() && c + opp->second > 0) return true;
  }
  for (const auto& l : lits) {
    if (l.kind() != Kind::Not) continue;
    const Formula& a = l.child();
    auto it = positive.find(std::make_pair(a.modulus(), a.term()));
    if (it != positive.end() && it->second.first == a.term().constant()) return true;
  }
  return false;
}

Literals merge(const Literals& a, const Literals& b) {
  Literals out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), formula_less);
  return out;
}

struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return a == b; }
};

class DnfBuilder {
 public:
  explicit DnfBuilder(const DnfOptions& options) : options_(options) {}

  const std::vector<Literals>& build(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    std::vector<Literals> out;
    switch (f.kind()) {
      case Kind::True:
        out.emplace_back();
        break;
      case Kind::False:
        break;
      case Kind::Leq:
      case Kind::Cong:
      case Kind::Not: {
        Literals single{f};
        if (!contradictory(single)) out.push_back(std::move(single));
        break;
      }
      case Kind::Or:
        for (const auto& c : f.children()) {
          const auto& part = build(c);
          out.insert(out.end(), part.begin(), part.end());
          guard(out.size());
        }
        break;
      case Kind::And: {
        out.emplace_back();
        for (const auto& c : f.children()) {
          const auto& part = build(c);
          std::vector<Literals> next;
          for (const auto& left : out) {
            for (const auto& right : part) {
              Literals m = merge(left, right);
              if (!contradictory(m)) next.push_back(std::move(m));
              guard(next.size());
            }
          }
          out = std::move(next);
          if (out.empty()) break;
        }
        break;
      }
      default:
        throw FormulaError("to_dnf expects a quantifier-free formula in negation normal form");
    }
    return memo_.emplace(f, std::move(out)).first->second;
  }

 private:
  void guard(std::size_t n) const {
    if (n > options_.max_conjuncts)
      throw ResourceExhausted("disjunctive normal form exceeds " +
                              std::to_string(options_.max_conjuncts) + " conjuncts");
  }

  const DnfOptions& options_;
  std::unordered_map<Formula, std::vector<Literals>, std::hash<Formula>, FormulaEq> memo_;
};

std::vector<Literals> drop_subsumed(std::vector<Literals> all) {
  std::sort(all.begin(), all.end(), [](const Literals& a, const Literals& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), formula_less);
  });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<Literals> kept;
  for (auto& c : all) {
    bool subsumed = false;
    for (const auto& k : kept) {
      if (std::includes(c.begin(), c.end(), k.begin(), k.end(), formula_less)) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) kept.push_back(std::move(c));
  }
  return kept;
}

Conjunct to_conjunct(const Literals& lits) {
  Conjunct c;
  for (const auto& l : lits) {
    if (l.kind() == Kind::Leq) {
      c.leq.push_back(l.term());
    } else if (l.kind() == Kind::Cong) {
      c.congs.push_back({l.modulus(), l.term(), false});
    } else {
      c.congs.push_back({l.child().modulus(), l.child().term(), true});
    }
  }
  return c;
}

}  // namespace

Formula Conjunct::to_formula() const {
  std::vector<Formula> parts;
  for (const auto& t : leq) parts.push_back(Formula::leq(t));
  for (const auto& c : congs) {
    Formula a = Formula::cong(c.modulus, c.term);
    parts.push_back(c.negated ? Formula::negation(a) : a);
  }
  return Formula::conjunction(std::move(parts));
}

std::vector<Conjunct> to_dnf(const Formula& psi, const DnfOptions& options) {
  if (!is_quantifier_free(psi)) throw FormulaError("to_dnf expects a quantifier-free formula");
  Formula nnf = simplify(to_nnf(psi));
  DnfBuilder builder(options);
  std::vector<Literals> raw = builder.build(nnf);
  std::sort(raw.begin(), raw.end(), [](const Literals& a, const Literals& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), formula_less);
  });
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  if (options.subsumption && raw.size() <= 4000) raw = drop_subsumed(std::move(raw));

  std::vector<std::pair<std::string, Conjunct>> keyed;
  keyed.reserve(raw.size());
  for (const auto& lits : raw) {
    Conjunct c = to_conjunct(lits);
    keyed.emplace_back(to_string(c.to_formula()), std::move(c));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Conjunct> out;
  out.reserve(keyed.size());
  for (auto& [key, c] : keyed) out.push_back(std::move(c));
  return out;
}

bool LinearSystem::satisfied_by(const Assignment& values) const {
  for (const auto& r : rows)
    if (r.evaluate(values) > 0) return false;
  return true;
}

LinearSystem linearize(const Conjunct& conj, std::span<const Var> original) {
  LinearSystem sys;
  sys.vars.assign(original.begin(), original.end());
  auto note = [&](const LinearTerm& t) {
    for (const auto& [v, c] : t.monomials())
      if (std::find(sys.vars.begin(), sys.vars.end(), v) == sys.vars.end()) sys.vars.push_back(v);
  };
  for (const auto& t : conj.leq) note(t);
  for (const auto& c : conj.congs) note(c.term);
  sys.original = sys.vars.size();

  sys.rows = conj.leq;
  auto equal_zero = [&](const LinearTerm& t) {
    sys.rows.push_back(t);
    sys.rows.push_back(-t);
  };
  for (const auto& c : conj.congs) {
    const Integer& p = c.modulus;
    if (p == 1) {
      if (c.negated) sys.rows.emplace_back(Integer(1));  // 1 <= 0
      continue;
    }
    Var z = Var::fresh("z");
    sys.vars.push_back(z);
    if (!c.negated) {
      // p*z - (a.y + c) = 0
      equal_zero(LinearTerm(z, p) - c.term);
      continue;
    }
    Var r = Var::fresh("r");
    sys.vars.push_back(r);
    LinearTerm linear = c.term.with_constant(0);
    Integer b = mod_floor(-c.term.constant(), p);
    // p*z - a.y + z' = 0, b + 1 <= z' <= b + p - 1
    equal_zero(LinearTerm(z, p) - linear + LinearTerm(r, 1));
    sys.rows.push_back(LinearTerm(r, -1, b + 1));
    sys.rows.push_back(LinearTerm(r, 1, -(b + p - 1)));
  }
  return sys;
}

}  // namespace pa
