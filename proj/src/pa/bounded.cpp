#include "pa/bounded.hpp"

#include "pa/simplify.hpp"

#include <algorithm>
#include <optional>

namespace pa {

namespace {

using Bound = std::optional<Integer>;

struct Range {
  Bound lo, hi;
  [[nodiscard]] bool empty() const { return lo && hi && *lo > *hi; }
  [[nodiscard]] bool finite() const { return lo && hi; }
  bool tighten_lo(const Integer& v) {
    if (lo && *lo >= v) return false;
    lo = v;
    return true;
  }
  bool tighten_hi(const Integer& v) {
    if (hi && *hi <= v) return false;
    hi = v;
    return true;
  }
};

// sum coef[k] * x_k + c <= 0 over block indices.
struct Row {
  std::vector<std::pair<std::size_t, Integer>> coef;
  Integer c;
};

// Conjuncts whose conjunction is equivalent to g, or to !g when negated.
void split(const Formula& g, bool negated, std::vector<Formula>& out) {
  switch (g.kind()) {
    case Kind::True:
      if (negated) out.push_back(Formula::bottom());
      return;
    case Kind::False:
      if (!negated) out.push_back(Formula::bottom());
      return;
    case Kind::And:
      if (negated) break;
      for (const auto& c : g.children()) split(c, false, out);
      return;
    case Kind::Or:
      if (!negated) break;
      for (const auto& c : g.children()) split(c, true, out);
      return;
    case Kind::Implies:
      if (!negated) break;
      split(g.child(0), false, out);
      split(g.child(1), true, out);
      return;
    case Kind::Not:
      split(g.child(), !negated, out);
      return;
    case Kind::Leq:
      if (!negated) break;
      out.push_back(Formula::leq(-g.term() + Integer(1)));
      return;
    default:
      break;
  }
  out.push_back(negated ? Formula::negation(g) : g);
}

LinearTerm instantiate_term(const LinearTerm& t, const Assignment& a, bool& changed) {
  bool any = false;
  for (const auto& [v, k] : t.monomials()) {
    if (a.contains(v)) {
      any = true;
      break;
    }
  }
  if (!any) return t;
  changed = true;
  std::vector<LinearTerm::Monomial> keep;
  Integer c = t.constant();
  for (const auto& [v, k] : t.monomials()) {
    if (const Integer* val = a.find(v)) {
      c += k * *val;
    } else {
      keep.emplace_back(v, k);
    }
  }
  return LinearTerm::from(std::move(keep), std::move(c));
}

std::uint64_t mask_of(const std::vector<Var>& vars) {
  std::uint64_t m = 0;
  for (Var v : vars) m |= var_bit(v);
  return m;
}

// Instantiates and folds constant atoms and connectives on the way up.
// Subtrees whose mask misses every assigned variable are shared unchanged.
Formula fold(const Formula& phi, const Assignment& a, std::uint64_t mask) {
  if ((phi.var_mask() & mask) == 0) return phi;
  switch (phi.kind()) {
    case Kind::Leq:
    case Kind::Cong: {
      bool changed = false;
      LinearTerm t = instantiate_term(phi.term(), a, changed);
      if (!changed) return phi;
      if (t.is_constant()) {
        if (phi.kind() == Kind::Leq) return Formula::constant(t.constant() <= 0);
        return Formula::constant(mod_floor(t.constant(), phi.modulus()) == 0);
      }
      return phi.kind() == Kind::Leq ? Formula::leq(std::move(t))
                                     : Formula::cong(phi.modulus(), std::move(t));
    }
    case Kind::Not: {
      Formula c = fold(phi.child(), a, mask);
      if (c.is_constant()) return Formula::constant(c.kind() == Kind::False);
      return c.same_node(phi.child()) ? phi : Formula::negation(std::move(c));
    }
    case Kind::Implies: {
      Formula p = fold(phi.child(0), a, mask);
      if (p.kind() == Kind::False) return Formula::top();
      Formula q = fold(phi.child(1), a, mask);
      if (p.kind() == Kind::True) return q;
      if (q.kind() == Kind::True) return q;
      if (q.kind() == Kind::False) return Formula::negation(std::move(p));
      if (p.same_node(phi.child(0)) && q.same_node(phi.child(1))) return phi;
      return Formula::implies(std::move(p), std::move(q));
    }
    case Kind::And:
    case Kind::Or: {
      const bool conj = phi.kind() == Kind::And;
      const Kind absorbing = conj ? Kind::False : Kind::True;
      const Kind neutral = conj ? Kind::True : Kind::False;
      std::vector<Formula> kids;
      bool changed = false;
      for (const auto& c : phi.children()) {
        Formula k = fold(c, a, mask);
        if (k.kind() == absorbing) return k;
        changed |= !k.same_node(c);
        if (k.kind() != neutral) kids.push_back(std::move(k));
      }
      if (!changed) return phi;
      return conj ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall: {
      if (a.contains(phi.bound_var()))
        throw FormulaError("instantiate: " + phi.bound_var().name() + " is bound");
      Formula body = fold(phi.body(), a, mask);
      if (body.is_constant()) return body;
      if (body.same_node(phi.body())) return phi;
      return phi.kind() == Kind::Exists ? Formula::exists(phi.bound_var(), std::move(body))
                                        : Formula::forall(phi.bound_var(), std::move(body));
    }
    default:
      return phi;
  }
}

std::optional<std::size_t> index_of(const std::vector<Var>& vars, Var v) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return i;
  return std::nullopt;
}

// Inequality atoms of a conjunct (or of one disjunct) as rows over `vars`.
// Atoms mentioning anything else are skipped.
void collect_rows(const Formula& f, const std::vector<Var>& vars, std::vector<Row>& out) {
  if (f.kind() == Kind::And) {
    for (const auto& c : f.children()) collect_rows(c, vars, out);
    return;
  }
  if (f.kind() != Kind::Leq) return;
  Row r{{}, f.term().constant()};
  for (const auto& [v, k] : f.term().monomials()) {
    auto i = index_of(vars, v);
    if (!i) return;
    r.coef.emplace_back(*i, k);
  }
  if (!r.coef.empty()) out.push_back(std::move(r));
}

// Bound on x_k implied by one row, given ranges for the others and fixed
// values for the assigned ones.
void implied(const Row& r, std::size_t k, const std::vector<Range>& ranges,
             const std::vector<std::optional<Integer>>& fixed, Bound& lo, Bound& hi) {
  Integer rhs = -r.c;
  Integer ak = 0;
  for (const auto& [j, a] : r.coef) {
    if (j == k) {
      ak = a;
      continue;
    }
    if (fixed[j]) {
      rhs -= a * *fixed[j];
      continue;
    }
    const Bound& b = a > 0 ? ranges[j].lo : ranges[j].hi;
    if (!b) return;
    rhs -= a * *b;
  }
  if (ak > 0) {
    hi = floor_div(rhs, ak);
  } else if (ak < 0) {
    lo = ceil_div(rhs, ak);
  }
}

// Block variables occurring free in f, skipping subtrees by mask.
void occurrences(const Formula& f, const std::vector<Var>& vars, std::uint64_t mask,
                 std::vector<Var>& bound, std::vector<std::size_t>& out) {
  if ((f.var_mask() & mask) == 0) return;
  if (f.is_atom()) {
    for (const auto& [v, k] : f.term().monomials()) {
      if ((var_bit(v) & mask) == 0) continue;
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
      if (auto i = index_of(vars, v)) out.push_back(*i);
    }
    return;
  }
  if (f.is_quantifier()) {
    bound.push_back(f.bound_var());
    occurrences(f.body(), vars, mask, bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& c : f.children()) occurrences(c, vars, mask, bound, out);
}

struct Block {
  std::vector<Var> vars;
  std::vector<Formula> conjuncts;
  std::vector<std::vector<std::size_t>> occurs;  // block indices per conjunct
  std::vector<bool> local;                       // quantifier-free
  std::vector<Row> rows;
  std::vector<std::vector<std::size_t>> rows_of;  // rows mentioning each variable
  std::vector<std::vector<std::vector<Row>>> alternatives;  // per Or conjunct
  std::vector<Range> ranges;
  bool contradictory = false;

  Block(std::vector<Var> v, std::vector<Formula> c) : vars(std::move(v)), conjuncts(std::move(c)) {
    const std::uint64_t mask = mask_of(vars);
    std::vector<Var> bound;
    for (const auto& f : conjuncts) {
      if (f.kind() == Kind::False) contradictory = true;
      std::vector<std::size_t> idx;
      occurrences(f, vars, mask, bound, idx);
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      occurs.push_back(std::move(idx));
      local.push_back(is_quantifier_free(f));
      if (!local.back()) continue;
      if (f.kind() == Kind::Leq) {
        collect_rows(f, vars, rows);
      } else if (f.kind() == Kind::Or) {
        std::vector<std::vector<Row>> alts;
        for (const auto& d : f.children()) {
          alts.emplace_back();
          collect_rows(d, vars, alts.back());
        }
        alternatives.push_back(std::move(alts));
      }
    }
    ranges.assign(vars.size(), Range{});
    rows_of.assign(vars.size(), {});
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [k, c] : rows[r].coef) rows_of[k].push_back(r);
  }

  // Constant bounds by repeated propagation. False when some range is empty.
  bool propagate() {
    const std::vector<std::optional<Integer>> none(vars.size());
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (const auto& r : rows) {
        for (const auto& [k, a] : r.coef) {
          Bound lo, hi;
          implied(r, k, ranges, none, lo, hi);
          if (lo) changed |= ranges[k].tighten_lo(*lo);
          if (hi) changed |= ranges[k].tighten_hi(*hi);
          if (ranges[k].empty()) return false;
        }
      }
      // Hull of the bounds each alternative of a disjunction implies.
      for (const auto& alts : alternatives) {
        for (std::size_t k = 0; k < vars.size(); ++k) {
          Bound lo_hull, hi_hull;
          bool lo_all = true, hi_all = true;
          for (const auto& alt : alts) {
            Range own = ranges[k];
            for (const auto& r : alt) {
              Bound lo, hi;
              implied(r, k, ranges, none, lo, hi);
              if (lo) own.tighten_lo(*lo);
              if (hi) own.tighten_hi(*hi);
            }
            if (own.empty()) continue;  // this alternative is impossible
            if (!own.lo) lo_all = false;
            else if (!lo_hull || *own.lo < *lo_hull) lo_hull = own.lo;
            if (!own.hi) hi_all = false;
            else if (!hi_hull || *own.hi > *hi_hull) hi_hull = own.hi;
          }
          if (!lo_hull && !hi_hull && lo_all && hi_all) return false;  // every alternative empty
          if (lo_all && lo_hull) changed |= ranges[k].tighten_lo(*lo_hull);
          if (hi_all && hi_hull) changed |= ranges[k].tighten_hi(*hi_hull);
          if (ranges[k].empty()) return false;
        }
      }
      if (!changed) break;
    }
    return true;
  }

  // Occurs only in quantifier-free conjuncts that mention nothing else.
  [[nodiscard]] bool floating(std::size_t k) const {
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
      const auto& occ = occurs[i];
      if (!std::binary_search(occ.begin(), occ.end(), k)) continue;
      if (!local[i] || occ.size() != 1) return false;
    }
    return true;
  }

  [[nodiscard]] bool occurs_at_all(std::size_t k) const {
    for (const auto& occ : occurs)
      if (std::binary_search(occ.begin(), occ.end(), k)) return true;
    return false;
  }
};

Formula point_formula(const std::vector<Var>& vars, const std::vector<std::size_t>& which,
                      const Assignment& a) {
  std::vector<Formula> eqs;
  for (std::size_t k : which)
    eqs.push_back(Formula::equal(LinearTerm(vars[k], 1), LinearTerm(a.at(vars[k]))));
  return Formula::conjunction(std::move(eqs));
}

}  // namespace

Formula instantiate(const Formula& phi, const Assignment& values) {
  switch (phi.kind()) {
    case Kind::True:
    case Kind::False:
      return phi;
    case Kind::Leq: {
      bool changed = false;
      LinearTerm t = instantiate_term(phi.term(), values, changed);
      return changed ? Formula::leq(std::move(t)) : phi;
    }
    case Kind::Cong: {
      bool changed = false;
      LinearTerm t = instantiate_term(phi.term(), values, changed);
      return changed ? Formula::cong(phi.modulus(), std::move(t)) : phi;
    }
    case Kind::Not: {
      Formula c = instantiate(phi.child(), values);
      return c.same_node(phi.child()) ? phi : Formula::negation(std::move(c));
    }
    case Kind::Implies: {
      Formula a = instantiate(phi.child(0), values);
      Formula b = instantiate(phi.child(1), values);
      if (a.same_node(phi.child(0)) && b.same_node(phi.child(1))) return phi;
      return Formula::implies(std::move(a), std::move(b));
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      bool changed = false;
      for (const auto& c : phi.children()) {
        kids.push_back(instantiate(c, values));
        changed |= !kids.back().same_node(c);
      }
      if (!changed) return phi;
      return phi.kind() == Kind::And ? Formula::conjunction(std::move(kids))
                                     : Formula::disjunction(std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall: {
      if (values.contains(phi.bound_var()))
        throw FormulaError("instantiate: " + phi.bound_var().name() + " is bound");
      Formula body = instantiate(phi.body(), values);
      if (body.same_node(phi.body())) return phi;
      return phi.kind() == Kind::Exists ? Formula::exists(phi.bound_var(), std::move(body))
                                        : Formula::forall(phi.bound_var(), std::move(body));
    }
  }
  return phi;
}

void BoundedDecider::tick() {
  if (++stats_.points > options_.max_points)
    throw ResourceExhausted("bounded expansion exceeds " + std::to_string(options_.max_points) +
                            " points");
}

bool BoundedDecider::decide(const Formula& sentence) {
  if (!free_variables(sentence).empty())
    throw FormulaError("decide expects a sentence without free variables");
  return decide_rec(simplify(sentence));
}

bool BoundedDecider::decide_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leq:
    case Kind::Cong:
      return evaluate_atom(f, Assignment{});
    case Kind::Not:
      return !decide_rec(f.child());
    case Kind::And:
      for (const auto& c : f.children())
        if (!decide_rec(c)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : f.children())
        if (decide_rec(c)) return true;
      return false;
    case Kind::Implies:
      return !decide_rec(f.child(0)) || decide_rec(f.child(1));
    case Kind::Exists:
    case Kind::Forall: {
      if (auto it = memo_.find(f); it != memo_.end()) {
        ++stats_.memo_hits;
        return it->second;
      }
      bool r = block(f);
      memo_.emplace(f, r);
      return r;
    }
  }
  return false;
}

bool BoundedDecider::block(const Formula& f) {
  const Kind q = f.kind();
  std::vector<Var> vars;
  const Formula* g = &f;
  while (g->kind() == q) {
    vars.push_back(g->bound_var());
    g = &g->body();
  }
  std::vector<Formula> conjuncts;
  split(*g, q == Kind::Forall, conjuncts);
  bool r = exists_block(std::move(vars), std::move(conjuncts));
  return q == Kind::Exists ? r : !r;
}

namespace {

// Some value satisfies every conjunct (each mentions only x).
bool alone_satisfiable(Var x, const Range& range, const std::vector<Formula>& conjuncts,
                       const EliminationOptions& fallback) {
  // The range already reflects every inequality on x.
  const bool only_bounds = std::all_of(conjuncts.begin(), conjuncts.end(),
                                       [](const Formula& c) { return c.kind() == Kind::Leq; });
  if (only_bounds) return !range.empty();
  if (range.finite() && *range.hi - *range.lo <= 4096) {
    Assignment a;
    for (Integer v = *range.lo; v <= *range.hi; ++v) {
      a.set(x, v);
      bool all = true;
      for (const auto& c : conjuncts) {
        if (!evaluate(c, a)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }
  return decide_sentence(Formula::exists(x, Formula::conjunction(conjuncts)), nullptr, fallback);
}

}  // namespace

bool BoundedDecider::exists_block(std::vector<Var> vars, std::vector<Formula> conjuncts) {
  Block b(std::move(vars), std::move(conjuncts));
  if (b.contradictory || !b.propagate()) return false;

  const std::size_t n = b.vars.size();
  std::vector<bool> consumed(b.conjuncts.size(), false);
  std::vector<std::size_t> bounded, unbounded;
  for (std::size_t k = 0; k < n; ++k) {
    if (!b.occurs_at_all(k)) continue;
    if (b.floating(k)) {
      std::vector<Formula> own;
      for (std::size_t i = 0; i < b.conjuncts.size(); ++i) {
        if (b.occurs[i].size() == 1 && b.occurs[i][0] == k) {
          own.push_back(b.conjuncts[i]);
          consumed[i] = true;
        }
      }
      if (!alone_satisfiable(b.vars[k], b.ranges[k], own, options_.fallback)) return false;
      continue;
    }
    (b.ranges[k].finite() ? bounded : unbounded).push_back(k);
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < b.conjuncts.size(); ++i)
    if (!consumed[i]) pending.push_back(i);

  if (bounded.empty() && !unbounded.empty()) {
    ++stats_.fallbacks;
    std::vector<Formula> parts;
    for (std::size_t i : pending) parts.push_back(b.conjuncts[i]);
    std::vector<Var> open;
    for (std::size_t k : unbounded) open.push_back(b.vars[k]);
    return decide_sentence(Formula::exists(open, Formula::conjunction(std::move(parts))), nullptr,
                           options_.fallback);
  }

  // Conjuncts fully determined by the enumerated variables are evaluated
  // directly; the rest are instantiated and decided.
  std::vector<bool> is_bounded(n, false);
  for (std::size_t k : bounded) is_bounded[k] = true;
  std::vector<std::size_t> direct, residual;
  for (std::size_t i : pending) {
    bool all = b.local[i];
    for (std::size_t k : b.occurs[i]) all = all && is_bounded[k];
    (all ? direct : residual).push_back(i);
  }
  std::vector<Var> open;
  for (std::size_t k : unbounded) open.push_back(b.vars[k]);

  std::vector<std::optional<Integer>> fixed(n);
  Assignment a;
  std::vector<Var> enumerated;
  for (std::size_t k : bounded) enumerated.push_back(b.vars[k]);
  const std::uint64_t mask = mask_of(enumerated);
  auto leaf = [&]() -> bool {
    tick();
    for (std::size_t i : direct)
      if (!evaluate(b.conjuncts[i], a)) return false;
    if (open.empty()) {
      for (std::size_t i : residual)
        if (!decide_rec(fold(b.conjuncts[i], a, mask))) return false;
      return true;
    }
    std::vector<Formula> parts;
    for (std::size_t i : residual) parts.push_back(fold(b.conjuncts[i], a, mask));
    return decide_rec(Formula::exists(open, Formula::conjunction(std::move(parts))));
  };
  auto dfs = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == bounded.size()) return leaf();
    const std::size_t k = bounded[depth];
    Range r = b.ranges[k];
    for (std::size_t ri : b.rows_of[k]) {
      Bound lo, hi;
      implied(b.rows[ri], k, b.ranges, fixed, lo, hi);
      if (lo) r.tighten_lo(*lo);
      if (hi) r.tighten_hi(*hi);
    }
    if (r.empty()) return false;
    for (Integer v = *r.lo; v <= *r.hi; ++v) {
      fixed[k] = v;
      a.set(b.vars[k], v);
      if (self(self, depth + 1)) return true;
    }
    fixed[k].reset();
    a.erase(b.vars[k]);
    return false;
  };
  return dfs(dfs, 0);
}

Formula BoundedDecider::eliminate(const Formula& phi, std::span<const Var> order) {
  Formula f = simplify(phi);
  std::vector<Var> vars;
  std::vector<Var> free = free_variables(f);
  for (Var v : order)
    if (std::find(free.begin(), free.end(), v) != free.end()) vars.push_back(v);
  for (Var v : free)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  if (f.kind() == Kind::Or) {
    std::vector<Formula> parts;
    for (const auto& c : f.children()) {
      std::vector<Formula> conj;
      split(c, false, conj);
      parts.push_back(eliminate_conjunction(vars, std::move(conj)));
    }
    return simplify(Formula::disjunction(std::move(parts)));
  }
  std::vector<Formula> conj;
  split(f, false, conj);
  return eliminate_conjunction(std::move(vars), std::move(conj));
}

Formula BoundedDecider::eliminate_conjunction(std::vector<Var> vars,
                                              std::vector<Formula> conjuncts) {
  Block b(std::move(vars), std::move(conjuncts));
  if (b.contradictory || !b.propagate()) return Formula::bottom();

  const std::size_t n = b.vars.size();
  std::vector<bool> consumed(b.conjuncts.size(), false);
  std::vector<Formula> kept;  // constraints of variables left symbolic
  std::vector<std::size_t> bounded, unbounded;
  for (std::size_t k = 0; k < n; ++k) {
    if (!b.occurs_at_all(k)) continue;
    if (b.floating(k)) {
      std::vector<Formula> own;
      for (std::size_t i = 0; i < b.conjuncts.size(); ++i) {
        if (b.occurs[i].size() == 1 && b.occurs[i][0] == k) {
          own.push_back(b.conjuncts[i]);
          consumed[i] = true;
        }
      }
      if (!alone_satisfiable(b.vars[k], b.ranges[k], own, options_.fallback))
        return Formula::bottom();
      kept.insert(kept.end(), own.begin(), own.end());
      continue;
    }
    (b.ranges[k].finite() ? bounded : unbounded).push_back(k);
  }
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < b.conjuncts.size(); ++i)
    if (!consumed[i]) pending.push_back(i);

  if (bounded.empty()) {
    std::vector<Formula> parts;
    for (std::size_t i : pending) parts.push_back(b.conjuncts[i]);
    Formula rest = Formula::conjunction(std::move(parts));
    if (!unbounded.empty()) {
      ++stats_.fallbacks;
      rest = eliminate_all(rest, nullptr, options_.fallback);
    } else {
      rest = Formula::constant(decide_rec(simplify(rest)));
    }
    kept.push_back(rest);
    return simplify(Formula::conjunction(std::move(kept)));
  }

  std::vector<bool> is_bounded(n, false);
  for (std::size_t k : bounded) is_bounded[k] = true;
  std::vector<std::size_t> direct, residual;
  for (std::size_t i : pending) {
    bool all = b.local[i];
    for (std::size_t k : b.occurs[i]) all = all && is_bounded[k];
    (all ? direct : residual).push_back(i);
  }
  std::vector<Var> open;
  for (std::size_t k : unbounded) open.push_back(b.vars[k]);

  std::vector<Formula> points;
  std::vector<std::optional<Integer>> fixed(n);
  Assignment a;
  std::vector<Var> enumerated;
  for (std::size_t k : bounded) enumerated.push_back(b.vars[k]);
  const std::uint64_t mask = mask_of(enumerated);
  auto leaf = [&] {
    tick();
    for (std::size_t i : direct)
      if (!evaluate(b.conjuncts[i], a)) return;
    if (open.empty()) {
      for (std::size_t i : residual)
        if (!decide_rec(fold(b.conjuncts[i], a, mask))) return;
      points.push_back(point_formula(b.vars, bounded, a));
      return;
    }
    std::vector<Formula> parts;
    for (std::size_t i : residual) parts.push_back(fold(b.conjuncts[i], a, mask));
    Formula inner = simplify(Formula::conjunction(std::move(parts)));
    std::vector<Formula> conj;
    split(inner, false, conj);
    Formula psi = eliminate_conjunction(open, std::move(conj));
    if (psi.kind() == Kind::False) return;
    points.push_back(Formula::conjunction({point_formula(b.vars, bounded, a), psi}));
  };
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == bounded.size()) {
      leaf();
      return;
    }
    const std::size_t k = bounded[depth];
    Range r = b.ranges[k];
    for (std::size_t ri : b.rows_of[k]) {
      Bound lo, hi;
      implied(b.rows[ri], k, b.ranges, fixed, lo, hi);
      if (lo) r.tighten_lo(*lo);
      if (hi) r.tighten_hi(*hi);
    }
    if (!r.empty()) {
      for (Integer v = *r.lo; v <= *r.hi; ++v) {
        fixed[k] = v;
        a.set(b.vars[k], v);
        self(self, depth + 1);
      }
    }
    fixed[k].reset();
    a.erase(b.vars[k]);
  };
  dfs(dfs, 0);
  kept.push_back(Formula::disjunction(std::move(points)));
  return Formula::conjunction(std::move(kept));
}

bool decide_bounded(const Formula& sentence, const BoundedOptions& options) {
  BoundedDecider d(options);
  return d.decide(sentence);
}

Formula eliminate_bounded(const Formula& phi, std::span<const Var> order,
                          const BoundedOptions& options) {
  BoundedDecider d(options);
  return d.eliminate(phi, order);
}

}  // namespace pa
