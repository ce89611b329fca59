#include "pa/minimize.hpp"

#include "pa/cooper.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace pa {

namespace {

using Row = std::vector<Integer>;

// Integer rows a.x <= b. Rows are divided by the gcd of their coefficients
// with the right-hand side rounded down, which keeps the integer points.
struct Problem {
  std::size_t n = 0;
  std::vector<Row> a;
  std::vector<Integer> b;
  bool infeasible = false;

  void add(Row row, const Integer& rhs) {
    Integer g = 0;
    for (const auto& v : row) g = gcd(g, v);
    if (g == 0) {
      if (rhs < 0) infeasible = true;
      return;
    }
    for (auto& v : row) v /= g;
    a.push_back(std::move(row));
    b.push_back(floor_div(rhs, g));
  }

  void add_unit(std::size_t j, const Integer& sign, const Integer& rhs) {
    Row row(n, 0);
    row[j] = sign;
    add(std::move(row), rhs);
  }
};

class Budget {
 public:
  explicit Budget(std::size_t max) : max_(max) {}
  void tick() {
    if (++used_ > max_)
      throw ResourceExhausted("integer minimization exceeds " + std::to_string(max_) + " nodes");
  }
  [[nodiscard]] std::size_t used() const { return used_; }

 private:
  std::size_t max_;
  std::size_t used_ = 0;
};

struct LpResult {
  OptStatus status = OptStatus::Infeasible;
  std::vector<Rational> x;
  Rational value = 0;
  std::vector<Rational> ray;
};

// Two-phase tableau simplex over free variables x = x+ - x-, with one slack
// per row and one artificial per row whose right-hand side is negative.
class Simplex {
 public:
  Simplex(const Problem& p, const Row& c) : n_(p.n), m_(p.a.size()), c_(c) {
    std::size_t artificials = 0;
    for (const auto& rhs : p.b) artificials += rhs < 0 ? 1 : 0;
    real_ = 2 * n_ + m_;
    cols_ = real_ + artificials;
    t_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.resize(m_);
    std::size_t next_art = real_;
    for (std::size_t i = 0; i < m_; ++i) {
      const int sign = p.b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) {
        if (p.a[i][j] == 0) continue;
        t_[i][j] = Rational(sign * p.a[i][j]);
        t_[i][n_ + j] = Rational(-sign * p.a[i][j]);
      }
      t_[i][2 * n_ + i] = sign;
      t_[i][cols_] = Rational(sign * p.b[i]);
      if (sign < 0) {
        t_[i][next_art] = 1;
        basis_[i] = next_art++;
      } else {
        basis_[i] = 2 * n_ + i;
      }
    }
  }

  LpResult solve() {
    if (cols_ > real_) {
      std::vector<Rational> cost(cols_, Rational(0));
      for (std::size_t j = real_; j < cols_; ++j) cost[j] = 1;
      price(cost);
      (void)run(cols_);
      if (-z_[cols_] > 0) return {};
      expel_artificials();
    }
    std::vector<Rational> cost(cols_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) {
      cost[j] = Rational(c_[j]);
      cost[n_ + j] = Rational(-c_[j]);
    }
    price(cost);
    LpResult out;
    if (auto e = run(real_)) {
      out.status = OptStatus::Unbounded;
      std::vector<Rational> dv(cols_, Rational(0));
      dv[*e] = 1;
      for (std::size_t i = 0; i < m_; ++i) dv[basis_[i]] = -t_[i][*e];
      out.ray.resize(n_);
      for (std::size_t j = 0; j < n_; ++j) out.ray[j] = dv[j] - dv[n_ + j];
      return out;
    }
    out.status = OptStatus::Optimal;
    std::vector<Rational> val(cols_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) val[basis_[i]] = t_[i][cols_];
    out.x.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      out.x[j] = val[j] - val[n_ + j];
      out.value += Rational(c_[j]) * out.x[j];
    }
    return out;
  }

 private:
  void price(const std::vector<Rational>& cost) {
    z_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[i][j] != 0) z_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const Rational inv = 1 / t_[r][e];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (t_[r][j] == 0) continue;
      t_[r][j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[e] == 0) return;
      const Rational f = row[e];
      for (std::size_t j : nz) row[j] -= f * t_[r][j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(z_);
    basis_[r] = e;
  }

  // Bland's rule over columns [0, limit). Returns the entering column of an
  // unbounded ray, or nothing at optimality.
  std::optional<std::size_t> run(std::size_t limit) {
    for (;;) {
      std::size_t e = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (z_[j] < 0) {
          e = j;
          break;
        }
      }
      if (e == limit) return std::nullopt;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][e] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][e];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return e;
      pivot(*leave, e);
    }
  }

  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < real_) continue;
      for (std::size_t j = 0; j < real_; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
      // A row with no real entries is redundant; its artificial stays at 0.
    }
  }

  std::size_t n_, m_, real_ = 0, cols_ = 0;
  const Row& c_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
};

Integer floor_of(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

Integer ceil_of(const Rational& q) {
  return ceil_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

// Outcome of one integer minimization: the optimal value, or a status.
struct Value {
  OptStatus status = OptStatus::Infeasible;
  Integer value = 0;
};

class Solver {
 public:
  Solver(std::size_t n, const MinimizeOptions& options)
      : n_(n), budget_(options.max_nodes), fallback_after_(options.fallback_after) {}

  // Branch-and-bound first; past the per-call node threshold, the exact
  // elimination route.
  Value solve(const Problem& p, const Row& c) {
    if (p.infeasible) return {};
    LpResult lp = relax(p, c);
    if (lp.status == OptStatus::Infeasible) return {};
    if (lp.status == OptStatus::Unbounded) {
      // The relaxation has a ray; any integer point makes the problem unbounded.
      Value feasible = solve(p, Row(p.n, 0));
      if (feasible.status == OptStatus::Infeasible) return {};
      return {OptStatus::Unbounded, 0};
    }
    if (auto v = branch_and_bound(p, c, std::move(lp))) return *v;
    return by_elimination(p, c);
  }

  LpResult relax(const Problem& p, const Row& c) {
    budget_.tick();
    if (p.infeasible) return {};
    return Simplex(p, c).solve();
  }

  [[nodiscard]] std::size_t nodes() const { return budget_.used(); }

 private:
  // Depth-first, lowest fractional index, floor side first. Nothing when
  // the node threshold runs out.
  std::optional<Value> branch_and_bound(const Problem& root, const Row& c, LpResult lp) {
    // Per-variable branching bounds; a node keeps only the tightest ones.
    using Bounds = std::vector<std::pair<std::optional<Integer>, std::optional<Integer>>>;
    std::vector<Bounds> stack{Bounds(root.n)};
    std::optional<Integer> incumbent;
    std::size_t nodes = 0;
    bool first = true;
    while (!stack.empty()) {
      Bounds bounds = std::move(stack.back());
      stack.pop_back();
      if (!first) {
        if (++nodes > fallback_after_) return std::nullopt;
        Problem p = root;
        for (std::size_t j = 0; j < root.n; ++j) {
          if (bounds[j].first) p.add_unit(j, -1, -*bounds[j].first);
          if (bounds[j].second) p.add_unit(j, 1, *bounds[j].second);
        }
        lp = relax(p, c);
        if (lp.status != OptStatus::Optimal) continue;
      }
      first = false;
      if (incumbent && ceil_of(lp.value) >= *incumbent) continue;
      std::size_t j = 0;
      while (j < root.n && boost::multiprecision::denominator(lp.x[j]) == 1) ++j;
      if (j == root.n) {
        incumbent = boost::multiprecision::numerator(lp.value);
        continue;
      }
      Integer fl = floor_of(lp.x[j]);
      Bounds up = bounds;
      up[j].first = fl + 1;
      bounds[j].second = fl;
      stack.push_back(std::move(up));
      stack.push_back(std::move(bounds));
    }
    if (!incumbent) return Value{};
    return Value{OptStatus::Optimal, *incumbent};
  }

  // Eliminates every variable from  exists x. A.x <= b & c.x <= t.  The
  // result F(t) is monotone in t and periodic outside [-R, R], where R bounds
  // the atom constants and the period is the lcm of the moduli; so one
  // period on each side decides the status and bisection finds the least t.
  Value by_elimination(const Problem& p, const Row& c) {
    // Created here only: most problems never need them.
    while (vars_.size() < n_) vars_.push_back(Var::fresh("v"));
    Var t = Var::fresh("t");
    std::vector<Formula> parts;
    auto row_term = [&](const Row& row) {
      std::vector<LinearTerm::Monomial> mons;
      for (std::size_t j = 0; j < p.n; ++j)
        if (row[j] != 0) mons.emplace_back(vars_[j], row[j]);
      return LinearTerm::from(std::move(mons), 0);
    };
    for (std::size_t i = 0; i < p.a.size(); ++i)
      parts.push_back(Formula::leq(row_term(p.a[i]) - p.b[i]));
    parts.push_back(Formula::leq(row_term(c) - LinearTerm(t, 1)));
    Formula f = eliminate_all(Formula::exists(vars_, Formula::conjunction(std::move(parts))));

    Integer reach = 0;
    Integer period = 1;
    std::vector<Formula> todo{f};
    while (!todo.empty()) {
      Formula g = todo.back();
      todo.pop_back();
      if (g.is_atom()) {
        reach = std::max(reach, abs(g.term().constant()));
        if (g.kind() == Kind::Cong) period = lcm(period, g.modulus());
      }
      for (const auto& k : g.children()) todo.push_back(k);
    }
    auto holds = [&](const Integer& value) {
      Assignment a;
      a.set(t, value);
      return evaluate(f, a);
    };
    for (Integer v = -reach - period; v < -reach; ++v)
      if (holds(v)) return {OptStatus::Unbounded, 0};
    Integer hi = reach + period;
    if (!holds(hi)) return {};
    Integer lo = -reach - 1;  // F(lo) is false
    while (hi - lo > 1) {
      Integer mid = floor_div(lo + hi, 2);
      (holds(mid) ? hi : lo) = mid;
    }
    return {OptStatus::Optimal, hi};
  }

  std::size_t n_;
  Budget budget_;
  std::size_t fallback_after_;
  std::vector<Var> vars_;
};

Row unit(std::size_t n, std::size_t j, int sign) {
  Row r(n, 0);
  r[j] = sign;
  return r;
}

}  // namespace

const char* to_string(OptStatus status) {
  switch (status) {
    case OptStatus::Optimal:
      return "optimal";
    case OptStatus::Infeasible:
      return "infeasible";
    case OptStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

OptResult minimize(const LinearSystem& sys, const Objective& obj, const MinimizeOptions& options) {
  const std::size_t n = sys.vars.size();
  std::unordered_map<Var, std::size_t> column;
  for (std::size_t j = 0; j < n; ++j) column.emplace(sys.vars[j], j);

  Problem problem;
  problem.n = n;
  for (const auto& row : sys.rows) {
    Row r(n, 0);
    for (const auto& [v, k] : row.monomials()) {
      auto it = column.find(v);
      if (it == column.end())
        throw std::invalid_argument("row mentions " + v.name() + ", which is not a system variable");
      r[it->second] = k;
    }
    problem.add(std::move(r), -row.constant());
  }
  Row c(n, 0);
  for (const auto& [v, k] : obj.monomials()) {
    auto it = column.find(v);
    if (it == column.end() || it->second >= sys.original)
      throw std::invalid_argument("objective mentions " + v.name() +
                                  ", which is not an original variable");
    c[it->second] = k;
  }

  // Presolve: variables pinned by two single-variable rows are substituted
  // out, repeatedly.
  std::vector<std::optional<Integer>> fixed(n);
  for (bool again = true; again && !problem.infeasible;) {
    again = false;
    std::vector<std::optional<Integer>> lo(n), hi(n);
    for (std::size_t i = 0; i < problem.a.size(); ++i) {
      std::optional<std::size_t> only;
      bool single = true;
      for (std::size_t j = 0; j < n && single; ++j) {
        if (problem.a[i][j] == 0) continue;
        if (only) single = false;
        only = j;
      }
      if (!single || !only) continue;
      // Rows are gcd-reduced, so a single coefficient is +1 or -1.
      if (problem.a[i][*only] > 0) {
        if (!hi[*only] || problem.b[i] < *hi[*only]) hi[*only] = problem.b[i];
      } else if (!lo[*only] || -problem.b[i] > *lo[*only]) {
        lo[*only] = -problem.b[i];
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (lo[j] && hi[j] && *lo[j] > *hi[j]) problem.infeasible = true;
      if (lo[j] && hi[j] && *lo[j] == *hi[j]) {
        fixed[j] = *lo[j];
        again = true;
      }
    }
    if (!again || problem.infeasible) break;
    Problem next;
    next.n = n;
    for (std::size_t i = 0; i < problem.a.size(); ++i) {
      Row r = problem.a[i];
      Integer rhs = problem.b[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (fixed[j] && r[j] != 0) {
          rhs -= r[j] * *fixed[j];
          r[j] = 0;
        }
      }
      next.add(std::move(r), rhs);
    }
    problem = std::move(next);
  }

  OptResult out;
  out.vars = sys.vars;
  std::vector<std::size_t> open;
  for (std::size_t j = 0; j < n; ++j)
    if (!fixed[j]) open.push_back(j);
  const std::size_t k = open.size();
  Problem reduced;
  reduced.n = k;
  reduced.infeasible = problem.infeasible;
  for (std::size_t i = 0; i < problem.a.size() && !reduced.infeasible; ++i) {
    Row r(k);
    for (std::size_t q = 0; q < k; ++q) r[q] = problem.a[i][open[q]];
    reduced.add(std::move(r), problem.b[i]);
  }
  Row rc(k);
  for (std::size_t q = 0; q < k; ++q) rc[q] = c[open[q]];

  Solver solver(k, options);
  Value best = solver.solve(reduced, rc);
  out.status = best.status;
  if (best.status == OptStatus::Infeasible) {
    out.nodes = solver.nodes();
    return out;
  }

  // Lexicographic tie-break: fix one coordinate at a time on the optimal
  // face (every feasible point when unbounded).
  Problem face = reduced;
  if (best.status == OptStatus::Optimal) face.add(rc, best.value);
  std::vector<Integer> chosen;
  for (std::size_t q = 0; q < k; ++q) {
    Value r = solver.solve(face, unit(k, q, 1));
    if (r.status == OptStatus::Unbounded) {
      Problem nonneg = face;
      nonneg.add_unit(q, -1, 0);
      r = solver.solve(nonneg, unit(k, q, 1));
      if (r.status != OptStatus::Optimal) {
        r = solver.solve(face, unit(k, q, -1));
        r.value = -r.value;
      }
    }
    if (r.status != OptStatus::Optimal) throw std::logic_error("optimal face lost its integer points");
    face.add_unit(q, 1, r.value);
    face.add_unit(q, -1, -r.value);
    chosen.push_back(r.value);
  }
  out.point.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (fixed[j]) out.point[j] = *fixed[j];
  for (std::size_t q = 0; q < k; ++q) out.point[open[q]] = chosen[q];

  if (best.status == OptStatus::Unbounded) {
    LpResult lp = solver.relax(reduced, rc);
    Integer scale = 1;
    for (const auto& q : lp.ray) scale = lcm(scale, boost::multiprecision::denominator(q));
    out.direction.assign(n, 0);
    for (std::size_t q = 0; q < k; ++q)
      out.direction[open[q]] = boost::multiprecision::numerator(lp.ray[q]) *
                               (scale / boost::multiprecision::denominator(lp.ray[q]));
  } else {
    out.value = obj.constant();
    for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.point[j];
  }
  out.nodes = solver.nodes();
  return out;
}

OptResult minimize_dnf(std::span<const Conjunct> conjuncts, const Objective& obj,
                       std::span<const Var> original, const MinimizeOptions& options) {
  std::vector<Var> order(original.begin(), original.end());
  auto note = [&](const LinearTerm& t) {
    for (const auto& [v, k] : t.monomials())
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  };
  note(obj);
  for (const auto& conj : conjuncts) {
    for (const auto& t : conj.leq) note(t);
    for (const auto& g : conj.congs) note(g.term);
  }

  std::optional<OptResult> best;
  std::size_t nodes = 0;
  for (const auto& conj : conjuncts) {
    OptResult r = minimize(linearize(conj, order), obj, options);
    nodes += r.nodes;
    if (r.status == OptStatus::Infeasible) continue;
    r.vars.resize(order.size());
    r.point.resize(order.size());
    if (!r.direction.empty()) r.direction.resize(order.size());
    if (r.status == OptStatus::Unbounded) {
      best = std::move(r);
      break;
    }
    if (!best || r.value < best->value || (r.value == best->value && r.point < best->point))
      best = std::move(r);
  }
  OptResult out = best ? std::move(*best) : OptResult{.vars = order};
  out.nodes = nodes;
  return out;
}

}  // namespace pa
