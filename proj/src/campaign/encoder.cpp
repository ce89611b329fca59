#include "campaign/encoder.hpp"

#include "pa/cooper.hpp"
#include "pa/dnf.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace campaign {

using pa::Formula;
using pa::LinearTerm;
using pa::Var;

namespace {

using Terms = std::vector<LinearTerm>;

struct Turn {
  int round;
  int briber;
};

// Move variables of one turn. cells[i][j] is unset for coordinates that do
// not exist (infinite cost outside the opening move).
struct MoveVars {
  std::vector<Var> vars;
  std::vector<std::vector<std::optional<Var>>> cells;
};

std::string index_name(char prefix, int round, int briber) {
  return std::string(1, prefix) + std::to_string(round + 1) + "_" + std::to_string(briber + 1);
}

// Shared pieces of both encodings over a fixed expansion.
class Predicates {
 public:
  Predicates(const GameSpec& spec, Expansion expansion, const EncodeOptions& options)
      : spec_(spec), e_(std::move(expansion)), options_(options) {}

  [[nodiscard]] std::size_t tau() const { return e_.types.size(); }
  [[nodiscard]] const Expansion& expansion() const { return e_; }

  [[nodiscard]] MoveVars move_vars(int round, int briber, bool all_cells) const {
    MoveVars mv;
    const std::string base = index_name('m', round, briber);
    mv.cells.assign(tau(), std::vector<std::optional<Var>>(tau()));
    for (std::size_t i = 0; i < tau(); ++i) {
      for (std::size_t j = 0; j < tau(); ++j) {
        if (!all_cells && i != j && !e_.costs[i][j]) continue;
        Var v = Var::named(base + "_" + std::to_string(i) + "_" + std::to_string(j));
        mv.cells[i][j] = v;
        mv.vars.push_back(v);
      }
    }
    return mv;
  }

  [[nodiscard]] Terms society_vars(const std::string& base, std::vector<Var>& out) const {
    Terms s;
    for (std::size_t t = 0; t < tau(); ++t) {
      Var v = Var::named(base + "_" + std::to_string(t));
      out.push_back(v);
      s.emplace_back(v, 1);
    }
    return s;
  }

  // Off-diagonal cell that can carry voters.
  [[nodiscard]] bool transfer(const MoveVars& mv, std::size_t i, std::size_t j) const {
    return i != j && mv.cells[i][j] && e_.costs[i][j];
  }

  // delta_t = inflow - outflow over off-diagonal cells.
  [[nodiscard]] Terms delta(const MoveVars& mv) const {
    Terms d(tau());
    for (std::size_t i = 0; i < tau(); ++i) {
      for (std::size_t j = 0; j < tau(); ++j) {
        if (!transfer(mv, i, j)) continue;
        d[j] += LinearTerm(*mv.cells[i][j], 1);
        d[i] -= LinearTerm(*mv.cells[i][j], 1);
      }
    }
    return d;
  }

  [[nodiscard]] LinearTerm cost(const MoveVars& mv) const {
    LinearTerm c;
    for (std::size_t i = 0; i < tau(); ++i)
      for (std::size_t j = 0; j < tau(); ++j)
        if (transfer(mv, i, j) && *e_.costs[i][j] != 0)
          c += LinearTerm(*mv.cells[i][j], *e_.costs[i][j]);
    return c;
  }

  // Non-negativity, infinite cells pinned to zero, PossibleMove and (when a
  // budget is given) FeasibleMove. Pinned cells stay out of the sums.
  void preconditions(std::vector<Formula>& out, const MoveVars& mv, const Terms& s,
                     const std::optional<LinearTerm>& budget) const {
    for (Var v : mv.vars) out.push_back(Formula::leq(-LinearTerm(v, 1)));
    for (std::size_t i = 0; i < tau(); ++i)
      for (std::size_t j = 0; j < tau(); ++j)
        if (i != j && mv.cells[i][j] && !e_.costs[i][j])
          out.push_back(Formula::leq(LinearTerm(*mv.cells[i][j], 1)));
    if (!options_.delta_only) {
      for (std::size_t i = 0; i < tau(); ++i) {
        LinearTerm out_i;
        for (std::size_t j = 0; j < tau(); ++j)
          if (transfer(mv, i, j)) out_i += LinearTerm(*mv.cells[i][j], 1);
        if (!out_i.is_constant()) out.push_back(Formula::leq(out_i - s[i]));
      }
    }
    Terms d = delta(mv);
    for (std::size_t t = 0; t < tau(); ++t) out.push_back(Formula::leq(-(s[t] + d[t])));
    if (budget) out.push_back(Formula::leq(cost(mv) - *budget));
  }

  // s' = s + delta, one pair of inequalities per type.
  void apply(std::vector<Formula>& out, const Terms& next, const Terms& s,
             const MoveVars& mv) const {
    Terms d = delta(mv);
    for (std::size_t t = 0; t < tau(); ++t) pin(out, next[t], s[t] + d[t]);
  }

  static void pin(std::vector<Formula>& out, const LinearTerm& lhs, const LinearTerm& rhs) {
    out.push_back(Formula::leq(lhs - rhs));
    out.push_back(Formula::leq(rhs - lhs));
  }

  [[nodiscard]] LinearTerm score(const Terms& s, int c) const {
    LinearTerm total;
    for (std::size_t t = 0; t < tau(); ++t) {
      const auto& pref = e_.types[t].preference;
      std::size_t rank = 0;
      while (pref[rank] != c) ++rank;
      if (spec_.rule.scores[rank] != 0) total += s[t] * spec_.rule.scores[rank];
    }
    return total;
  }

  // Every c != p has S_c < S_p + M, the unique winner being M = 0.
  [[nodiscard]] Formula winner(const Terms& s) const {
    const Count shift = spec_.winning.kind == WinningKind::Unique ? 1 : 1 - spec_.winning.margin;
    const LinearTerm sp = score(s, spec_.preferred);
    std::vector<Formula> atoms;
    for (int c = 0; c < static_cast<int>(spec_.candidates.size()); ++c)
      if (c != spec_.preferred) atoms.push_back(Formula::leq(score(s, c) - sp + shift));
    return Formula::conjunction(std::move(atoms));
  }

  // S_q - S_c for every c != q.
  [[nodiscard]] Terms margins(const Terms& s, int q) const {
    Terms out;
    const LinearTerm sq = score(s, q);
    for (int c = 0; c < static_cast<int>(spec_.candidates.size()); ++c)
      if (c != q) out.push_back(sq - score(s, c));
    return out;
  }

 private:
  const GameSpec& spec_;
  Expansion e_;
  EncodeOptions options_;
};

std::vector<Turn> turn_order(const GameSpec& spec, bool adversary_first) {
  std::vector<Turn> turns;
  for (int r = 0; r < spec.rounds; ++r) {
    if (!adversary_first) turns.push_back({r, 0});
    for (int b = 1; b < spec.bribers; ++b) turns.push_back({r, b});
    if (adversary_first) turns.push_back({r, 0});
  }
  return turns;
}

// Name of the society variables a turn starts from.
std::string society_name(const std::vector<Turn>& turns, std::size_t idx) {
  if (idx == turns.size()) return "sf";
  return index_name('s', turns[idx].round, turns[idx].briber);
}

Terms constant_society(const Society& s) {
  Terms out;
  for (Count c : s) out.emplace_back(c);
  return out;
}

class ModularBuilder {
 public:
  ModularBuilder(const GameSpec& spec, const EncodeOptions& options)
      : spec_(spec),
        options_(options),
        pred_(spec, expand(spec), options),
        turns_(turn_order(spec, options.adversary_first)) {}

  Encoding build() {
    Encoding enc;
    enc.expansion = pred_.expansion();
    enc.start = embed(spec_.society, enc.expansion);
    Terms avail;
    for (int b = 0; b < spec_.bribers; ++b) avail.emplace_back(fresh_money(spec_, stream(b), 0));
    enc.phi = turn(0, constant_society(enc.start), avail, &enc.first_move);
    return enc;
  }

 private:
  [[nodiscard]] const Stream& stream(int b) const {
    return b == 0 ? spec_.ours : spec_.adversaries[static_cast<std::size_t>(b - 1)];
  }
  [[nodiscard]] int preferred_of(int b) const {
    return b == 0 ? spec_.preferred : spec_.adversary_preferred[static_cast<std::size_t>(b - 1)];
  }

  Formula turn(std::size_t idx, const Terms& s, const Terms& avail, std::vector<Var>* opening) {
    if (idx == turns_.size()) return pred_.winner(s);
    const auto [r, b] = turns_[idx];
    const bool free = idx == 0 && b == 0;
    MoveVars mv = pred_.move_vars(r, b, free);
    if (free) *opening = mv.vars;

    std::vector<Formula> pre;
    std::optional<LinearTerm> budget = avail[b];
    if (free && options_.min_cost) budget.reset();
    pred_.preconditions(pre, mv, s, budget);
    if (b != 0 && spec_.adversary_mode == AdversaryMode::MovNonDecrease)
      pre.push_back(non_decreasing(mv, s, r, b));

    std::vector<Var> next_vars;
    std::vector<Formula> post;
    Terms next = pred_.society_vars(society_name(turns_, idx + 1), next_vars);
    pred_.apply(post, next, s, mv);
    Terms next_avail = avail;
    if (r + 1 < spec_.rounds) {
      const Count fresh = fresh_money(spec_, stream(b), r + 1);
      if (carries_over(spec_)) {
        LinearTerm carried = avail[b] - pred_.cost(mv) + fresh;
        if (spec_.scheme == BudgetScheme::Adaptive)
          carried += pred_.score(s, preferred_of(b)) * stream(b).weight;
        Var budget_var = Var::named(index_name('B', r + 1, b));
        next_vars.push_back(budget_var);
        Predicates::pin(post, LinearTerm(budget_var, 1), carried);
        next_avail[b] = LinearTerm(budget_var, 1);
      } else {
        next_avail[b] = LinearTerm(fresh);
      }
    }
    post.push_back(turn(idx + 1, next, next_avail, opening));
    Formula rest = Formula::exists(next_vars, Formula::conjunction(std::move(post)));

    if (b == 0) {
      pre.push_back(std::move(rest));
      Formula body = Formula::conjunction(std::move(pre));
      return free ? body : Formula::exists(mv.vars, std::move(body));
    }
    return Formula::forall(mv.vars, Formula::implies(Formula::conjunction(std::move(pre)),
                                                     std::move(rest)));
  }

  // exists z_new z_old. z_new = min margins after & z_old = min before & z_old <= z_new
  Formula non_decreasing(const MoveVars& mv, const Terms& s, int r, int b) const {
    const int q = preferred_of(b);
    Terms after = s;
    Terms d = pred_.delta(mv);
    for (std::size_t t = 0; t < after.size(); ++t) after[t] += d[t];
    const std::string base = index_name('z', r, b);
    Var z_new = Var::named(base + "_new");
    Var z_old = Var::named(base + "_old");
    Terms m_after = pred_.margins(after, q);
    Terms m_before = pred_.margins(s, q);
    Formula body = Formula::conjunction({encode_min(m_after, z_new), encode_min(m_before, z_old),
                                         Formula::leq(LinearTerm(z_old, 1) - LinearTerm(z_new, 1))});
    std::vector<Var> zs{z_new, z_old};
    return Formula::exists(zs, std::move(body));
  }

  const GameSpec& spec_;
  EncodeOptions options_;
  Predicates pred_;
  std::vector<Turn> turns_;
};

GameSpec checked(const GameSpec& spec) {
  GameSpec copy = spec;
  validate(copy);
  return copy;
}

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Formula encode_min(std::span<const LinearTerm> terms, Var z) {
  if (terms.empty()) throw std::invalid_argument("encode_min needs at least one term");
  const LinearTerm zt(z, 1);
  std::vector<Formula> eq;
  std::vector<Formula> parts;
  for (const auto& t : terms) eq.push_back(Formula::equal(zt, t));
  parts.push_back(Formula::disjunction(std::move(eq)));
  for (const auto& t : terms) parts.push_back(Formula::leq(zt - t));
  return Formula::conjunction(std::move(parts));
}

Encoding encode_basic_phi(const GameSpec& input, const EncodeOptions& options) {
  const GameSpec spec = checked(input);
  if (spec.bribers != 2) throw SpecError("the basic formula needs exactly one adversary");
  if (spec.scheme != BudgetScheme::PerRound) throw SpecError("the basic formula needs per-round budgets");
  if (spec.behavior != Behavior::Plain) throw SpecError("the basic formula needs plain voters");
  if (spec.adversary_mode != AdversaryMode::WorstCase)
    throw SpecError("the basic formula needs a worst-case adversary");
  if (spec.winning.kind != WinningKind::Unique)
    throw SpecError("the basic formula needs a unique winner");

  Predicates pred(spec, expand(spec), options);
  const auto turns = turn_order(spec, options.adversary_first);
  Encoding enc;
  enc.expansion = pred.expansion();
  enc.start = embed(spec.society, enc.expansion);

  // Built inside out: the innermost formula is the winning condition.
  std::vector<Terms> society(turns.size() + 1);
  std::vector<std::vector<Var>> society_vars(turns.size() + 1);
  society[0] = constant_society(enc.start);
  for (std::size_t idx = 1; idx <= turns.size(); ++idx)
    society[idx] = pred.society_vars(society_name(turns, idx), society_vars[idx]);

  Formula phi = pred.winner(society.back());
  for (std::size_t idx = turns.size(); idx-- > 0;) {
    const auto [r, b] = turns[idx];
    const bool free = idx == 0 && b == 0;
    MoveVars mv = pred.move_vars(r, b, true);
    const Stream& st = b == 0 ? spec.ours : spec.adversaries.front();
    std::optional<LinearTerm> budget = LinearTerm(st.amounts[static_cast<std::size_t>(r)]);
    if (free && options.min_cost) budget.reset();

    std::vector<Formula> pre;
    pred.preconditions(pre, mv, society[idx], budget);
    std::vector<Formula> post;
    pred.apply(post, society[idx + 1], society[idx], mv);
    post.push_back(std::move(phi));
    Formula rest = Formula::exists(society_vars[idx + 1], Formula::conjunction(std::move(post)));
    if (b == 0) {
      pre.push_back(std::move(rest));
      phi = Formula::conjunction(std::move(pre));
      if (free) {
        enc.first_move = mv.vars;
      } else {
        phi = Formula::exists(mv.vars, std::move(phi));
      }
    } else {
      phi = Formula::forall(mv.vars, Formula::implies(Formula::conjunction(std::move(pre)),
                                                      std::move(rest)));
    }
  }
  enc.phi = std::move(phi);
  return enc;
}

Encoding encode_modular_phi(const GameSpec& input, const EncodeOptions& options) {
  const GameSpec spec = checked(input);
  return ModularBuilder(spec, options).build();
}

namespace {

Encoding encode_for_pipeline(const GameSpec& input, const EncodeOptions& options,
                             bool collapse) {
  GameSpec spec = checked(input);
  if (collapse && spec.adversary_mode == AdversaryMode::WorstCase)
    spec = collapse_adversaries(spec);
  return encode_modular_phi(spec, options);
}

}  // namespace

SolveOutcome solve_first_move(const GameSpec& spec, const PipelineOptions& options,
                              PipelineReport* report) {
  PipelineReport local;
  PipelineReport& rep = report ? *report : local;
  EncodeOptions eo = options.encode;
  eo.adversary_first = false;

  auto t0 = std::chrono::steady_clock::now();
  const Encoding enc = encode_for_pipeline(spec, eo, options.collapse);
  rep.encode_ms = millis_since(t0);
  rep.phi = pa::metrics(enc.phi);
  rep.free_vars = pa::free_variables(enc.phi).size();
  rep.bound_vars = pa::bound_variables(enc.phi).size();

  t0 = std::chrono::steady_clock::now();
  Formula psi;
  if (options.qe == QeStrategy::Bounded) {
    pa::BoundedDecider decider(options.bounded);
    psi = decider.eliminate(enc.phi, enc.first_move);
    rep.bounded = decider.stats();
  } else {
    psi = pa::eliminate_all(enc.phi, nullptr, options.cooper);
  }
  rep.qe_ms = millis_since(t0);
  rep.qe_result = pa::metrics(psi);

  t0 = std::chrono::steady_clock::now();
  const auto dnf = pa::to_dnf(psi, options.dnf);
  rep.dnf_ms = millis_since(t0);
  rep.conjuncts = dnf.size();

  const std::size_t tau = enc.start.size();
  LinearTerm objective;
  for (std::size_t i = 0; i < tau; ++i)
    for (std::size_t j = 0; j < tau; ++j)
      if (i != j && enc.expansion.costs[i][j] && *enc.expansion.costs[i][j] != 0)
        objective += LinearTerm(enc.first_move[i * tau + j], *enc.expansion.costs[i][j]);

  t0 = std::chrono::steady_clock::now();
  const pa::OptResult r = pa::minimize_dnf(dnf, objective, enc.first_move, options.minimize);
  rep.minimize_ms = millis_since(t0);
  rep.minimize_nodes = r.nodes;

  SolveOutcome out;
  if (r.status == pa::OptStatus::Infeasible) return out;
  if (r.status == pa::OptStatus::Unbounded)
    throw std::logic_error("move cost is bounded below by zero but minimization was unbounded");
  out.status = Status::Win;
  out.first_move = zero_move(tau);
  for (std::size_t i = 0; i < tau; ++i)
    for (std::size_t j = 0; j < tau; ++j)
      if (i != j) out.first_move[i][j] = static_cast<Count>(r.point[i * tau + j]);
  out.cost = static_cast<Count>(r.value);
  return out;
}

bool decide_second_player(const GameSpec& spec, const PipelineOptions& options,
                          PipelineReport* report) {
  PipelineReport local;
  PipelineReport& rep = report ? *report : local;
  EncodeOptions eo = options.encode;
  eo.adversary_first = true;

  auto t0 = std::chrono::steady_clock::now();
  const Encoding enc = encode_for_pipeline(spec, eo, options.collapse);
  rep.encode_ms = millis_since(t0);
  rep.phi = pa::metrics(enc.phi);
  rep.bound_vars = pa::bound_variables(enc.phi).size();

  t0 = std::chrono::steady_clock::now();
  bool result = false;
  if (options.qe == QeStrategy::Bounded) {
    pa::BoundedDecider decider(options.bounded);
    result = decider.decide(enc.phi);
    rep.bounded = decider.stats();
  } else {
    result = pa::decide_sentence(enc.phi, nullptr, options.cooper);
  }
  rep.qe_ms = millis_since(t0);
  return result;
}

}  // namespace campaign
