#include "campaign/spec.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace campaign {

namespace {

using nlohmann::json;

int candidate_index(const GameSpec& spec, const std::string& name) {
  auto it = std::find(spec.candidates.begin(), spec.candidates.end(), name);
  if (it == spec.candidates.end()) throw SpecError("unknown candidate '" + name + "'");
  return static_cast<int>(it - spec.candidates.begin());
}

std::vector<Count> counts_of(const json& j, const char* what) {
  if (j.is_number_integer()) return {j.get<Count>()};
  if (!j.is_array()) throw SpecError(std::string(what) + " must be an integer list");
  std::vector<Count> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw SpecError(std::string(what) + " must be an integer list");
    out.push_back(v.get<Count>());
  }
  return out;
}

ScoringRule parse_rule(const std::string& text, int m) {
  if (text == "borda") return ScoringRule::borda(m);
  if (text == "plurality") return ScoringRule::plurality(m);
  if (text.starts_with("scores:")) {
    json j;
    try {
      j = json::parse(text.substr(7));
    } catch (const json::exception& e) {
      throw SpecError("bad score vector: " + std::string(e.what()));
    }
    return ScoringRule{counts_of(j, "score vector")};
  }
  throw SpecError("unknown rule '" + text + "'");
}

std::string rule_text(const ScoringRule& rule) {
  const int m = static_cast<int>(rule.scores.size());
  if (rule == ScoringRule::borda(m)) return "borda";
  if (rule == ScoringRule::plurality(m)) return "plurality";
  return "scores:" + json(rule.scores).dump();
}

template <class E>
E parse_enum(const std::string& text, std::initializer_list<std::pair<const char*, E>> names,
             const char* what) {
  for (const auto& [n, e] : names)
    if (text == n) return e;
  throw SpecError(std::string("unknown ") + what + " '" + text + "'");
}

}  // namespace

const char* to_string(Status s) { return s == Status::Win ? "Win" : "NoStrategy"; }

const char* to_string(BudgetScheme s) {
  switch (s) {
    case BudgetScheme::PerRound: return "per_round";
    case BudgetScheme::Initial: return "initial";
    case BudgetScheme::Chunked: return "chunked";
    case BudgetScheme::Adaptive: return "adaptive";
  }
  return "?";
}

const char* to_string(Behavior b) {
  switch (b) {
    case Behavior::Plain: return "plain";
    case Behavior::Loyal: return "loyal";
    case Behavior::Semiloyal: return "semiloyal";
  }
  return "?";
}

const char* to_string(AdversaryMode m) {
  return m == AdversaryMode::WorstCase ? "worst_case" : "mov_nondecrease";
}

void validate(GameSpec& spec) {
  const int m = static_cast<int>(spec.candidates.size());
  if (m < 2) throw SpecError("at least two candidates are required");
  for (std::size_t i = 0; i < spec.candidates.size(); ++i)
    for (std::size_t j = i + 1; j < spec.candidates.size(); ++j)
      if (spec.candidates[i] == spec.candidates[j]) throw SpecError("duplicate candidate name");
  if (spec.types.empty()) throw SpecError("at least one voter type is required");
  for (auto& t : spec.types) {
    std::vector<int> sorted = t.preference;
    std::sort(sorted.begin(), sorted.end());
    for (int c = 0; c < m; ++c)
      if (sorted.size() != static_cast<std::size_t>(m) || sorted[c] != c)
        throw SpecError("preference of type '" + t.name + "' is not an order of all candidates");
  }
  if (spec.society.size() != spec.types.size())
    throw SpecError("society must have one count per type");
  for (Count c : spec.society)
    if (c < 0) throw SpecError("negative voter count");
  if (spec.preferred < 0 || spec.preferred >= m) throw SpecError("preferred candidate out of range");
  if (spec.rounds < 1) throw SpecError("rounds must be at least 1");
  if (spec.bribers < 2) throw SpecError("at least two bribers are required");
  if (spec.rule.scores.size() != static_cast<std::size_t>(m))
    throw SpecError("score vector needs one entry per candidate");
  if (!std::is_sorted(spec.rule.scores.rbegin(), spec.rule.scores.rend()) ||
      spec.rule.scores.back() < 0 || spec.rule.scores.front() == spec.rule.scores.back())
    throw SpecError("score vector must be non-increasing, non-negative and not constant");
  if (spec.behavior == Behavior::Semiloyal && spec.surcharge < 0)
    throw SpecError("negative surcharge");
  if (spec.postprocess != "identity")
    throw SpecError("unsupported postprocess hook '" + spec.postprocess + "'");

  const auto adversaries = static_cast<std::size_t>(spec.bribers - 1);
  if (spec.adversaries.size() == 1 && adversaries > 1)
    spec.adversaries.resize(adversaries, spec.adversaries.front());
  if (spec.adversaries.size() != adversaries)
    throw SpecError("expected one budget stream per adversary");
  auto fix = [&](Stream& s, const char* who) {
    const auto rounds = static_cast<std::size_t>(spec.rounds);
    if (s.weight < 0) throw SpecError("negative adaptive weight");
    if (s.amounts.empty()) throw SpecError(std::string("missing budget for ") + who);
    for (Count c : s.amounts)
      if (c < 0) throw SpecError(std::string("negative budget for ") + who);
    bool per_round = spec.scheme == BudgetScheme::PerRound || spec.scheme == BudgetScheme::Chunked;
    if (per_round && s.amounts.size() == 1) s.amounts.resize(rounds, s.amounts.front());
    if (per_round && s.amounts.size() != rounds)
      throw SpecError(std::string("budget stream of ") + who + " needs one entry per round");
    if (!per_round && s.amounts.size() != 1)
      throw SpecError(std::string("budget of ") + who + " takes a single start value");
  };
  fix(spec.ours, "our briber");
  for (auto& s : spec.adversaries) fix(s, "an adversary");

  if (spec.adversary_preferred.empty()) {
    int other = spec.preferred == 0 ? 1 : 0;
    spec.adversary_preferred.assign(adversaries, other);
  } else if (spec.adversary_preferred.size() == 1 && adversaries > 1) {
    spec.adversary_preferred.resize(adversaries, spec.adversary_preferred.front());
  }
  if (spec.adversary_preferred.size() != adversaries)
    throw SpecError("expected one preferred candidate per adversary");
  for (int q : spec.adversary_preferred)
    if (q < 0 || q >= m) throw SpecError("adversary preferred candidate out of range");
}

GameSpec parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  GameSpec spec;
  try {
    for (const auto& c : j.at("candidates")) spec.candidates.push_back(c.get<std::string>());
    for (const auto& t : j.at("types")) {
      VoterType v;
      v.name = t.value("name", "t" + std::to_string(spec.types.size()));
      for (const auto& c : t.at("preference"))
        v.preference.push_back(candidate_index(spec, c.get<std::string>()));
      v.base = static_cast<int>(spec.types.size());
      spec.types.push_back(std::move(v));
    }
    spec.society = counts_of(j.at("society"), "society");
    spec.preferred = candidate_index(spec, j.at("preferred").get<std::string>());
    spec.bribers = j.value("bribers", 2);
    spec.rounds = j.at("rounds").get<int>();

    const json& b = j.at("budget");
    spec.scheme = parse_enum<BudgetScheme>(b.value("scheme", "per_round"),
                                           {{"per_round", BudgetScheme::PerRound},
                                            {"initial", BudgetScheme::Initial},
                                            {"chunked", BudgetScheme::Chunked},
                                            {"adaptive", BudgetScheme::Adaptive}},
                                           "budget scheme");
    spec.reset = b.value("reset", false);
    spec.ours.amounts = counts_of(b.at("ours"), "budget");
    const json& adv = b.at("adversary");
    if (adv.is_array() && !adv.empty() && adv.front().is_array()) {
      for (const auto& a : adv) spec.adversaries.push_back({counts_of(a, "budget")});
    } else {
      spec.adversaries.push_back({counts_of(adv, "budget")});
    }
    if (b.contains("weights")) {
      auto w = counts_of(b.at("weights"), "weights");
      if (w.size() != spec.adversaries.size() + 1 && w.size() != 2)
        throw SpecError("weights needs one entry per briber");
      spec.ours.weight = w[0];
      for (std::size_t i = 0; i < spec.adversaries.size(); ++i)
        spec.adversaries[i].weight = w[std::min(i + 1, w.size() - 1)];
    }

    spec.rule = parse_rule(j.value("rule", "borda"), static_cast<int>(spec.candidates.size()));
    if (j.contains("winning")) {
      const json& w = j.at("winning");
      spec.winning.kind = parse_enum<WinningKind>(
          w.value("kind", "unique"), {{"unique", WinningKind::Unique}, {"margin", WinningKind::Margin}},
          "winning condition");
      spec.winning.margin = w.value("margin", Count{0});
    }
    spec.behavior = parse_enum<Behavior>(
        j.value("behavior", "plain"),
        {{"plain", Behavior::Plain}, {"loyal", Behavior::Loyal}, {"semiloyal", Behavior::Semiloyal}},
        "behavior");
    spec.surcharge = j.value("surcharge", Count{0});
    spec.adversary_mode = parse_enum<AdversaryMode>(
        j.value("adversary_mode", "worst_case"),
        {{"worst_case", AdversaryMode::WorstCase},
         {"mov_nondecrease", AdversaryMode::MovNonDecrease}},
        "adversary mode");
    if (j.contains("adversary_preferred")) {
      const json& ap = j.at("adversary_preferred");
      if (ap.is_string()) {
        spec.adversary_preferred.push_back(candidate_index(spec, ap.get<std::string>()));
      } else {
        for (const auto& c : ap)
          spec.adversary_preferred.push_back(candidate_index(spec, c.get<std::string>()));
      }
    }
    spec.postprocess = j.value("postprocess", "identity");
  } catch (const json::exception& e) {
    throw SpecError(std::string("bad game spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

GameSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string spec_to_json(const GameSpec& spec) {
  json j;
  j["candidates"] = spec.candidates;
  json types = json::array();
  for (const auto& t : spec.types) {
    json pref = json::array();
    for (int c : t.preference) pref.push_back(spec.candidates[c]);
    types.push_back({{"name", t.name}, {"preference", pref}});
  }
  j["types"] = types;
  j["society"] = spec.society;
  j["preferred"] = spec.candidates[spec.preferred];
  j["bribers"] = spec.bribers;
  j["rounds"] = spec.rounds;
  json b;
  b["scheme"] = to_string(spec.scheme);
  if (spec.reset) b["reset"] = true;
  b["ours"] = spec.ours.amounts;
  if (spec.adversaries.size() == 1) {
    b["adversary"] = spec.adversaries.front().amounts;
  } else {
    json adv = json::array();
    for (const auto& a : spec.adversaries) adv.push_back(a.amounts);
    b["adversary"] = adv;
  }
  bool weighted = spec.ours.weight != 1;
  for (const auto& a : spec.adversaries) weighted |= a.weight != 1;
  if (weighted) {
    std::vector<Count> w{spec.ours.weight};
    for (const auto& a : spec.adversaries) w.push_back(a.weight);
    b["weights"] = w;
  }
  j["budget"] = b;
  j["rule"] = rule_text(spec.rule);
  j["winning"] = {{"kind", spec.winning.kind == WinningKind::Unique ? "unique" : "margin"}};
  if (spec.winning.kind == WinningKind::Margin) j["winning"]["margin"] = spec.winning.margin;
  j["behavior"] = to_string(spec.behavior);
  if (spec.behavior == Behavior::Semiloyal) j["surcharge"] = spec.surcharge;
  j["adversary_mode"] = to_string(spec.adversary_mode);
  json ap = json::array();
  for (int q : spec.adversary_preferred) ap.push_back(spec.candidates[q]);
  j["adversary_preferred"] = ap;
  j["postprocess"] = spec.postprocess;
  return j.dump();
}

GameSpec collapse_adversaries(const GameSpec& spec) {
  if (spec.bribers <= 2) return spec;
  if (spec.adversary_mode != AdversaryMode::WorstCase)
    throw SpecError("adversaries cannot be merged when they must not decrease their own margin");
  GameSpec out = spec;
  Stream merged = spec.adversaries.front();
  for (std::size_t a = 1; a < spec.adversaries.size(); ++a) {
    const Stream& s = spec.adversaries[a];
    for (std::size_t i = 0; i < merged.amounts.size(); ++i) merged.amounts[i] += s.amounts[i];
    merged.weight += s.weight;
    if (spec.scheme == BudgetScheme::Adaptive &&
        spec.adversary_preferred[a] != spec.adversary_preferred.front())
      throw SpecError("adaptive adversaries with different preferred candidates cannot be merged");
  }
  out.bribers = 2;
  out.adversaries = {merged};
  out.adversary_preferred = {spec.adversary_preferred.front()};
  return out;
}

Count fresh_money(const GameSpec& spec, const Stream& s, int round) {
  switch (spec.scheme) {
    case BudgetScheme::PerRound:
    case BudgetScheme::Chunked:
      return s.amounts[round];
    case BudgetScheme::Initial:
    case BudgetScheme::Adaptive:
      return round == 0 ? s.amounts[0] : 0;
  }
  return 0;
}

bool carries_over(const GameSpec& spec) {
  switch (spec.scheme) {
    case BudgetScheme::PerRound: return false;
    case BudgetScheme::Chunked: return !spec.reset;
    default: return true;
  }
}

Expansion expand(const GameSpec& spec) {
  CostMatrix costs = swap_cost_matrix(spec.types);
  switch (spec.behavior) {
    case Behavior::Plain: return expand_plain(spec.types, costs);
    case Behavior::Loyal: return expand_loyal(spec.types, costs);
    case Behavior::Semiloyal:
      return expand_semiloyal(spec.types, costs, spec.rounds, spec.surcharge);
  }
  return expand_plain(spec.types, costs);
}

Count largest_constant(const GameSpec& spec) {
  Count best = 0;
  for (Count c : spec.society) best = std::max(best, c);
  for (Count c : spec.ours.amounts) best = std::max(best, c);
  for (const auto& a : spec.adversaries)
    for (Count c : a.amounts) best = std::max(best, c);
  return best;
}

}  // namespace campaign
