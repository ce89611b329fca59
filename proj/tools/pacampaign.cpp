// Command-line front end: Presburger decision, elimination and minimization,
// and the election campaign solver with its oracle cross-check.

#include "campaign/harness.hpp"
#include "pa/bounded.hpp"
#include "pa/cooper.hpp"
#include "pa/minimize.hpp"
#include "pa/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kNegative = 2, kInput = 3, kExhausted = 4 };

using nlohmann::json;

std::string read_source(const std::string& text, const std::string& file) {
  if (file.empty()) return text;
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string metrics_text(const pa::Metrics& m) {
  return "L=" + std::to_string(m.length) + " alpha=" + m.max_coeff.str() + " beta=" + m.max_const.str();
}

const char* method_name(pa::StepMethod m) {
  switch (m) {
    case pa::StepMethod::Cooper: return "cooper";
    case pa::StepMethod::Substitution: return "substitution";
    case pa::StepMethod::Enumeration: return "enumeration";
    case pa::StepMethod::Vacuous: return "vacuous";
  }
  return "?";
}

void print_trace(const pa::EliminationTrace& trace) {
  for (const auto& s : trace.steps) {
    std::cout << "step " << (s.quantifier == pa::Kind::Exists ? "exists " : "forall ")
              << s.var.name() << " " << method_name(s.method) << " M=" << s.lcm
              << " M'=" << s.lcm_moduli << " bounds=" << s.bound_terms
              << " phi1[" << metrics_text(s.phi1) << "] phi3[" << metrics_text(s.phi3)
              << "] phi4[" << metrics_text(s.phi4_raw) << "] result[" << metrics_text(s.result)
              << "]" << (s.exhausted ? " exhausted" : "") << "\n";
  }
}

json outcome_json(const campaign::SolveOutcome& o) {
  json j{{"status", campaign::to_string(o.status)}};
  if (o.status == campaign::Status::Win) {
    j["cost"] = o.cost;
    j["first_move"] = o.first_move;
  }
  return j;
}

void print_outcome(const campaign::SolveOutcome& o, const campaign::GameSpec& spec,
                   bool as_json) {
  if (as_json) {
    std::cout << outcome_json(o).dump() << "\n";
    return;
  }
  std::cout << campaign::to_string(o.status) << "\n";
  if (o.status != campaign::Status::Win) return;
  std::cout << "cost " << o.cost << "\n";
  const campaign::Expansion e = campaign::expand(spec);
  for (std::size_t i = 0; i < o.first_move.size(); ++i)
    for (std::size_t j = 0; j < o.first_move.size(); ++j)
      if (i != j && o.first_move[i][j] != 0)
        std::cout << "move " << o.first_move[i][j] << " " << e.types[i].name << "#" << i << " -> "
                  << e.types[j].name << "#" << j << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presburger arithmetic toolkit and campaign solver"};
  app.require_subcommand(1);

  // Formula commands share the input options.
  std::string formula_text, formula_file;
  bool strict_vars = false;
  std::string qe = "cooper";
  auto formula_input = [&](CLI::App* cmd) {
    cmd->add_option("formula", formula_text, "formula text");
    cmd->add_option("-f,--file", formula_file, "read the formula from a file");
    cmd->add_flag("--strict-vars", strict_vars, "reject undeclared free identifiers");
  };

  auto* decide = app.add_subcommand("decide", "decide a sentence");
  formula_input(decide);
  bool trace = false;
  decide->add_option("--qe", qe, "cooper or bounded")->check(CLI::IsMember({"cooper", "bounded"}));
  decide->add_flag("--trace", trace, "print one line per elimination step");

  auto* eliminate = app.add_subcommand("eliminate", "quantifier-free equivalent");
  formula_input(eliminate);
  bool as_dnf = false;
  std::vector<std::string> declared;
  eliminate->add_flag("--dnf", as_dnf, "print the DNF conjuncts, one per line");
  eliminate->add_flag("--trace", trace, "print one line per elimination step");
  eliminate->add_option("--qe", qe, "cooper or bounded")->check(CLI::IsMember({"cooper", "bounded"}));
  eliminate->add_option("--declare", declared, "free variables allowed under --strict-vars");

  auto* minimize = app.add_subcommand("minimize", "minimize a linear objective");
  formula_input(minimize);
  std::string objective_text;
  minimize->add_option("--objective", objective_text, "linear term to minimize")->required();
  minimize->add_option("--declare", declared, "free variables allowed under --strict-vars");

  auto* camp = app.add_subcommand("campaign", "election campaign games");
  camp->require_subcommand(1);
  std::string spec_path;
  bool min_cost = false, second = false, dump = false, as_json = false, delta_only = false;
  bool report = false;
  auto game_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--min-cost", min_cost, "drop the budget on our opening move");
    cmd->add_flag("--delta-feasibility-only", delta_only, "only require s + delta >= 0");
    cmd->add_flag("--json", as_json, "machine-readable outcome");
  };
  auto* solve = camp->add_subcommand("solve", "solve through the formula pipeline");
  solve->add_option("spec", spec_path, "game spec (JSON)")->required();
  game_flags(solve);
  solve->add_flag("--second-player", second, "adversaries open every round");
  solve->add_flag("--dump-formula", dump, "print the encoded formula");
  solve->add_flag("--report", report, "print formula sizes and timings");
  std::string campaign_qe = "bounded";
  solve->add_option("--qe", campaign_qe, "bounded or cooper")
      ->check(CLI::IsMember({"cooper", "bounded"}));

  auto* oracle = camp->add_subcommand("oracle", "solve by game-tree search");
  oracle->add_option("spec", spec_path, "game spec (JSON)")->required();
  game_flags(oracle);
  oracle->add_flag("--second-player", second, "adversaries open every round");

  auto* verify = camp->add_subcommand("verify", "cross-check the pipeline against the oracle");
  std::vector<std::string> verify_specs;
  std::string family;
  std::size_t sample = 0, limit = 0, progress = 0;
  verify->add_option("specs", verify_specs, "game specs (JSON)");
  verify->add_option("--family", family,
                     "'small' for the built-in family, or a file of JSON specs, one per line");
  verify->add_option("--sample", sample, "check this many specs spread over the family");
  verify->add_option("--limit", limit, "check only the first N specs");
  verify->add_option("--progress", progress, "print a status line every N specs");
  game_flags(verify);
  verify->add_option("--qe", campaign_qe, "bounded or cooper")
      ->check(CLI::IsMember({"cooper", "bounded"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (decide->parsed() || eliminate->parsed() || minimize->parsed()) {
      pa::ParseOptions po;
      po.strict_vars = strict_vars;
      po.declared = declared;
      const std::string src = read_source(formula_text, formula_file);
      if (src.empty()) throw std::invalid_argument("no formula given");
      const pa::Formula phi = pa::parse(src, po);

      if (decide->parsed()) {
        pa::EliminationTrace tr;
        bool value = qe == "bounded" ? pa::decide_bounded(phi) : pa::decide_sentence(phi, &tr);
        if (trace) print_trace(tr);
        std::cout << (value ? "true" : "false") << "\n";
        return value ? kOk : kNegative;
      }

      pa::EliminationTrace tr;
      pa::Formula psi = qe == "bounded" ? pa::eliminate_bounded(phi) : pa::eliminate_all(phi, &tr);
      if (eliminate->parsed()) {
        if (trace) print_trace(tr);
        if (!as_dnf) {
          std::cout << pa::to_string(psi) << "\n";
          return kOk;
        }
        const auto dnf = pa::to_dnf(psi);
        if (dnf.empty()) std::cout << "false\n";
        for (const auto& c : dnf) std::cout << pa::to_string(c.to_formula()) << "\n";
        return kOk;
      }

      const pa::LinearTerm obj = pa::parse_term(objective_text);
      const auto dnf = pa::to_dnf(psi);
      const pa::OptResult r = pa::minimize_dnf(dnf, obj, pa::free_variables(psi));
      std::cout << pa::to_string(r.status) << "\n";
      if (r.status == pa::OptStatus::Infeasible) return kNegative;
      if (r.status == pa::OptStatus::Optimal) std::cout << "value " << r.value << "\n";
      for (std::size_t i = 0; i < r.point.size(); ++i)
        std::cout << r.vars[i].name() << " = " << r.point[i] << "\n";
      if (r.status == pa::OptStatus::Unbounded) {
        std::cout << "direction";
        for (const auto& d : r.direction) std::cout << " " << d;
        std::cout << "\n";
      }
      return kOk;
    }

    campaign::OracleOptions oo;
    oo.min_cost = min_cost;
    oo.delta_only = delta_only;
    campaign::PipelineOptions po;
    po.encode.min_cost = min_cost;
    po.encode.delta_only = delta_only;
    po.qe = campaign_qe == "cooper" ? campaign::QeStrategy::Cooper : campaign::QeStrategy::Bounded;

    if (solve->parsed() || oracle->parsed()) {
      const campaign::GameSpec spec = campaign::load_spec(spec_path);
      if (dump) {
        auto eo = po.encode;
        eo.adversary_first = second;
        campaign::GameSpec g = spec;
        if (g.adversary_mode == campaign::AdversaryMode::WorstCase)
          g = campaign::collapse_adversaries(g);
        std::cout << pa::to_string(campaign::encode_modular_phi(g, eo).phi) << "\n";
      }
      if (second) {
        campaign::PipelineReport rep;
        bool value = solve->parsed() ? campaign::decide_second_player(spec, po, &rep)
                                     : campaign::minimax_second_player(spec, oo);
        if (as_json) {
          std::cout << json{{"second_player_wins", value}}.dump() << "\n";
        } else {
          std::cout << (value ? "true" : "false") << "\n";
        }
        if (report) std::cout << "phi " << metrics_text(rep.phi) << " qe_ms " << rep.qe_ms << "\n";
        return value ? kOk : kNegative;
      }
      campaign::PipelineReport rep;
      const campaign::SolveOutcome o = solve->parsed() ? campaign::solve_first_move(spec, po, &rep)
                                                       : campaign::minimax_solve(spec, oo);
      print_outcome(o, spec, as_json);
      if (report) {
        std::cout << "phi " << metrics_text(rep.phi) << " free " << rep.free_vars << " bound "
                  << rep.bound_vars << "\n"
                  << "qe " << metrics_text(rep.qe_result) << " points " << rep.bounded.points
                  << " memo_hits " << rep.bounded.memo_hits << " fallbacks "
                  << rep.bounded.fallbacks << "\n"
                  << "conjuncts " << rep.conjuncts << " nodes " << rep.minimize_nodes << "\n"
                  << "ms encode " << rep.encode_ms << " qe " << rep.qe_ms << " dnf " << rep.dnf_ms
                  << " minimize " << rep.minimize_ms << "\n";
      }
      return o.status == campaign::Status::Win ? kOk : kNegative;
    }

    // verify
    auto progress_cb = [&](std::size_t i, const campaign::Verdict& v) {
      if (!v.agree) std::cout << "MISMATCH " << v.detail << "\n";
      if (progress != 0 && (i + 1) % progress == 0) std::cout << "checked " << i + 1 << std::endl;
      return true;
    };
    campaign::FamilyReport rep;
    if (family == "small") {
      campaign::SmallFamily f;
      std::vector<std::size_t> idx;
      if (sample != 0) {
        idx = f.subsample(sample);
      } else {
        const std::size_t n = limit != 0 ? std::min(limit, f.size()) : f.size();
        for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
      }
      rep = campaign::verify_family(f, idx, po, oo, progress_cb);
    } else {
      std::vector<campaign::GameSpec> specs;
      for (const auto& p : verify_specs) specs.push_back(campaign::load_spec(p));
      if (!family.empty()) {
        std::ifstream in(family);
        if (!in) throw std::invalid_argument("cannot open " + family);
        std::string line;
        while (std::getline(in, line))
          if (line.find_first_not_of(" \t\r") != std::string::npos)
            specs.push_back(campaign::parse_spec(line));
      }
      if (specs.empty()) throw std::invalid_argument("nothing to verify");
      if (limit != 0 && specs.size() > limit) specs.resize(limit);
      rep = campaign::verify_all(specs, po, oo, progress_cb);
    }
    if (as_json) {
      std::cout << json{{"checked", rep.checked}, {"agreed", rep.agreed}, {"wins", rep.wins},
                        {"errors", rep.errors}, {"seconds", rep.seconds}}
                       .dump()
                << "\n";
    } else {
      std::cout << "checked " << rep.checked << " agreed " << rep.agreed << " wins " << rep.wins
                << " errors " << rep.errors << " seconds " << rep.seconds << "\n";
    }
    return rep.agreed == rep.checked ? kOk : kNegative;
  } catch (const pa::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const campaign::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kInput;
  } catch (const pa::FormulaError& e) {
    std::cerr << "formula error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const pa::ResourceExhausted& e) {
    std::cerr << "resource exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const campaign::TooLarge& e) {
    std::cerr << "resource exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const campaign::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kInput;
  }
}
