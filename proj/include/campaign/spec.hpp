#pragma once

#include "campaign/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace campaign {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BudgetScheme { PerRound, Initial, Chunked, Adaptive };
enum class Behavior { Plain, Loyal, Semiloyal };
enum class AdversaryMode { WorstCase, MovNonDecrease };
enum class WinningKind { Unique, Margin };

struct Winning {
  WinningKind kind = WinningKind::Unique;
  /// Margin kind: every other candidate must satisfy S_c < S_p + margin.
  Count margin = 0;

  friend bool operator==(const Winning&, const Winning&) = default;
};

/// One briber's budget stream. Its meaning depends on the scheme:
///  - PerRound: amounts[i] is available in round i (one value is broadcast);
///  - Initial: amounts[0] for the whole game, unspent money carries over;
///  - Chunked: amounts[i] is added in round i; with `reset` the leftover is
///    dropped each round;
///  - Adaptive: amounts[0] initially, then the leftover plus
///    weight * S_q of the society this briber faced in the previous round,
///    q being the briber's preferred candidate.
struct Stream {
  std::vector<Count> amounts;
  Count weight = 1;

  friend bool operator==(const Stream&, const Stream&) = default;
};

struct GameSpec {
  std::vector<std::string> candidates;
  std::vector<VoterType> types;
  Society society;
  int preferred = 0;
  int bribers = 2;
  int rounds = 1;
  BudgetScheme scheme = BudgetScheme::PerRound;
  bool reset = false;
  Stream ours;
  /// One stream per adversary (bribers - 1 entries).
  std::vector<Stream> adversaries;
  /// Preferred candidate of each adversary; MovNonDecrease and adaptive
  /// budgets use it.
  std::vector<int> adversary_preferred;
  ScoringRule rule;
  Winning winning;
  Behavior behavior = Behavior::Plain;
  Count surcharge = 0;
  AdversaryMode adversary_mode = AdversaryMode::WorstCase;
  std::string postprocess = "identity";

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

enum class Status { Win, NoStrategy };

struct SolveOutcome {
  Status status = Status::NoStrategy;
  /// Win only: over the expanded types, row-major.
  Move first_move;
  Count cost = 0;

  friend bool operator==(const SolveOutcome&, const SolveOutcome&) = default;
};

/// Checks the structural invariants and fills defaults (broadcast
/// per-round streams, adversary preferred candidates). Throws SpecError.
void validate(GameSpec& spec);

[[nodiscard]] GameSpec parse_spec(std::string_view json);
[[nodiscard]] GameSpec load_spec(const std::string& path);
[[nodiscard]] std::string spec_to_json(const GameSpec& spec);

/// Merges all adversaries into one whose stream is the streamwise sum
/// (adaptive weights add up). Identity for k = 2. Throws SpecError under
/// MovNonDecrease with more than one adversary.
[[nodiscard]] GameSpec collapse_adversaries(const GameSpec& spec);

/// Budget of a stream in round `round` (0-based) before carry-over: the
/// per-round amount, the chunk, or (Initial/Adaptive) the start budget in
/// round 0 and nothing afterwards.
[[nodiscard]] Count fresh_money(const GameSpec& spec, const Stream& s, int round);

/// True when unspent money is carried into the next round.
[[nodiscard]] bool carries_over(const GameSpec& spec);

/// The behaviour expansion of the spec's types with swap costs.
[[nodiscard]] Expansion expand(const GameSpec& spec);

/// Largest budget constant, chunk, or initial count; the bound on the
/// constants of an encoding.
[[nodiscard]] Count largest_constant(const GameSpec& spec);

[[nodiscard]] const char* to_string(Status s);
[[nodiscard]] const char* to_string(BudgetScheme s);
[[nodiscard]] const char* to_string(Behavior b);
[[nodiscard]] const char* to_string(AdversaryMode m);

}  // namespace campaign
