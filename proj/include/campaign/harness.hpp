#pragma once

#include "campaign/encoder.hpp"
#include "campaign/oracle.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace campaign {

/// Outcome of checking a pipeline answer against the oracle.
struct Verdict {
  bool agree = false;
  SolveOutcome pipeline;
  SolveOutcome oracle;
  /// Empty when the answers agree.
  std::string detail;
};

/// Compares a claimed outcome with the oracle's. A Win must have the
/// oracle's status, cost and tie-broken move, must be possible and
/// affordable, and must win when replayed through the game tree. Under
/// worst-case adversaries the oracle plays the collapsed game, which is
/// the game the pipeline encodes.
[[nodiscard]] Verdict check_outcome(const GameSpec& spec, const SolveOutcome& claimed,
                                    const OracleOptions& oracle = {});

/// Runs the pipeline and checks it.
[[nodiscard]] Verdict verify(const GameSpec& spec, const PipelineOptions& pipeline = {},
                             const OracleOptions& oracle = {});

/// The exhaustive small family: m in {2,3} candidates (the first one is
/// ours), every non-empty set of at most four distinct preference orders as
/// types, counts 0..3 per type with at least one voter, one or two rounds,
/// per-round budgets 0..2 for each side, plain and loyal voters, a
/// worst-case adversary, Borda. Specs are indexed in a fixed order.
class SmallFamily {
 public:
  SmallFamily();

  [[nodiscard]] std::size_t size() const { return societies_.size() * kVariants; }
  [[nodiscard]] GameSpec at(std::size_t index) const;

  /// `n` indices spread evenly over the family: floor((2i + 1) * size / 2n)
  /// for i = 0..n-1.
  [[nodiscard]] std::vector<std::size_t> subsample(std::size_t n) const;

 private:
  struct Base {
    int candidates;
    std::vector<std::vector<int>> prefs;
    Society counts;
  };
  // rounds (2) x behaviour (2) x our budget (3) x adversary budget (3)
  static constexpr std::size_t kVariants = 36;
  std::vector<Base> societies_;
};

struct FamilyReport {
  std::size_t checked = 0;
  std::size_t agreed = 0;
  std::size_t wins = 0;
  std::size_t errors = 0;  // exceptions on either side
  std::vector<std::string> failures;
  double seconds = 0;
};

/// Verifies each spec, stopping early if `keep_going` returns false.
[[nodiscard]] FamilyReport verify_all(
    const std::vector<GameSpec>& specs, const PipelineOptions& pipeline = {},
    const OracleOptions& oracle = {},
    const std::function<bool(std::size_t, const Verdict&)>& keep_going = {});

/// Same over family indices, generating each spec on the fly.
[[nodiscard]] FamilyReport verify_family(
    const SmallFamily& family, const std::vector<std::size_t>& indices,
    const PipelineOptions& pipeline = {}, const OracleOptions& oracle = {},
    const std::function<bool(std::size_t, const Verdict&)>& keep_going = {});

}  // namespace campaign
