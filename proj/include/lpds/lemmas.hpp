#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpds/pattern.hpp"

namespace lpds {

enum class LemmaTarget { lemma1_1, lemma1_2, lemma1_3, r_half, r_lower_bound, adjacent_sum };

/// `Lemma1.1`, ..., `Claim-adjacent-sum`.
std::string to_string(LemmaTarget t);

enum class LemmaOutcome { holds, counterexample, inconclusive };

std::string to_string(LemmaOutcome o);

struct LemmaVerdict {
  LemmaTarget target = LemmaTarget::lemma1_1;
  LemmaOutcome outcome = LemmaOutcome::holds;
  /// Window configuration refuting the claim with no visible violation.
  std::optional<FiniteWindow> witness;
  std::uint64_t configs_examined = 0;
  std::int64_t elapsed_ms = 0;
  std::string detail;

  bool holds() const { return outcome == LemmaOutcome::holds; }
};

struct CheckOptions {
  /// Search nodes allowed per target before giving up as inconclusive.
  std::uint64_t node_budget = 20'000'000'000ULL;
  int workers = 1;
};

/// Bounded-window enumeration around v = (0,0) in S with partner (1,0) or
/// (1,1). Parts 1 and 2 use radius 2, part 3 radius 3.
LemmaVerdict check_lemma1(int part, const CheckOptions& options = {});

/// Both r(v) claims over admissible count vectors: first the r = 1/2
/// conditions, then r >= (p3 - 1) / (2 p3).
std::vector<LemmaVerdict> check_r_claims();

/// r(v1) + r(v2) >= 1/2 for v1 = (1,0), v2 = (-1,0) in S, and the rotated
/// pair (0,1), (0,-1).
LemmaVerdict check_adjacent_sum(const CheckOptions& options = {});

/// All six targets in a fixed order.
std::vector<LemmaVerdict> check_all(const CheckOptions& options = {});

/// `<target> holds configs=<n> elapsed=<ms>`, or `<target> counterexample`
/// followed by the witness window.
std::string format_verdict(const LemmaVerdict& v);

}  // namespace lpds
