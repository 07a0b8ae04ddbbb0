#pragma once

#include <cstdint>

#include "bdh/random_stream.hpp"

namespace bdh {

/// Birth-death chain parameters: per-capita birth rate lambda, per-capita
/// death rate 1. The hybrid sampler supports the critical case only.
struct ModelParams {
  double lambda = 1.0;

  void validate() const;
};

/// Configuration of the hybrid sampler. The threshold is t_min = 1/p: with
/// probability roughly 1-p the excursion completes below it and is returned
/// as simulated; otherwise the hitting time is drawn from the tail law.
struct HybridConfig {
  double p = 0.005;
  std::uint64_t step_cap = 100'000'000;  // consumed by direct mode only

  double t_min() const { return 1.0 / p; }
  void validate() const;
};

enum class Outcome : std::uint8_t {
  kDirect,     // state 1 reached (below threshold, in hybrid mode)
  kTailDrawn,  // threshold exceeded; h replaced by a tail draw
  kCensored,   // direct mode: step cap hit before reaching state 1
};

/// One simulated excursion. h is the hitting time from state 2 to state 1,
/// x the fresh exp(lambda) dwell at state 1, and return_time = x + h.
struct SimRecord {
  double h = 0.0;
  double x = 0.0;
  double return_time = 0.0;
  std::uint64_t steps = 0;        // embedded-chain transitions applied
  std::uint64_t final_state = 1;  // chain state when direct simulation stopped
  Outcome outcome = Outcome::kDirect;
};

struct EmbeddedStep {
  double dwell;
  int delta;  // +1 or -1
};

/// One jump of the embedded chain from `state` >= 2: dwell is exponential
/// with rate state*(1+lambda), the move is +1 with probability
/// lambda/(1+lambda) and -1 otherwise.
EmbeddedStep step_embedded(std::uint64_t state, const ModelParams& params,
                           RandomStream& rng);

/// Simulate the excursion from state 2 by stepping the embedded chain until
/// state 1 is reached or step_cap transitions have been taken (censored).
SimRecord simulate_hitting_direct(const ModelParams& params,
                                  std::uint64_t step_cap, RandomStream& rng);

/// The hybrid sampler for the critical case. Direct simulation runs while
/// the accumulated time stays at or below t_min = 1/p; once it exceeds the
/// threshold the partial path is discarded and h is drawn from the power-law
/// tail on (t_min, inf) with alpha = 2.
SimRecord simulate_hitting_hybrid(const HybridConfig& config, RandomStream& rng);

/// Public entry point: full 1 -> 1 return-time record (x + h).
SimRecord simulate_return_time(const HybridConfig& config, RandomStream& rng);

const char* outcome_name(Outcome outcome);

}  // namespace bdh
