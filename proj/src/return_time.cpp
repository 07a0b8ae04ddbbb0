#include "bdh/return_time.hpp"

#include <cassert>
#include <cmath>

#include "bdh/errors.hpp"

namespace bdh {

void ModelParams::validate() const {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw invalid_parameter("lambda must be positive and finite");
}

void HybridConfig::validate() const {
  if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
    throw invalid_parameter("tail probability p must lie in (0,1)");
  if (step_cap < 1) throw invalid_parameter("step_cap must be >= 1");
}

EmbeddedStep step_embedded(std::uint64_t state, const ModelParams& params,
                           RandomStream& rng) {
  if (state < 2) throw invalid_parameter("embedded step requires state >= 2");
  params.validate();
  const double rate = static_cast<double>(state) * (1.0 + params.lambda);
  const double dwell = sample_exponential(rate, rng);
  const double up_prob = params.lambda / (1.0 + params.lambda);
  const int delta = rng.uniform01() < up_prob ? +1 : -1;
  return EmbeddedStep{dwell, delta};
}

SimRecord simulate_hitting_direct(const ModelParams& params,
                                  std::uint64_t step_cap, RandomStream& rng) {
  params.validate();
  if (step_cap < 1) throw invalid_parameter("step_cap must be >= 1");

  std::uint64_t state = 2;
  double h = 0.0;
  std::uint64_t steps = 0;
  while (state != 1 && steps < step_cap) {
    const EmbeddedStep step = step_embedded(state, params, rng);
    h += step.dwell;
    state = static_cast<std::uint64_t>(static_cast<std::int64_t>(state) + step.delta);
    ++steps;
  }

  SimRecord rec;
  rec.h = h;
  rec.steps = steps;
  rec.final_state = state;
  rec.outcome = state == 1 ? Outcome::kDirect : Outcome::kCensored;
  rec.x = sample_exponential(params.lambda, rng);
  rec.return_time = rec.x + rec.h;
  return rec;
}

SimRecord simulate_hitting_hybrid(const HybridConfig& config, RandomStream& rng) {
  config.validate();
  const double t_min = config.t_min();

  std::uint64_t n = 2;
  double h = 0.0;
  std::uint64_t steps = 0;
  while (h <= t_min && n != 1) {
    h += sample_exponential(2.0 * static_cast<double>(n), rng);
    if (h <= t_min) {
      n += rng.uniform01() < 0.5 ? +1 : -1;
      ++steps;
    }
  }

  SimRecord rec;
  rec.steps = steps;
  if (h > t_min || n != 1) {
    // Loop exit makes the disjunction coincide with h > t_min.
    assert(h > t_min && n != 1);
    rec.h = sample_pareto_tail(TailLaw::critical(t_min), rng);
    rec.final_state = n;
    rec.outcome = Outcome::kTailDrawn;
  } else {
    rec.h = h;
    rec.final_state = 1;
    rec.outcome = Outcome::kDirect;
  }
  rec.x = sample_exponential(1.0, rng);
  rec.return_time = rec.x + rec.h;
  return rec;
}

SimRecord simulate_return_time(const HybridConfig& config, RandomStream& rng) {
  return simulate_hitting_hybrid(config, rng);
}

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::kDirect:
      return "direct";
    case Outcome::kTailDrawn:
      return "tail";
    case Outcome::kCensored:
      return "censored";
  }
  return "unknown";
}

}  // namespace bdh
