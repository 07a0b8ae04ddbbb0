#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "bdh/random_stream.hpp"

namespace bdh {

/// Fitness-ranked type population: total birth rate lambda*N, total death
/// rate N, a death removing the minimum-fitness type. With a single type
/// present death is disabled, so the population never empties.
class TypePopulation {
 public:
  /// Founds the population with one type whose fitness is drawn from rng.
  TypePopulation(double lambda, RandomStream& rng);

  /// Founds the population with explicit (id, fitness) pairs.
  TypePopulation(double lambda,
                 const std::vector<std::pair<std::uint64_t, double>>& founders);

  double clock() const { return clock_; }
  double lambda() const { return lambda_; }
  std::size_t size() const { return types_.size(); }

  /// Id of the maximum-fitness type. Depends only on the fitness ranking,
  /// so it is invariant under strictly increasing reparameterization.
  std::uint64_t dominating_type() const;

  /// Apply exactly one birth/death event (dwell plus jump).
  void advance_one_event(RandomStream& rng);

  /// Advance to time `until`; the dwell that would cross it is not applied.
  void evolve(double until, RandomStream& rng);

  const std::set<std::pair<double, std::uint64_t>>& types() const {
    return types_;
  }

  static constexpr std::size_t kMaxPopulation = 1'000'000;

 private:
  std::set<std::pair<double, std::uint64_t>> types_;  // (fitness, id)
  double clock_ = 0.0;
  double lambda_;
  std::uint64_t next_id_ = 0;

  double draw_dwell(RandomStream& rng) const;
  void apply_event(RandomStream& rng);
};

struct PersistenceEstimate {
  double lambda = 1.0;
  double delta = 0.5;
  double horizon_t = 0.0;
  std::uint64_t reps = 0;
  double p_hat = 0.0;
  double std_err = 0.0;
};

/// One persistence repeat: evolve a founding type to horizon_t and report
/// whether the dominating types at delta*horizon_t and at horizon_t agree.
bool persistence_rep(double lambda, double delta, double horizon_t,
                     RandomStream& rng);

/// Monte Carlo frequency of dominating-type persistence over `reps`
/// independent repeats scheduled on streams (seed, 0..reps-1).
PersistenceEstimate estimate_persistence(double lambda, double delta,
                                         double horizon_t, std::uint64_t reps,
                                         std::uint64_t seed,
                                         unsigned threads = 1);

}  // namespace bdh
