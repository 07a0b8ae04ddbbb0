#include "bdh/type_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "bdh/errors.hpp"

namespace bdh {

namespace {

void validate_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw invalid_parameter("lambda must be positive and finite");
}

// Population size above which a supercritical chain is treated as escaped:
// the probability of ever returning to a single type from state n is
// lambda^-(n-1), kept below 1e-40 here.
std::size_t escape_threshold(double lambda) {
  const double n = 1.0 + 40.0 * std::log(10.0) / std::log(lambda);
  return std::max<std::size_t>(1000, static_cast<std::size_t>(n) + 1);
}

}  // namespace

TypePopulation::TypePopulation(double lambda, RandomStream& rng)
    : lambda_(lambda) {
  validate_lambda(lambda);
  types_.emplace(rng.uniform01(), next_id_++);
}

TypePopulation::TypePopulation(
    double lambda,
    const std::vector<std::pair<std::uint64_t, double>>& founders)
    : lambda_(lambda) {
  validate_lambda(lambda);
  if (founders.empty())
    throw invalid_parameter("population requires at least one founding type");
  for (const auto& [id, fitness] : founders) {
    types_.emplace(fitness, id);
    next_id_ = std::max(next_id_, id + 1);
  }
}

std::uint64_t TypePopulation::dominating_type() const {
  return types_.rbegin()->second;
}

double TypePopulation::draw_dwell(RandomStream& rng) const {
  const double n = static_cast<double>(types_.size());
  const double rate = types_.size() == 1 ? lambda_ : n * (1.0 + lambda_);
  return sample_exponential(rate, rng);
}

void TypePopulation::apply_event(RandomStream& rng) {
  bool birth = true;
  if (types_.size() > 1)
    birth = rng.uniform01() < lambda_ / (1.0 + lambda_);
  if (birth) {
    if (types_.size() >= kMaxPopulation)
      throw limit_exceeded("population size cap reached");
    types_.emplace(rng.uniform01(), next_id_++);
  } else {
    types_.erase(types_.begin());  // minimum-fitness type goes extinct
  }
}

void TypePopulation::advance_one_event(RandomStream& rng) {
  clock_ += draw_dwell(rng);
  apply_event(rng);
}

void TypePopulation::evolve(double until, RandomStream& rng) {
  if (!(until >= clock_))
    throw invalid_parameter("evolve target precedes the current clock");
  while (true) {
    const double dwell = draw_dwell(rng);
    if (clock_ + dwell > until) {
      clock_ = until;
      return;
    }
    clock_ += dwell;
    apply_event(rng);
  }
}

// The persistence repeat runs on the size process plus the running fitness
// record: a death always removes the minimum-fitness type, so the record
// holder stays alive and is the dominating type at every instant. Tracking
// ids of non-record types would not change the outcome.
bool persistence_rep(double lambda, double delta, double horizon_t,
                     RandomStream& rng) {
  validate_lambda(lambda);
  if (!(delta > 0.0 && delta <= 1.0))
    throw invalid_parameter("delta must lie in (0,1]");
  if (!std::isfinite(horizon_t) || horizon_t <= 0.0)
    throw invalid_parameter("horizon must be positive and finite");

  const double query = delta * horizon_t;
  const std::size_t escape_n =
      lambda > 1.0 ? escape_threshold(lambda) : TypePopulation::kMaxPopulation;

  std::size_t n = 1;
  double clock = 0.0;
  std::uint64_t next_id = 0;
  double record_fitness = rng.uniform01();
  std::uint64_t record_id = next_id++;

  bool snapped = false;
  std::uint64_t dominating_at_query = record_id;

  while (true) {
    const double rate =
        n == 1 ? lambda : static_cast<double>(n) * (1.0 + lambda);
    const double next_time = clock + sample_exponential(rate, rng);
    if (!snapped && next_time > query) {
      dominating_at_query = record_id;
      snapped = true;
    }
    if (next_time > horizon_t) break;
    clock = next_time;

    bool birth = true;
    if (n > 1) birth = rng.uniform01() < lambda / (1.0 + lambda);
    if (birth) {
      const double fitness = rng.uniform01();
      const std::uint64_t id = next_id++;
      ++n;
      if (fitness > record_fitness) {
        record_fitness = fitness;
        record_id = id;
        // A dethroned dominating type never regains dominance.
        if (snapped) return false;
      }
    } else {
      --n;
    }

    if (lambda > 1.0 && n >= escape_n) {
      // Escaped supercritical regime: the record is broken again after the
      // query time with probability 1 minus less than 1e-12, provided the
      // remaining window holds at least e^50 further births. Below that the
      // event-driven loop continues.
      const double window = horizon_t - std::max(clock, query);
      if ((lambda - 1.0) * window >= 100.0) return false;
    }
    if (n >= TypePopulation::kMaxPopulation)
      throw limit_exceeded("population size cap reached");
  }

  return dominating_at_query == record_id;
}

PersistenceEstimate estimate_persistence(double lambda, double delta,
                                         double horizon_t, std::uint64_t reps,
                                         std::uint64_t seed, unsigned threads) {
  validate_lambda(lambda);
  if (!(delta > 0.0 && delta <= 1.0))
    throw invalid_parameter("delta must lie in (0,1]");
  if (reps < 1) throw invalid_parameter("reps must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, reps));

  std::vector<std::uint64_t> hits(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (reps + threads - 1) / threads;

  auto work = [&](unsigned w) {
    try {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min(reps, lo + chunk);
      std::uint64_t count = 0;
      for (std::uint64_t rep = lo; rep < hi; ++rep) {
        RandomStream rng = make_stream(seed, rep);
        if (persistence_rep(lambda, delta, horizon_t, rng)) ++count;
      }
      hits[w] = count;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  std::uint64_t total = 0;
  for (const auto h : hits) total += h;

  PersistenceEstimate est;
  est.lambda = lambda;
  est.delta = delta;
  est.horizon_t = horizon_t;
  est.reps = reps;
  est.p_hat = static_cast<double>(total) / static_cast<double>(reps);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                          static_cast<double>(reps));
  return est;
}

}  // namespace bdh
