#include "bdh/runner.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bdh/errors.hpp"

namespace bdh {

void BatchConfig::validate() const {
  if (repeats < 1) throw invalid_parameter("repeats must be >= 1");
  if (mode == SimMode::kHybrid) {
    if (lambda != 1.0)
      throw invalid_parameter(
          "the hybrid sampler supports the critical case (lambda = 1) only");
    HybridConfig{p, step_cap}.validate();
  } else {
    ModelParams{lambda}.validate();
    if (step_cap < 1) throw invalid_parameter("step_cap must be >= 1");
  }
}

std::vector<SimRecord> run_batch(const BatchConfig& config) {
  config.validate();
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, config.repeats));

  std::vector<SimRecord> records(config.repeats);
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (config.repeats + threads - 1) / threads;

  auto work = [&](unsigned w) {
    try {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min(config.repeats, lo + chunk);
      for (std::uint64_t rep = lo; rep < hi; ++rep) {
        RandomStream rng = make_stream(config.seed, rep);
        if (config.mode == SimMode::kHybrid) {
          records[rep] =
              simulate_return_time(HybridConfig{config.p, config.step_cap}, rng);
        } else {
          records[rep] = simulate_hitting_direct(ModelParams{config.lambda},
                                                 config.step_cap, rng);
        }
      }
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

  return records;
}

OutcomeCounts count_outcomes(const std::vector<SimRecord>& records) {
  OutcomeCounts counts;
  for (const auto& rec : records) {
    switch (rec.outcome) {
      case Outcome::kDirect:
        ++counts.direct;
        break;
      case Outcome::kTailDrawn:
        ++counts.tail_drawn;
        break;
      case Outcome::kCensored:
        ++counts.censored;
        break;
    }
  }
  return counts;
}

}  // namespace bdh
