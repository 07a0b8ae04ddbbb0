#pragma once

#include <cstdint>
#include <vector>

#include "bdh/return_time.hpp"

namespace bdh {

enum class SimMode : std::uint8_t { kDirect, kHybrid };

/// One simulation experiment: `repeats` independent records, repeat i drawn
/// from stream (seed, i). The schedule is static, so the output is
/// identical for every thread count.
struct BatchConfig {
  SimMode mode = SimMode::kHybrid;
  double p = 0.005;
  double lambda = 1.0;
  std::uint64_t step_cap = 1'000'000;
  std::uint64_t repeats = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // 0 selects the hardware thread count

  void validate() const;
};

std::vector<SimRecord> run_batch(const BatchConfig& config);

struct OutcomeCounts {
  std::uint64_t direct = 0;
  std::uint64_t tail_drawn = 0;
  std::uint64_t censored = 0;

  std::uint64_t total() const { return direct + tail_drawn + censored; }
};

OutcomeCounts count_outcomes(const std::vector<SimRecord>& records);

}  // namespace bdh
