#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace bdh {

/// Expected hitting times of state 1 for the critical chain truncated at a
/// ceiling state (births disabled there). h[j] is the expectation starting
/// from state j; h[1] = 0 and entries below index 1 are unused.
struct TruncatedHittingTimes {
  std::uint64_t ceiling = 2;
  std::vector<double> h;  // size ceiling + 1, indexed by state

  double from_two() const { return h[2]; }
};

/// Solve the first-step system h[j] = 1/(2j) + (h[j-1] + h[j+1])/2 for
/// 2 <= j < N with h[1] = 0 and boundary h[N] = 1/N + h[N-1], by direct
/// tridiagonal elimination with extended-precision accumulation.
TruncatedHittingTimes solve_truncated(std::uint64_t ceiling);

/// h[2] per ceiling. Consecutive doublings of the ceiling raise h[2] by
/// about ln 2, which is the numerical face of the divergent mean.
std::vector<std::pair<std::uint64_t, double>> divergence_profile(
    const std::vector<std::uint64_t>& ceilings);

}  // namespace bdh
