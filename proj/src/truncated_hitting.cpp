#include "bdh/truncated_hitting.hpp"

#include "bdh/errors.hpp"

namespace bdh {

TruncatedHittingTimes solve_truncated(std::uint64_t ceiling) {
  if (ceiling < 2) throw invalid_parameter("ceiling must be >= 2");

  // Unknowns u_i = h[i+2] for i = 0..m-1. Interior rows have diagonal 1 and
  // off-diagonals -1/2; the ceiling row is h[N] - h[N-1] = 1/N.
  const std::size_t m = static_cast<std::size_t>(ceiling) - 1;
  std::vector<long double> diag(m, 1.0L);
  std::vector<long double> rhs(m);
  for (std::size_t i = 0; i + 1 < m; ++i)
    rhs[i] = 0.5L / static_cast<long double>(i + 2);
  rhs[m - 1] = 1.0L / static_cast<long double>(ceiling);

  const long double sub = m > 1 ? -0.5L : 0.0L;
  const long double sub_last = -1.0L;

  // Thomas elimination. Superdiagonal is -1/2 on every interior row.
  std::vector<long double> cprime(m, 0.0L);
  if (m > 1) {
    cprime[0] = -0.5L / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < m; ++i) {
      const long double a = (i == m - 1) ? sub_last : sub;
      const long double denom = diag[i] - a * cprime[i - 1];
      if (i + 1 < m) cprime[i] = -0.5L / denom;
      rhs[i] = (rhs[i] - a * rhs[i - 1]) / denom;
    }
    for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= cprime[i] * rhs[i + 1];
  } else {
    rhs[0] /= diag[0];
  }

  TruncatedHittingTimes out;
  out.ceiling = ceiling;
  out.h.assign(static_cast<std::size_t>(ceiling) + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) out.h[i + 2] = static_cast<double>(rhs[i]);
  return out;
}

std::vector<std::pair<std::uint64_t, double>> divergence_profile(
    const std::vector<std::uint64_t>& ceilings) {
  std::vector<std::pair<std::uint64_t, double>> out;
  out.reserve(ceilings.size());
  for (const std::uint64_t n : ceilings)
    out.emplace_back(n, solve_truncated(n).from_two());
  return out;
}

}  // namespace bdh
