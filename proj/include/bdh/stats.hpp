#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bdh {

/// Right-continuous step-function estimate of a CDF from a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  /// F(t) = #{x <= t} / n.
  double operator()(double t) const;
  double survival(double t) const { return 1.0 - (*this)(t); }

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct KsResult {
  double d_stat = 0.0;
  double p_value = 1.0;
  double n_effective = 0.0;
};

/// Asymptotic Kolmogorov survival function
/// Q(x) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2), clamped to [0,1];
/// the series is truncated once terms fall below 1e-10.
double kolmogorov_q(double x);

/// Two-sample test: D is the sup distance between the two ECDFs over the
/// pooled values; the p-value uses the asymptotic Kolmogorov law at
/// (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) * D with ne = na*nb/(na+nb).
/// Asymptotic p-values are inaccurate below roughly 50 samples.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample test of a sample against a non-decreasing CDF.
KsResult ks_one_sample(std::span<const double> a,
                       const std::function<double(double)>& cdf);

struct TailFit {
  double slope = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t n_points = 0;
};

/// OLS fit of log survival against log t on a log-spaced grid of n_grid
/// points spanning [lo, hi]. Grid points with zero survival are skipped;
/// fewer than two usable points is an insufficient-data error.
TailFit fit_tail_slope(const EmpiricalCdf& cdf, double lo, double hi,
                       std::size_t n_grid);
TailFit fit_tail_slope(const std::function<double(double)>& survival,
                       double lo, double hi, std::size_t n_grid);

}  // namespace bdh
