#include "bdh/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bdh/errors.hpp"

namespace bdh {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw invalid_parameter("ecdf requires a non-empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double kolmogorov_q(double x) {
  if (!(x >= 0.0)) throw invalid_parameter("kolmogorov_q requires x >= 0");
  // Q(0.2) differs from 1 by ~5e-13, below the series truncation level.
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 2000; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    if (term < 1e-10) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p_value(double d, double n_effective) {
  const double root = std::sqrt(n_effective);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw invalid_parameter("ks_two_sample requires non-empty samples");

  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double v;
    if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j]))
      v = sa[i];
    else
      v = sb[j];
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }

  KsResult res;
  res.d_stat = d;
  res.n_effective = na * nb / (na + nb);
  res.p_value = ks_p_value(d, res.n_effective);
  return res;
}

KsResult ks_one_sample(std::span<const double> a,
                       const std::function<double(double)>& cdf) {
  if (a.empty())
    throw invalid_parameter("ks_one_sample requires a non-empty sample");

  std::vector<double> s(a.begin(), a.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  double prev_f = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    if (!(f >= 0.0 && f <= 1.0))
      throw invalid_parameter("cdf values must lie in [0,1]");
    if (f < prev_f - 1e-12)
      throw invalid_parameter("cdf must be non-decreasing");
    prev_f = f;
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - f, f - lo});
  }

  KsResult res;
  res.d_stat = d;
  res.n_effective = n;
  res.p_value = ks_p_value(d, n);
  return res;
}

TailFit fit_tail_slope(const std::function<double(double)>& survival,
                       double lo, double hi, std::size_t n_grid) {
  if (!(lo > 0.0) || !(hi > lo))
    throw invalid_parameter("tail fit window requires 0 < lo < hi");
  if (n_grid < 2) throw invalid_parameter("tail fit requires n_grid >= 2");

  const double log_step = std::log(hi / lo) / static_cast<double>(n_grid - 1);
  std::vector<double> xs, ys;
  xs.reserve(n_grid);
  ys.reserve(n_grid);
  for (std::size_t g = 0; g < n_grid; ++g) {
    const double t =
        g == n_grid - 1 ? hi : lo * std::exp(log_step * static_cast<double>(g));
    const double s = survival(t);
    if (s <= 0.0) continue;  // log of zero survival is undefined; skip
    xs.push_back(std::log(t));
    ys.push_back(std::log(s));
  }
  if (xs.size() < 2)
    throw insufficient_data("fewer than 2 grid points with positive survival");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }

  TailFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.window_lo = lo;
  fit.window_hi = hi;
  fit.n_points = xs.size();
  return fit;
}

TailFit fit_tail_slope(const EmpiricalCdf& cdf, double lo, double hi,
                       std::size_t n_grid) {
  return fit_tail_slope([&cdf](double t) { return cdf.survival(t); }, lo, hi,
                        n_grid);
}

}  // namespace bdh
