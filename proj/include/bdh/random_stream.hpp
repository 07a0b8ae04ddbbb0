#pragma once

#include <array>
#include <cstdint>

namespace bdh {

/// Counter-based random stream (Philox4x64-10).
///
/// A stream is identified by the pair (seed, stream_index), which forms the
/// cipher key: distinct pairs give statistically independent sequences, and a
/// given pair reproduces the identical sequence on every run regardless of
/// how work is distributed over threads. Streams are values; they can be
/// moved between threads but a single stream must not be shared by two
/// threads at once.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  /// Uniform on [0,1) with 53-bit resolution; never returns 1.0.
  double uniform01();

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t stream_index() const { return key_[1]; }

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_{};
  std::array<std::uint64_t, 4> block_{};
  int block_pos_ = 4;  // empty buffer; first draw refills
};

RandomStream make_stream(std::uint64_t seed, std::uint64_t stream_index);

/// Power-law tail on (t_min, inf): survival c*(t/t_min)^(-gamma) with
/// gamma = alpha - 1. The critical birth-death hitting time has c = 1,
/// gamma = 1, alpha = 2.
struct TailLaw {
  double t_min = 1.0;
  double alpha = 2.0;  // density exponent
  double gamma = 1.0;  // survival exponent, alpha - 1 exactly
  double c = 1.0;      // survival constant

  /// The critical-case law: alpha = 2, gamma = 1, c = 1.
  static TailLaw critical(double t_min);
  static TailLaw with_alpha(double t_min, double alpha, double c = 1.0);

  /// P(T <= t) = 1 - (t/t_min)^(-alpha+1) for t > t_min, else 0.
  double cdf(double t) const;
  double survival(double t) const { return 1.0 - cdf(t); }
};

/// Inverse CDF of the exponential at u in [0,1): -ln(1-u)/rate.
double exponential_icdf(double rate, double u);

/// Inverse CDF of the tail law at u in [0,1): t_min*(1-u)^(-1/(alpha-1)).
double pareto_tail_icdf(const TailLaw& law, double u);

double sample_exponential(double rate, RandomStream& rng);
double sample_pareto_tail(const TailLaw& law, RandomStream& rng);

}  // namespace bdh
