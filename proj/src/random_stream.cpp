#include "bdh/random_stream.hpp"

#include <cmath>
#include <limits>

#include "bdh/errors.hpp"

namespace bdh {

namespace {

// Philox4x64-10 constants (multipliers and Weyl key increments).
constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(prod >> 64);
  return static_cast<std::uint64_t>(prod);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index)
    : key_{seed, stream_index} {}

void RandomStream::refill() {
  // 256-bit counter, least-significant word first; incremented before the
  // block is encrypted (matching numpy.random.Philox, the reference used
  // for the known-answer tests).
  for (auto& word : counter_) {
    if (++word != 0) break;
  }
  std::array<std::uint64_t, 4> x = counter_;
  std::array<std::uint64_t, 2> k = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kMul0, x[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, x[2], hi1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  block_ = x;
  block_pos_ = 0;
}

std::uint64_t RandomStream::next_u64() {
  if (block_pos_ == 4) refill();
  return block_[block_pos_++];
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RandomStream make_stream(std::uint64_t seed, std::uint64_t stream_index) {
  return RandomStream(seed, stream_index);
}

TailLaw TailLaw::critical(double t_min) { return with_alpha(t_min, 2.0, 1.0); }

TailLaw TailLaw::with_alpha(double t_min, double alpha, double c) {
  if (!std::isfinite(t_min) || t_min <= 0.0)
    throw invalid_parameter("tail law requires t_min > 0");
  if (!std::isfinite(alpha) || alpha <= 1.0)
    throw invalid_parameter("tail law requires alpha > 1");
  if (!std::isfinite(c) || c <= 0.0)
    throw invalid_parameter("tail law requires c > 0");
  return TailLaw{t_min, alpha, alpha - 1.0, c};
}

double TailLaw::cdf(double t) const {
  if (t <= t_min) return 0.0;
  return 1.0 - std::pow(t / t_min, -alpha + 1.0);
}

double exponential_icdf(double rate, double u) {
  if (!std::isfinite(rate) || rate <= 0.0)
    throw invalid_parameter("exponential rate must be positive and finite");
  return -std::log1p(-u) / rate;
}

double pareto_tail_icdf(const TailLaw& law, double u) {
  if (!std::isfinite(law.alpha) || law.alpha <= 1.0)
    throw invalid_parameter("pareto tail requires alpha > 1");
  if (!std::isfinite(law.t_min) || law.t_min <= 0.0)
    throw invalid_parameter("pareto tail requires t_min > 0");
  return law.t_min * std::pow(1.0 - u, -1.0 / (law.alpha - 1.0));
}

double sample_exponential(double rate, RandomStream& rng) {
  return exponential_icdf(rate, rng.uniform01());
}

double sample_pareto_tail(const TailLaw& law, RandomStream& rng) {
  return pareto_tail_icdf(law, rng.uniform01());
}

}  // namespace bdh
