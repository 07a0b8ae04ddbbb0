#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "bdh/errors.hpp"
#include "bdh/random_stream.hpp"
#include "bdh/stats.hpp"
#include "doctest.h"

using namespace bdh;

namespace {

std::vector<std::uint64_t> draw_u64(std::uint64_t seed, std::uint64_t index,
                                    std::size_t n) {
  RandomStream rng = make_stream(seed, index);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = rng.next_u64();
  return out;
}

}  // namespace

// Reference outputs of Philox4x64-10 for key = (seed, stream_index) and a
// zero-initialized counter, generated with numpy.random.Philox (numpy 2.2.6).
TEST_CASE("philox reference vectors") {
  const std::vector<std::uint64_t> key_42_0 = {
      0xd1f8817d4d62880eULL, 0x307266b65cc8797eULL, 0xde1f04e7f084ed03ULL,
      0x65034a8e78cd1e59ULL, 0x5e3daa8961c3e3d3ULL, 0x6f37dea4a04bd05cULL,
      0x31d3a1ae26e190b9ULL, 0x0fef7fae0ab2a01aULL};
  CHECK(draw_u64(42, 0, 8) == key_42_0);

  const std::vector<std::uint64_t> key_42_7 = {
      0xa64064f34e84b9a3ULL, 0xe287959a866a08fdULL, 0x8dc181f009b96c03ULL,
      0xf3f6001d4fa83454ULL, 0x69c633ee791df6b3ULL, 0x89327f7a8f0127a4ULL,
      0x1ed8260458996ff6ULL, 0x4299f7433fb1683eULL};
  CHECK(draw_u64(42, 7, 8) == key_42_7);

  const std::vector<std::uint64_t> key_0_0 = {
      0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
      0x907d7a052fd5b4dcULL, 0x809bf322883987c3ULL, 0x471128b9e807f7ddULL,
      0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL};
  CHECK(draw_u64(0, 0, 8) == key_0_0);
}

TEST_CASE("stream determinism and distinctness") {
  CHECK(draw_u64(42, 0, 100) == draw_u64(42, 0, 100));
  CHECK(draw_u64(42, 0, 100) != draw_u64(42, 1, 100));
  CHECK(draw_u64(42, 0, 100) != draw_u64(43, 0, 100));
}

TEST_CASE("stream output does not depend on the thread count") {
  const auto reference = draw_u64(42, 7, 100);
  std::vector<std::vector<std::uint64_t>> results(8);
  std::vector<std::thread> pool;
  for (int w = 0; w < 8; ++w)
    pool.emplace_back([&results, w] { results[w] = draw_u64(42, 7, 100); });
  for (auto& t : pool) t.join();
  for (const auto& r : results) CHECK(r == reference);
}

TEST_CASE("uniform01 stays in [0,1)") {
  RandomStream rng = make_stream(9, 3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("exponential inverse CDF closed forms") {
  CHECK(exponential_icdf(1.0, 0.0) == 0.0);
  CHECK(exponential_icdf(2.0, 1.0 - std::exp(-1.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(exponential_icdf(0.0, 0.5), invalid_parameter);
  CHECK_THROWS_AS(exponential_icdf(-1.0, 0.5), invalid_parameter);
  CHECK_THROWS_AS(exponential_icdf(std::nan(""), 0.5), invalid_parameter);
  CHECK_THROWS_AS(
      exponential_icdf(std::numeric_limits<double>::infinity(), 0.5),
      invalid_parameter);
}

TEST_CASE("exponential sample moments") {
  // Mean of 1e5 draws at rate 4 must land within 0.01 of 0.25.
  {
    RandomStream rng = make_stream(7, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += sample_exponential(4.0, rng);
    CHECK(std::abs(sum / n - 0.25) < 0.01);
  }
  // Mean and variance at rate 3 within 5 standard errors.
  {
    RandomStream rng = make_stream(7, 1);
    const int n = 100000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_exponential(3.0, rng);
    double mean = 0.0;
    for (const double d : draws) mean += d;
    mean /= n;
    double var = 0.0;
    for (const double d : draws) var += (d - mean) * (d - mean);
    var /= n - 1;
    const double mu = 1.0 / 3.0, sigma2 = 1.0 / 9.0;
    CHECK(std::abs(mean - mu) < 5.0 * mu / std::sqrt(double(n)));
    CHECK(std::abs(var - sigma2) < 5.0 * sigma2 * std::sqrt(8.0 / n));
  }
}

TEST_CASE("pareto tail inverse CDF closed forms") {
  const TailLaw law = TailLaw::critical(2000.0);
  CHECK(law.alpha == 2.0);
  CHECK(law.gamma == 1.0);
  CHECK(law.c == 1.0);
  CHECK(pareto_tail_icdf(law, 0.0) == 2000.0);
  CHECK(pareto_tail_icdf(law, 0.5) == doctest::Approx(4000.0).epsilon(1e-12));
  CHECK(pareto_tail_icdf(TailLaw::critical(10000.0), 0.99) ==
        doctest::Approx(1e6).epsilon(1e-9));
  CHECK_THROWS_AS(TailLaw::with_alpha(2000.0, 1.0), invalid_parameter);
  CHECK_THROWS_AS(TailLaw::with_alpha(2000.0, 0.5), invalid_parameter);
  CHECK_THROWS_AS(TailLaw::with_alpha(0.0, 2.0), invalid_parameter);
}

TEST_CASE("pareto tail draw is strictly increasing in u") {
  const TailLaw law = TailLaw::critical(5.0);
  RandomStream rng = make_stream(11, 0);
  for (int i = 0; i < 1000; ++i) {
    double u1 = rng.uniform01();
    double u2 = rng.uniform01();
    if (u1 == u2) continue;
    if (u1 > u2) std::swap(u1, u2);
    CHECK(pareto_tail_icdf(law, u1) < pareto_tail_icdf(law, u2));
  }
}

TEST_CASE("pareto sampler matches the analytic law") {
  const TailLaw law = TailLaw::critical(1.0);
  RandomStream rng = make_stream(13, 0);
  std::vector<double> draws(100000);
  for (auto& d : draws) {
    d = sample_pareto_tail(law, rng);
    CHECK(d >= 1.0);
  }
  const auto ks = ks_one_sample(draws, [](double t) {
    return t <= 1.0 ? 0.0 : 1.0 - 1.0 / t;
  });
  CHECK(ks.p_value >= 0.01);
}
