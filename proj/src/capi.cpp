#include "bdhsim.h"

#include <cstring>
#include <exception>
#include <span>
#include <string>

#include "bdh/errors.hpp"
#include "bdh/random_stream.hpp"
#include "bdh/return_time.hpp"
#include "bdh/runner.hpp"
#include "bdh/stats.hpp"
#include "bdh/truncated_hitting.hpp"
#include "bdh/type_dynamics.hpp"

struct bdh_stream {
  bdh::RandomStream impl;
};

struct bdh_ecdf {
  bdh::EmpiricalCdf impl;
};

namespace {

thread_local std::string g_last_error;

bdh_status fail(bdh_status code, const char* message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
bdh_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BDH_OK;
  } catch (const bdh::invalid_parameter& e) {
    return fail(BDH_ERR_INVALID, e.what());
  } catch (const bdh::insufficient_data& e) {
    return fail(BDH_ERR_INSUFFICIENT, e.what());
  } catch (const bdh::limit_exceeded& e) {
    return fail(BDH_ERR_LIMIT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BDH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BDH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BDH_ERR_INTERNAL, "unknown error");
  }
}

void to_c_record(const bdh::SimRecord& rec, bdh_sim_record* out) {
  out->h = rec.h;
  out->x = rec.x;
  out->return_time = rec.return_time;
  out->steps = rec.steps;
  out->final_state = rec.final_state;
  out->outcome = static_cast<int32_t>(rec.outcome);
}

bdh_status run_batch_to(const bdh::BatchConfig& config, bdh_sim_record* out) {
  return guarded([&] {
    const auto records = bdh::run_batch(config);
    for (size_t i = 0; i < records.size(); ++i) to_c_record(records[i], &out[i]);
  });
}

}  // namespace

extern "C" {

const char* bdh_version(void) { return "0.1.0"; }

const char* bdh_last_error(void) { return g_last_error.c_str(); }

bdh_status bdh_stream_new(uint64_t seed, uint64_t stream_index,
                          bdh_stream** out) {
  if (out == nullptr) return fail(BDH_ERR_INVALID, "out pointer is null");
  return guarded([&] { *out = new bdh_stream{bdh::make_stream(seed, stream_index)}; });
}

void bdh_stream_free(bdh_stream* stream) { delete stream; }

bdh_status bdh_stream_uniform(bdh_stream* stream, double* out) {
  if (stream == nullptr || out == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] { *out = stream->impl.uniform01(); });
}

bdh_status bdh_sample_exponential(bdh_stream* stream, double rate,
                                  double* out) {
  if (stream == nullptr || out == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] { *out = bdh::sample_exponential(rate, stream->impl); });
}

bdh_status bdh_sample_pareto_tail(bdh_stream* stream, double t_min,
                                  double alpha, double* out) {
  if (stream == nullptr || out == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = bdh::sample_pareto_tail(bdh::TailLaw::with_alpha(t_min, alpha),
                                   stream->impl);
  });
}

bdh_status bdh_simulate_hybrid(bdh_stream* stream, double p,
                               bdh_sim_record* out) {
  if (stream == nullptr || out == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    to_c_record(bdh::simulate_return_time(bdh::HybridConfig{p}, stream->impl),
                out);
  });
}

bdh_status bdh_simulate_direct(bdh_stream* stream, double lambda,
                               uint64_t step_cap, bdh_sim_record* out) {
  if (stream == nullptr || out == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    to_c_record(bdh::simulate_hitting_direct(bdh::ModelParams{lambda},
                                             step_cap, stream->impl),
                out);
  });
}

bdh_status bdh_run_hybrid(double p, uint64_t repeats, uint64_t seed,
                          unsigned threads, bdh_sim_record* out) {
  if (out == nullptr) return fail(BDH_ERR_INVALID, "out pointer is null");
  bdh::BatchConfig config;
  config.mode = bdh::SimMode::kHybrid;
  config.p = p;
  config.repeats = repeats;
  config.seed = seed;
  config.threads = threads;
  return run_batch_to(config, out);
}

bdh_status bdh_run_direct(double lambda, uint64_t step_cap, uint64_t repeats,
                          uint64_t seed, unsigned threads,
                          bdh_sim_record* out) {
  if (out == nullptr) return fail(BDH_ERR_INVALID, "out pointer is null");
  bdh::BatchConfig config;
  config.mode = bdh::SimMode::kDirect;
  config.lambda = lambda;
  config.step_cap = step_cap;
  config.repeats = repeats;
  config.seed = seed;
  config.threads = threads;
  return run_batch_to(config, out);
}

bdh_status bdh_solve_truncated(uint64_t ceiling, double* h, size_t len) {
  if (h == nullptr) return fail(BDH_ERR_INVALID, "h pointer is null");
  if (len < ceiling + 1)
    return fail(BDH_ERR_INVALID, "h must hold ceiling + 1 entries");
  return guarded([&] {
    const auto solved = bdh::solve_truncated(ceiling);
    std::memcpy(h, solved.h.data(), solved.h.size() * sizeof(double));
  });
}

bdh_status bdh_hitting_time_from_two(uint64_t ceiling, double* h2) {
  if (h2 == nullptr) return fail(BDH_ERR_INVALID, "h2 pointer is null");
  return guarded([&] { *h2 = bdh::solve_truncated(ceiling).from_two(); });
}

bdh_status bdh_estimate_persistence(double lambda, double delta,
                                    double horizon_t, uint64_t reps,
                                    uint64_t seed, unsigned threads,
                                    double* p_hat, double* std_err) {
  if (p_hat == nullptr || std_err == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto est =
        bdh::estimate_persistence(lambda, delta, horizon_t, reps, seed, threads);
    *p_hat = est.p_hat;
    *std_err = est.std_err;
  });
}

bdh_status bdh_ecdf_new(const double* samples, size_t n, bdh_ecdf** out) {
  if (out == nullptr) return fail(BDH_ERR_INVALID, "out pointer is null");
  if (samples == nullptr && n > 0)
    return fail(BDH_ERR_INVALID, "samples pointer is null");
  return guarded([&] {
    *out = new bdh_ecdf{bdh::EmpiricalCdf(std::vector<double>(samples, samples + n))};
  });
}

void bdh_ecdf_free(bdh_ecdf* ecdf) { delete ecdf; }

bdh_status bdh_ecdf_eval(const bdh_ecdf* ecdf, double t, double* out) {
  if (ecdf == nullptr || out == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] { *out = ecdf->impl(t); });
}

bdh_status bdh_ks_two_sample(const double* a, size_t na, const double* b,
                             size_t nb, double* d_stat, double* p_value,
                             double* n_effective) {
  if (a == nullptr || b == nullptr || d_stat == nullptr || p_value == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto res = bdh::ks_two_sample(std::span<const double>(a, na),
                                        std::span<const double>(b, nb));
    *d_stat = res.d_stat;
    *p_value = res.p_value;
    if (n_effective != nullptr) *n_effective = res.n_effective;
  });
}

bdh_status bdh_ks_one_sample(const double* a, size_t n, bdh_cdf_fn cdf,
                             void* ctx, double* d_stat, double* p_value) {
  if (a == nullptr || cdf == nullptr || d_stat == nullptr || p_value == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto res = bdh::ks_one_sample(
        std::span<const double>(a, n),
        [cdf, ctx](double t) { return cdf(t, ctx); });
    *d_stat = res.d_stat;
    *p_value = res.p_value;
  });
}

bdh_status bdh_fit_tail_slope(const double* samples, size_t n, double lo,
                              double hi, uint32_t n_grid, double* slope,
                              double* intercept, uint32_t* n_points) {
  if (samples == nullptr || slope == nullptr || intercept == nullptr)
    return fail(BDH_ERR_INVALID, "null argument");
  return guarded([&] {
    const bdh::EmpiricalCdf cdf(std::vector<double>(samples, samples + n));
    const auto fit = bdh::fit_tail_slope(cdf, lo, hi, n_grid);
    *slope = fit.slope;
    *intercept = fit.intercept;
    if (n_points != nullptr) *n_points = static_cast<uint32_t>(fit.n_points);
  });
}

} /* extern "C" */
