/* C API of the bdhsim shared library.
 *
 * All functions return a bdh_status code; results go through out
 * parameters. On failure, bdh_last_error() returns a thread-local message
 * describing what went wrong. Opaque handles must be released with the
 * matching *_free function. A bdh_stream must not be used by two threads
 * at once; batch entry points manage their own per-repeat streams and are
 * safe to call from any thread.
 */
#ifndef BDHSIM_H
#define BDHSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bdh_status {
  BDH_OK = 0,
  BDH_ERR_INVALID = 2,      /* invalid parameter / unsupported regime */
  BDH_ERR_INSUFFICIENT = 3, /* not enough data for the requested statistic */
  BDH_ERR_IO = 4,
  BDH_ERR_LIMIT = 5,        /* population or step budget exceeded */
  BDH_ERR_INTERNAL = 6
} bdh_status;

typedef enum bdh_outcome {
  BDH_OUTCOME_DIRECT = 0,
  BDH_OUTCOME_TAIL = 1,
  BDH_OUTCOME_CENSORED = 2
} bdh_outcome;

typedef struct bdh_sim_record {
  double h;           /* hitting time, state 2 -> 1 */
  double x;           /* initial exponential dwell at state 1 */
  double return_time; /* x + h */
  uint64_t steps;
  uint64_t final_state;
  int32_t outcome; /* bdh_outcome */
} bdh_sim_record;

typedef struct bdh_stream bdh_stream; /* counter-based random stream */
typedef struct bdh_ecdf bdh_ecdf;     /* empirical CDF over a sample */

const char* bdh_version(void);
/* Message for the most recent failure on this thread; empty if none. */
const char* bdh_last_error(void);

/* --- random streams and analytic samplers --- */

bdh_status bdh_stream_new(uint64_t seed, uint64_t stream_index,
                          bdh_stream** out);
void bdh_stream_free(bdh_stream* stream);
bdh_status bdh_stream_uniform(bdh_stream* stream, double* out);
bdh_status bdh_sample_exponential(bdh_stream* stream, double rate,
                                  double* out);
/* Power-law tail draw on (t_min, inf); requires alpha > 1. */
bdh_status bdh_sample_pareto_tail(bdh_stream* stream, double t_min,
                                  double alpha, double* out);

/* --- return-time simulation --- */

bdh_status bdh_simulate_hybrid(bdh_stream* stream, double p,
                               bdh_sim_record* out);
bdh_status bdh_simulate_direct(bdh_stream* stream, double lambda,
                               uint64_t step_cap, bdh_sim_record* out);

/* Batch runs: repeat i uses stream (seed, i); out must hold `repeats`
 * records. Output is identical for every thread count. threads = 0 selects
 * the hardware thread count. */
bdh_status bdh_run_hybrid(double p, uint64_t repeats, uint64_t seed,
                          unsigned threads, bdh_sim_record* out);
bdh_status bdh_run_direct(double lambda, uint64_t step_cap, uint64_t repeats,
                          uint64_t seed, unsigned threads,
                          bdh_sim_record* out);

/* --- truncated expected hitting times --- */

/* Fills h[j] for states j = 1..ceiling with the expected time to reach
 * state 1 in the chain truncated at `ceiling`; h must hold ceiling + 1
 * doubles (h[0] is unused and set to 0). */
bdh_status bdh_solve_truncated(uint64_t ceiling, double* h, size_t len);
/* Expected hitting time from state 2 under the given ceiling. */
bdh_status bdh_hitting_time_from_two(uint64_t ceiling, double* h2);

/* --- dominating-type persistence --- */

bdh_status bdh_estimate_persistence(double lambda, double delta,
                                    double horizon_t, uint64_t reps,
                                    uint64_t seed, unsigned threads,
                                    double* p_hat, double* std_err);

/* --- empirical statistics --- */

bdh_status bdh_ecdf_new(const double* samples, size_t n, bdh_ecdf** out);
void bdh_ecdf_free(bdh_ecdf* ecdf);
bdh_status bdh_ecdf_eval(const bdh_ecdf* ecdf, double t, double* out);

bdh_status bdh_ks_two_sample(const double* a, size_t na, const double* b,
                             size_t nb, double* d_stat, double* p_value,
                             double* n_effective);

typedef double (*bdh_cdf_fn)(double t, void* ctx);
bdh_status bdh_ks_one_sample(const double* a, size_t n, bdh_cdf_fn cdf,
                             void* ctx, double* d_stat, double* p_value);

bdh_status bdh_fit_tail_slope(const double* samples, size_t n, double lo,
                              double hi, uint32_t n_grid, double* slope,
                              double* intercept, uint32_t* n_points);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BDHSIM_H */
