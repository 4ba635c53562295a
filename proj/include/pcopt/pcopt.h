/* pcopt: derivative-free optimization through a pairwise-comparison oracle.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed here; functions return PCOPT_OK or an error code, and
 * pcopt_last_error() describes the most recent failure on the calling
 * thread.
 */

#ifndef PCOPT_PCOPT_H
#define PCOPT_PCOPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum pcopt_status {
  PCOPT_OK = 0,
  PCOPT_ERROR_ARGUMENT = 1,
  PCOPT_ERROR_EVALUATION = 2,
  PCOPT_ERROR_UNBOUNDED_DESCENT = 3,
  PCOPT_ERROR_INCONCLUSIVE = 4,
  PCOPT_ERROR_BUDGET_EXHAUSTED = 5,
  PCOPT_ERROR_CONFIG = 6,
  PCOPT_ERROR_IO = 7,
  PCOPT_ERROR_INTERNAL = 8
} pcopt_status;

typedef struct pcopt_objective_s pcopt_objective;
typedef struct pcopt_oracle_s pcopt_oracle;
typedef struct pcopt_trajectory_s pcopt_trajectory;

/* Description of the last error raised on this thread; empty string if none. */
const char* pcopt_last_error(void);

/* ---- objectives ------------------------------------------------------- */

/* f(x) = x^T A x with A = B^T B / n + I, B seeded standard normal. */
pcopt_status pcopt_objective_quadratic(int n, uint64_t seed,
                                       pcopt_objective** out);

/* f(x) = sum_i (1 - x_i)^2 + 100 (x_{i+1} - x_i^2)^2, n >= 2. */
pcopt_status pcopt_objective_rosenbrock(int n, pcopt_objective** out);

pcopt_status pcopt_objective_evaluate(const pcopt_objective* objective,
                                      const double* x, int n, double* out);

int pcopt_objective_dimension(const pcopt_objective* objective);

/* Known minimum value; returns PCOPT_ERROR_ARGUMENT when unknown. */
pcopt_status pcopt_objective_optimum_value(const pcopt_objective* objective,
                                           double* out);

/* Strong-convexity/smoothness pair (sigma, L); error when not available. */
pcopt_status pcopt_objective_convexity(const pcopt_objective* objective,
                                       double* sigma_out, double* l_out);

void pcopt_objective_free(pcopt_objective* objective);

/* ---- oracles ---------------------------------------------------------- */

pcopt_status pcopt_oracle_deterministic(const pcopt_objective* objective,
                                        pcopt_oracle** out);

/* Correct-sign probability 1/2 + min{delta0, mu |f(y)-f(x)|^(kappa-1)}. */
pcopt_status pcopt_oracle_stochastic(const pcopt_objective* objective,
                                     double kappa, double mu, double delta0,
                                     uint64_t seed, pcopt_oracle** out);

/* 0 clears the budget; queries past the budget fail with
 * PCOPT_ERROR_BUDGET_EXHAUSTED. */
pcopt_status pcopt_oracle_set_budget(pcopt_oracle* oracle, uint64_t budget);

/* Writes sign{f(y) - f(x)} (+1 or -1) to *sign_out. */
pcopt_status pcopt_oracle_compare(pcopt_oracle* oracle, const double* x,
                                  const double* y, int n, int* sign_out);

/* Repeated-querying subroutine at confidence 1 - delta. */
pcopt_status pcopt_oracle_robust_compare(pcopt_oracle* oracle, const double* x,
                                         const double* y, int n, double delta,
                                         int* sign_out);

uint64_t pcopt_oracle_query_count(const pcopt_oracle* oracle);

void pcopt_oracle_free(pcopt_oracle* oracle);

/* ---- line search ------------------------------------------------------ */

typedef struct pcopt_line_search_result {
  double alpha;
  double bracket_lo;
  double bracket_hi;
  uint64_t queries_used;
} pcopt_line_search_result;

/* Minimizes f(x + alpha d) by oracle comparisons; bracket width <= tol on
 * return. delta in (0, 1] is the per-comparison confidence (1.0 = raw). */
pcopt_status pcopt_line_search(pcopt_oracle* oracle, const double* x,
                               const double* d, int n, double tol,
                               double delta, pcopt_line_search_result* out);

/* ---- optimizers -------------------------------------------------------- */

typedef struct pcopt_blockcd_config {
  int m;
  double eta;
  double delta;
  int workers;
  uint64_t master_seed;
  uint64_t max_iterations; /* 0 = unset */
  uint64_t max_queries;    /* 0 = unset */
  double target_gap;       /* used when has_target_gap != 0 */
  int has_target_gap;
} pcopt_blockcd_config;

typedef struct pcopt_nelder_mead_config {
  uint64_t master_seed;
  uint64_t max_iterations; /* 0 = unset */
  uint64_t max_queries;    /* 0 = unset */
  double target_gap;
  int has_target_gap;
  double initial_step;
} pcopt_nelder_mead_config;

typedef struct pcopt_iteration_record {
  uint64_t iteration;
  uint64_t cumulative_queries;
  double elapsed_seconds;
  double f_value;
  double step_norm;
} pcopt_iteration_record;

/* Block coordinate descent through the oracle. metrics supplies recorded
 * f values only; it is never consulted by the algorithm. */
pcopt_status pcopt_blockcd_run(pcopt_oracle* oracle,
                               const pcopt_objective* metrics,
                               const pcopt_blockcd_config* config,
                               const double* x0, int n,
                               pcopt_trajectory** out);

pcopt_status pcopt_nelder_mead_run(pcopt_oracle* oracle,
                                   const pcopt_objective* metrics,
                                   const pcopt_nelder_mead_config* config,
                                   const double* x0, int n,
                                   pcopt_trajectory** out);

size_t pcopt_trajectory_size(const pcopt_trajectory* trajectory);

pcopt_status pcopt_trajectory_record(const pcopt_trajectory* trajectory,
                                     size_t index,
                                     pcopt_iteration_record* out);

pcopt_status pcopt_trajectory_final_point(const pcopt_trajectory* trajectory,
                                          double* out, int n);

void pcopt_trajectory_free(pcopt_trajectory* trajectory);

/* ---- theory ------------------------------------------------------------ */

typedef struct pcopt_bounds {
  double gamma;
  double epsilon;
  int64_t t0;
  double k0;
  double deterministic_budget;
} pcopt_bounds;

pcopt_status pcopt_bounds_compute(double sigma, double l, int n, int m,
                                  double eta, double delta0_gap,
                                  pcopt_bounds* out);

/* Renders the bounds as the key=value lines printed by `pcopt bounds`. */
pcopt_status pcopt_bounds_format(double sigma, double l, int n, int m,
                                 double eta, double delta0_gap, char* buffer,
                                 size_t buffer_size);

pcopt_status pcopt_repeated_query_bound(double p, double delta, double* out);

/* ---- experiment harness ------------------------------------------------ */

/* Runs the experiment described by the JSON config file and writes
 * <output>.raw.csv and <output>.summary.csv. seed_override (nullable)
 * replaces both problem.seed and oracle.seed; output_override (nullable)
 * replaces output_path. The output file names are written to the supplied
 * buffers when non-NULL. */
pcopt_status pcopt_run_experiment(const char* config_path,
                                  const uint64_t* seed_override,
                                  const char* output_override,
                                  char* raw_path_out, size_t raw_path_size,
                                  char* summary_path_out,
                                  size_t summary_path_size);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* PCOPT_PCOPT_H */
