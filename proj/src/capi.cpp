#include "pcopt/pcopt.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "pcopt/bench.hpp"
#include "pcopt/blockcd.hpp"
#include "pcopt/errors.hpp"
#include "pcopt/line_search.hpp"
#include "pcopt/nelder_mead.hpp"
#include "pcopt/objective.hpp"
#include "pcopt/oracle.hpp"
#include "pcopt/theory.hpp"

struct pcopt_objective_s {
  pcopt::Objective impl;
};

struct pcopt_oracle_s {
  // Owns a copy of the objective handle's payload so the oracle stays valid
  // independently of the objective handle's lifetime.
  std::unique_ptr<pcopt::Objective> objective;
  std::unique_ptr<pcopt::ComparisonOracle> impl;
};

struct pcopt_trajectory_s {
  pcopt::Trajectory impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

pcopt_status classify(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const pcopt::ArgumentError& e) {
    set_error(e.what());
    return PCOPT_ERROR_ARGUMENT;
  } catch (const pcopt::EvaluationError& e) {
    set_error(e.what());
    return PCOPT_ERROR_EVALUATION;
  } catch (const pcopt::UnboundedDescentError& e) {
    set_error(e.what());
    return PCOPT_ERROR_UNBOUNDED_DESCENT;
  } catch (const pcopt::InconclusiveError& e) {
    set_error(e.what());
    return PCOPT_ERROR_INCONCLUSIVE;
  } catch (const pcopt::BudgetExhaustedError& e) {
    set_error(e.what());
    return PCOPT_ERROR_BUDGET_EXHAUSTED;
  } catch (const pcopt::ConfigError& e) {
    set_error(e.what());
    return PCOPT_ERROR_CONFIG;
  } catch (const pcopt::IoError& e) {
    set_error(e.what());
    return PCOPT_ERROR_IO;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return PCOPT_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PCOPT_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return PCOPT_ERROR_INTERNAL;
  }
}

template <typename Fn>
pcopt_status guarded(Fn&& fn) {
  try {
    fn();
    return PCOPT_OK;
  } catch (...) {
    return classify(std::current_exception());
  }
}

pcopt_status argument_error(const char* message) {
  set_error(message);
  return PCOPT_ERROR_ARGUMENT;
}

void copy_string(const std::string& s, char* out, size_t cap) {
  if (!out || cap == 0) return;
  const size_t n = std::min(cap - 1, s.size());
  std::memcpy(out, s.data(), n);
  out[n] = '\0';
}

}  // namespace

extern "C" {

const char* pcopt_last_error(void) { return g_last_error.c_str(); }

pcopt_status pcopt_objective_quadratic(int n, uint64_t seed,
                                       pcopt_objective** out) {
  if (!out) return argument_error("pcopt_objective_quadratic: out is NULL");
  return guarded([&] {
    auto handle = std::make_unique<pcopt_objective_s>();
    handle->impl = pcopt::make_quadratic(n, seed);
    *out = handle.release();
  });
}

pcopt_status pcopt_objective_rosenbrock(int n, pcopt_objective** out) {
  if (!out) return argument_error("pcopt_objective_rosenbrock: out is NULL");
  return guarded([&] {
    auto handle = std::make_unique<pcopt_objective_s>();
    handle->impl = pcopt::make_rosenbrock(n);
    *out = handle.release();
  });
}

pcopt_status pcopt_objective_evaluate(const pcopt_objective* objective,
                                      const double* x, int n, double* out) {
  if (!objective || !x || !out) {
    return argument_error("pcopt_objective_evaluate: NULL argument");
  }
  return guarded([&] {
    *out = pcopt::evaluate(objective->impl,
                           std::span<const double>(x, static_cast<size_t>(n)));
  });
}

int pcopt_objective_dimension(const pcopt_objective* objective) {
  return objective ? objective->impl.dimension : 0;
}

pcopt_status pcopt_objective_optimum_value(const pcopt_objective* objective,
                                           double* out) {
  if (!objective || !out) {
    return argument_error("pcopt_objective_optimum_value: NULL argument");
  }
  if (!objective->impl.optimum_value) {
    return argument_error("objective has no known optimum value");
  }
  *out = *objective->impl.optimum_value;
  return PCOPT_OK;
}

pcopt_status pcopt_objective_convexity(const pcopt_objective* objective,
                                       double* sigma_out, double* l_out) {
  if (!objective || !sigma_out || !l_out) {
    return argument_error("pcopt_objective_convexity: NULL argument");
  }
  if (!objective->impl.convexity) {
    return argument_error("objective has no convexity constants");
  }
  *sigma_out = objective->impl.convexity->sigma;
  *l_out = objective->impl.convexity->l;
  return PCOPT_OK;
}

void pcopt_objective_free(pcopt_objective* objective) { delete objective; }

pcopt_status pcopt_oracle_deterministic(const pcopt_objective* objective,
                                        pcopt_oracle** out) {
  if (!objective || !out) {
    return argument_error("pcopt_oracle_deterministic: NULL argument");
  }
  return guarded([&] {
    auto handle = std::make_unique<pcopt_oracle_s>();
    handle->objective = std::make_unique<pcopt::Objective>(objective->impl);
    handle->impl = std::make_unique<pcopt::ComparisonOracle>(*handle->objective);
    *out = handle.release();
  });
}

pcopt_status pcopt_oracle_stochastic(const pcopt_objective* objective,
                                     double kappa, double mu, double delta0,
                                     uint64_t seed, pcopt_oracle** out) {
  if (!objective || !out) {
    return argument_error("pcopt_oracle_stochastic: NULL argument");
  }
  return guarded([&] {
    auto handle = std::make_unique<pcopt_oracle_s>();
    handle->objective = std::make_unique<pcopt::Objective>(objective->impl);
    handle->impl = std::make_unique<pcopt::ComparisonOracle>(
        *handle->objective, pcopt::StochasticParams{kappa, mu, delta0}, seed);
    *out = handle.release();
  });
}

pcopt_status pcopt_oracle_set_budget(pcopt_oracle* oracle, uint64_t budget) {
  if (!oracle) return argument_error("pcopt_oracle_set_budget: NULL oracle");
  oracle->impl->set_query_budget(
      budget == 0 ? std::nullopt : std::optional<uint64_t>(budget));
  return PCOPT_OK;
}

pcopt_status pcopt_oracle_compare(pcopt_oracle* oracle, const double* x,
                                  const double* y, int n, int* sign_out) {
  if (!oracle || !x || !y || !sign_out) {
    return argument_error("pcopt_oracle_compare: NULL argument");
  }
  return guarded([&] {
    *sign_out = pcopt::to_int(oracle->impl->compare(
        std::span<const double>(x, static_cast<size_t>(n)),
        std::span<const double>(y, static_cast<size_t>(n))));
  });
}

pcopt_status pcopt_oracle_robust_compare(pcopt_oracle* oracle, const double* x,
                                         const double* y, int n, double delta,
                                         int* sign_out) {
  if (!oracle || !x || !y || !sign_out) {
    return argument_error("pcopt_oracle_robust_compare: NULL argument");
  }
  return guarded([&] {
    *sign_out = pcopt::to_int(oracle->impl->robust_compare(
        std::span<const double>(x, static_cast<size_t>(n)),
        std::span<const double>(y, static_cast<size_t>(n)), delta));
  });
}

uint64_t pcopt_oracle_query_count(const pcopt_oracle* oracle) {
  return oracle ? oracle->impl->ledger_count() : 0;
}

void pcopt_oracle_free(pcopt_oracle* oracle) { delete oracle; }

pcopt_status pcopt_line_search(pcopt_oracle* oracle, const double* x,
                               const double* d, int n, double tol,
                               double delta, pcopt_line_search_result* out) {
  if (!oracle || !x || !d || !out) {
    return argument_error("pcopt_line_search: NULL argument");
  }
  return guarded([&] {
    pcopt::Point px(x, x + n), pd(d, d + n);
    const pcopt::LineSearchResult r =
        pcopt::line_search(*oracle->impl, px, pd, tol, delta);
    *out = {r.alpha, r.bracket_lo, r.bracket_hi, r.queries_used};
  });
}

pcopt_status pcopt_blockcd_run(pcopt_oracle* oracle,
                               const pcopt_objective* metrics,
                               const pcopt_blockcd_config* config,
                               const double* x0, int n,
                               pcopt_trajectory** out) {
  if (!oracle || !metrics || !config || !x0 || !out) {
    return argument_error("pcopt_blockcd_run: NULL argument");
  }
  return guarded([&] {
    pcopt::BlockCDConfig bc;
    bc.m = config->m;
    bc.eta = config->eta;
    bc.delta = config->delta;
    bc.workers = config->workers;
    bc.master_seed = config->master_seed;
    if (config->max_iterations) bc.max_iterations = config->max_iterations;
    if (config->max_queries) bc.max_queries = config->max_queries;
    if (config->has_target_gap) bc.target_gap = config->target_gap;
    auto handle = std::make_unique<pcopt_trajectory_s>();
    handle->impl = pcopt::blockcd_run(*oracle->impl, metrics->impl, bc,
                                      pcopt::Point(x0, x0 + n));
    *out = handle.release();
  });
}

pcopt_status pcopt_nelder_mead_run(pcopt_oracle* oracle,
                                   const pcopt_objective* metrics,
                                   const pcopt_nelder_mead_config* config,
                                   const double* x0, int n,
                                   pcopt_trajectory** out) {
  if (!oracle || !metrics || !config || !x0 || !out) {
    return argument_error("pcopt_nelder_mead_run: NULL argument");
  }
  return guarded([&] {
    pcopt::NelderMeadConfig nc;
    nc.master_seed = config->master_seed;
    if (config->max_iterations) nc.max_iterations = config->max_iterations;
    if (config->max_queries) nc.max_queries = config->max_queries;
    if (config->has_target_gap) nc.target_gap = config->target_gap;
    if (config->initial_step > 0.0) nc.initial_step = config->initial_step;
    auto handle = std::make_unique<pcopt_trajectory_s>();
    handle->impl = pcopt::nelder_mead_run(*oracle->impl, metrics->impl, nc,
                                          pcopt::Point(x0, x0 + n));
    *out = handle.release();
  });
}

size_t pcopt_trajectory_size(const pcopt_trajectory* trajectory) {
  return trajectory ? trajectory->impl.records.size() : 0;
}

pcopt_status pcopt_trajectory_record(const pcopt_trajectory* trajectory,
                                     size_t index,
                                     pcopt_iteration_record* out) {
  if (!trajectory || !out) {
    return argument_error("pcopt_trajectory_record: NULL argument");
  }
  if (index >= trajectory->impl.records.size()) {
    return argument_error("pcopt_trajectory_record: index out of range");
  }
  const pcopt::IterationRecord& r = trajectory->impl.records[index];
  *out = {r.iteration, r.cumulative_queries, r.elapsed_seconds, r.f_value,
          r.step_norm};
  return PCOPT_OK;
}

pcopt_status pcopt_trajectory_final_point(const pcopt_trajectory* trajectory,
                                          double* out, int n) {
  if (!trajectory || !out) {
    return argument_error("pcopt_trajectory_final_point: NULL argument");
  }
  if (n != static_cast<int>(trajectory->impl.final_point.size())) {
    return argument_error("pcopt_trajectory_final_point: wrong dimension");
  }
  std::memcpy(out, trajectory->impl.final_point.data(),
              sizeof(double) * static_cast<size_t>(n));
  return PCOPT_OK;
}

void pcopt_trajectory_free(pcopt_trajectory* trajectory) { delete trajectory; }

pcopt_status pcopt_bounds_compute(double sigma, double l, int n, int m,
                                  double eta, double delta0_gap,
                                  pcopt_bounds* out) {
  if (!out) return argument_error("pcopt_bounds_compute: out is NULL");
  return guarded([&] {
    const pcopt::theory::TheoreticalBounds b =
        pcopt::theory::compute_bounds(sigma, l, n, m, eta, delta0_gap);
    *out = {b.gamma, b.epsilon, b.t0, b.k0, b.deterministic_budget};
  });
}

pcopt_status pcopt_bounds_format(double sigma, double l, int n, int m,
                                 double eta, double delta0_gap, char* buffer,
                                 size_t buffer_size) {
  if (!buffer || buffer_size == 0) {
    return argument_error("pcopt_bounds_format: no buffer");
  }
  return guarded([&] {
    copy_string(pcopt::bench::format_bounds(pcopt::theory::compute_bounds(
                    sigma, l, n, m, eta, delta0_gap)),
                buffer, buffer_size);
  });
}

pcopt_status pcopt_repeated_query_bound(double p, double delta, double* out) {
  if (!out) return argument_error("pcopt_repeated_query_bound: out is NULL");
  return guarded([&] { *out = pcopt::theory::repeated_query_bound(p, delta); });
}

pcopt_status pcopt_run_experiment(const char* config_path,
                                  const uint64_t* seed_override,
                                  const char* output_override,
                                  char* raw_path_out, size_t raw_path_size,
                                  char* summary_path_out,
                                  size_t summary_path_size) {
  if (!config_path) {
    return argument_error("pcopt_run_experiment: config_path is NULL");
  }
  return guarded([&] {
    std::optional<uint64_t> seed;
    if (seed_override) seed = *seed_override;
    std::optional<std::string> output;
    if (output_override) output = std::string(output_override);
    const pcopt::bench::ExperimentConfig cfg =
        pcopt::bench::load_config(config_path, seed, output);
    const pcopt::bench::ExperimentOutput result =
        pcopt::bench::run_experiment(cfg);
    copy_string(result.raw_path, raw_path_out, raw_path_size);
    copy_string(result.summary_path, summary_path_out, summary_path_size);
  });
}

}  // extern "C"
