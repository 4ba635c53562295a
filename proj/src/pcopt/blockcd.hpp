#ifndef PCOPT_BLOCKCD_HPP
#define PCOPT_BLOCKCD_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pcopt/line_search.hpp"
#include "pcopt/oracle.hpp"
#include "pcopt/rng.hpp"

namespace pcopt {

struct BlockCDConfig {
  int m = 1;           // coordinates sampled per iteration, 1 <= m <= n
  double eta = 0.01;   // line-search accuracy; direction searches use eta/2
  double delta = 1.0;  // per-comparison confidence; 1.0 = raw queries
  std::optional<std::uint64_t> max_iterations;
  std::optional<std::uint64_t> max_queries;
  std::optional<double> target_gap;  // metrics-only stop on f(x_t) - f*
  std::uint64_t master_seed = 0;
  int workers = 1;
};

/// One row of a run's trajectory. Record 0 describes the initial point;
/// record t (t >= 1) describes x_t, the iterate after t completed
/// iterations, with the queries spent to reach it.
struct IterationRecord {
  std::uint64_t iteration;
  std::uint64_t cumulative_queries;
  double elapsed_seconds;
  double f_value;    // true objective, metrics only
  double step_norm;  // the signed step beta_t along the unit direction
};

struct Trajectory {
  std::vector<IterationRecord> records;
  Point final_point;
};

/// Wall time spent in the direction-estimate phase, for parallel-efficiency
/// measurements.
struct BlockCDStats {
  double direction_seconds = 0.0;
};

/// m distinct indices in [0, n), uniform over all size-m subsets, sorted.
std::vector<int> sample_coordinates(int n, int m, SplitMix64& rng);

/// Steps D-1/D-2: one line search (accuracy eta/2) along each sampled
/// coordinate axis, assembled into a direction vector; if every component
/// comes back exactly zero, eta/2 is assigned to the smallest sampled index.
/// The searches are independent and run on up to `workers` tasks; results
/// are identical for any worker count because the noise stream of the search
/// along coordinate i derives from (stream_base, i), never from scheduling.
Point direction_estimate(ComparisonOracle& oracle, const Point& x,
                         const std::vector<int>& coords, double eta,
                         double delta, int workers,
                         std::uint64_t stream_base = 0);

/// Step S-1: line search (accuracy eta) along d / ||d|| from x; returns the
/// signed step beta.
double search_step(ComparisonOracle& oracle, const Point& x, const Point& d,
                   double eta, double delta, OracleStream* stream = nullptr);

/// BlockCD[n, m]: sample -> direction estimate -> search step -> update,
/// until a stopping criterion fires. Ledger budget exhaustion mid-iteration
/// is normal termination; the partial iteration is discarded.
/// objective_for_metrics supplies the recorded f values and the target_gap
/// test; the algorithm itself only ever sees the oracle.
Trajectory blockcd_run(ComparisonOracle& oracle,
                       const Objective& objective_for_metrics,
                       const BlockCDConfig& config, const Point& x0,
                       BlockCDStats* stats = nullptr);

}  // namespace pcopt

#endif  // PCOPT_BLOCKCD_HPP
