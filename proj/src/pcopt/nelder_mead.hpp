#ifndef PCOPT_NELDER_MEAD_HPP
#define PCOPT_NELDER_MEAD_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pcopt/blockcd.hpp"
#include "pcopt/oracle.hpp"

namespace pcopt {

struct NelderMeadConfig {
  std::optional<std::uint64_t> max_iterations;
  std::optional<std::uint64_t> max_queries;
  std::optional<double> target_gap;
  std::uint64_t master_seed = 0;  // unused by the method; kept for config parity
  double initial_step = 1.0;      // edge length of the initial axis simplex
};

/// Comparison-only Nelder-Mead with the standard coefficients (reflection 1,
/// expansion 2, contraction 0.5, shrink 0.5). Vertex ranking and every
/// accept/reject decision go through the oracle, and each comparison is
/// charged to the ledger. Trajectory records carry the best vertex's true
/// objective value per iteration; step_norm is 0 for this method.
Trajectory nelder_mead_run(ComparisonOracle& oracle,
                           const Objective& objective_for_metrics,
                           const NelderMeadConfig& config, const Point& x0);

namespace nm_detail {

/// Stable merge sort of vertex indices, ascending by oracle comparisons;
/// "a before b" iff the oracle reports f(a) <= f(b).
std::vector<std::size_t> oracle_rank(ComparisonOracle& oracle,
                                     const std::vector<Point>& vertices);

/// In-place shrink of all vertices toward vertices[0] by the factor 0.5.
void shrink_toward_best(std::vector<Point>& vertices);

}  // namespace nm_detail

}  // namespace pcopt

#endif  // PCOPT_NELDER_MEAD_HPP
