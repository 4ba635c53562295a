#ifndef PCOPT_ORACLE_HPP
#define PCOPT_ORACLE_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>

#include "pcopt/objective.hpp"

namespace pcopt {

enum class Sign : int { minus = -1, plus = +1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

/// Parameters of the stochastic pairwise-comparison oracle: the probability
/// of answering with the correct sign is
///   p = 1/2 + min{delta0, mu * |f(y) - f(x)|^(kappa - 1)},
/// taken with equality. Requires kappa >= 1, mu > 0, delta0 in (0, 1/2],
/// and mu <= delta0 when kappa == 1.
struct StochasticParams {
  double kappa;
  double mu;
  double delta0;
};

/// An independent noise stream. The outcome of the k-th query on stream s is
/// a pure function of (oracle seed, s.id, k), so concurrent tasks that own
/// distinct streams replay identically regardless of scheduling.
struct OracleStream {
  std::uint64_t id = 0;
  std::uint64_t counter = 0;
};

struct RobustCompareResult {
  Sign sign;
  std::uint64_t tosses;
};

/// Pairwise-comparison oracle over an objective: compare(x, y) answers
/// sign{f(y) - f(x)}, exactly in deterministic mode and correctly with
/// probability p in stochastic mode. Every invocation, including each
/// repeated toss inside robust_compare, increments the query ledger by one.
///
/// Ties: when f(y) == f(x) exactly the deterministic oracle returns +1
/// ("y is not an improvement"), and the stochastic oracle treats +1 as the
/// correct sign.
class ComparisonOracle {
 public:
  /// Deterministic oracle; never consumes randomness.
  explicit ComparisonOracle(const Objective& objective);

  /// Stochastic oracle with a counter-based seeded noise stream.
  ComparisonOracle(const Objective& objective, StochasticParams params,
                   std::uint64_t rng_seed);

  bool deterministic() const { return !params_.has_value(); }
  int dimension() const { return objective_->dimension; }
  const Objective& objective() const { return *objective_; }

  /// Optional hard cap on the ledger; a query past the cap throws
  /// BudgetExhaustedError without being executed or counted.
  void set_query_budget(std::optional<std::uint64_t> budget) { budget_ = budget; }
  std::optional<std::uint64_t> query_budget() const { return budget_; }

  /// One oracle query on the shared default stream (noise indexed by the
  /// atomically reserved ledger position).
  Sign compare(std::span<const double> x, std::span<const double> y);

  /// One oracle query drawing noise from the caller's stream.
  Sign compare(std::span<const double> x, std::span<const double> y,
               OracleStream& stream);

  /// Repeated-querying subroutine: amplifies the noisy comparison to
  /// confidence 1 - delta by adaptive coin tossing. Deterministic mode
  /// short-circuits to a single compare. Requires delta in (0, 1).
  Sign robust_compare(std::span<const double> x, std::span<const double> y,
                      double delta);
  RobustCompareResult robust_compare(std::span<const double> x,
                                     std::span<const double> y, double delta,
                                     OracleStream& stream);
  /// Same, on the shared default stream, reporting the toss count.
  RobustCompareResult robust_compare_counted(std::span<const double> x,
                                             std::span<const double> y,
                                             double delta);

  /// Total number of oracle invocations so far.
  std::uint64_t ledger_count() const {
    return ledger_.load(std::memory_order_relaxed);
  }

 private:
  Sign compare_keyed(std::span<const double> x, std::span<const double> y,
                     std::uint64_t stream_id, std::uint64_t noise_index);
  std::uint64_t reserve_query_slot();

  const Objective* objective_;
  std::optional<StochasticParams> params_;
  std::uint64_t seed_ = 0;
  std::optional<std::uint64_t> budget_;
  std::atomic<std::uint64_t> ledger_{0};
};

/// Core of the repeated-querying subroutine, generic over the coin so tests
/// can drive it with synthetic biases. `toss` returns +1/-1; rounds double
/// the toss count until the running confidence interval for the heads
/// frequency excludes 1/2. Throws InconclusiveError past max_rounds.
template <typename Toss>
RobustCompareResult repeated_query(Toss&& toss, double delta,
                                   int max_rounds = 60);

}  // namespace pcopt

#include "pcopt/repeated_query_impl.hpp"

#endif  // PCOPT_ORACLE_HPP
