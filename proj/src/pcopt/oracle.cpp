#include "pcopt/oracle.hpp"

#include <cmath>
#include <string>

#include "pcopt/errors.hpp"
#include "pcopt/rng.hpp"

namespace pcopt {

namespace {

void validate_params(const StochasticParams& p) {
  if (!(p.kappa >= 1.0)) {
    throw ArgumentError("StochasticParams: kappa must be >= 1");
  }
  if (!(p.mu > 0.0)) {
    throw ArgumentError("StochasticParams: mu must be > 0");
  }
  if (!(p.delta0 > 0.0 && p.delta0 <= 0.5)) {
    throw ArgumentError("StochasticParams: delta0 must lie in (0, 1/2]");
  }
  if (p.kappa == 1.0 && !(p.mu <= p.delta0)) {
    throw ArgumentError("StochasticParams: kappa == 1 requires mu <= delta0");
  }
}

}  // namespace

ComparisonOracle::ComparisonOracle(const Objective& objective)
    : objective_(&objective) {}

ComparisonOracle::ComparisonOracle(const Objective& objective,
                                   StochasticParams params,
                                   std::uint64_t rng_seed)
    : objective_(&objective), params_(params), seed_(rng_seed) {
  validate_params(params);
}

std::uint64_t ComparisonOracle::reserve_query_slot() {
  const std::uint64_t idx = ledger_.fetch_add(1, std::memory_order_relaxed);
  if (budget_ && idx >= *budget_) {
    ledger_.fetch_sub(1, std::memory_order_relaxed);
    throw BudgetExhaustedError("oracle: query budget of " +
                               std::to_string(*budget_) + " exhausted");
  }
  return idx;
}

Sign ComparisonOracle::compare_keyed(std::span<const double> x,
                                     std::span<const double> y,
                                     std::uint64_t stream_id,
                                     std::uint64_t noise_index) {
  const double gap = evaluate(*objective_, y) - evaluate(*objective_, x);
  const int true_sign = gap >= 0.0 ? +1 : -1;  // tie rule: sign{0} = +1
  if (!params_) return static_cast<Sign>(true_sign);

  // kappa == 1 uses mu exactly so that the outcome distribution is invariant
  // under monotone transformations of f, ties included.
  const double margin =
      params_->kappa == 1.0
          ? params_->mu
          : params_->mu * std::pow(std::abs(gap), params_->kappa - 1.0);
  const double p = 0.5 + std::min(params_->delta0, margin);
  const double u =
      u01_from_bits(mix_hash(hash_combine(hash_combine(seed_, stream_id),
                                          noise_index)));
  return static_cast<Sign>(u < p ? true_sign : -true_sign);
}

Sign ComparisonOracle::compare(std::span<const double> x,
                               std::span<const double> y) {
  if (static_cast<int>(x.size()) != objective_->dimension ||
      static_cast<int>(y.size()) != objective_->dimension) {
    throw ArgumentError("compare: point dimension mismatch");
  }
  const std::uint64_t idx = reserve_query_slot();
  return compare_keyed(x, y, 0, idx);
}

Sign ComparisonOracle::compare(std::span<const double> x,
                               std::span<const double> y,
                               OracleStream& stream) {
  if (static_cast<int>(x.size()) != objective_->dimension ||
      static_cast<int>(y.size()) != objective_->dimension) {
    throw ArgumentError("compare: point dimension mismatch");
  }
  reserve_query_slot();
  return compare_keyed(x, y, stream.id, stream.counter++);
}

// Note on the confidence radius: the printed subroutine uses
// r_k = sqrt((k+1) log(2/delta) / 2^k), but that radius needs roughly an
// order of magnitude more tosses than the query bound
// (log(2/delta) / (4 |1/2-p|^2)) log2(...) it is paired with (about 1500
// mean tosses versus a bound of 104 at p = 0.7, delta = 0.05). The plain
// Hoeffding radius sqrt(log(2/delta) / (2 * tosses)) meets both the bound
// and the 1 - delta accuracy guarantee, so it is used here.
RobustCompareResult ComparisonOracle::robust_compare(std::span<const double> x,
                                                     std::span<const double> y,
                                                     double delta,
                                                     OracleStream& stream) {
  if (deterministic()) {
    return {compare(x, y, stream), 1};
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError("robust_compare: delta must lie in (0, 1)");
  }
  return repeated_query([&] { return compare(x, y, stream); }, delta);
}

RobustCompareResult ComparisonOracle::robust_compare_counted(
    std::span<const double> x, std::span<const double> y, double delta) {
  if (deterministic()) {
    return {compare(x, y), 1};
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError("robust_compare: delta must lie in (0, 1)");
  }
  return repeated_query([&] { return compare(x, y); }, delta);
}

Sign ComparisonOracle::robust_compare(std::span<const double> x,
                                      std::span<const double> y, double delta) {
  return robust_compare_counted(x, y, delta).sign;
}

}  // namespace pcopt
