#ifndef PCOPT_LINE_SEARCH_HPP
#define PCOPT_LINE_SEARCH_HPP

#include <cstdint>
#include <vector>

#include "pcopt/oracle.hpp"

namespace pcopt {

struct LineSearchResult {
  double alpha;        // chosen step along d
  double bracket_lo;   // final bracket, bracket_lo <= alpha <= bracket_hi
  double bracket_hi;
  std::uint64_t queries_used;
};

/// Bisection states, recorded when a trace sink is supplied (property tests
/// assert bracket nesting on it).
struct LineSearchTrace {
  struct Step {
    double lo, hi, alpha;
  };
  std::vector<Step> steps;
};

/// One-dimensional minimization of g(alpha) = f(x + alpha d) using only
/// oracle comparisons: bracket orientation at alpha = +-1, exponential
/// doubling, then bisection until the bracket width is <= tol.
///
/// delta is the per-comparison confidence forwarded to robust_compare;
/// delta = 1.0 means raw single queries (the deterministic setting).
/// Under the deterministic oracle on a strictly quasiconvex restriction the
/// returned alpha satisfies |alpha - alpha*| <= tol and
/// f(x + alpha d) <= f(x).
LineSearchResult line_search(ComparisonOracle& oracle, const Point& x,
                             const Point& d, double tol, double delta,
                             OracleStream* stream = nullptr,
                             LineSearchTrace* trace = nullptr);

}  // namespace pcopt

#endif  // PCOPT_LINE_SEARCH_HPP
