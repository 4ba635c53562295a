#include "pcopt/line_search.hpp"

#include <cmath>
#include <cstdlib>

#include "pcopt/errors.hpp"

namespace pcopt {

namespace {

constexpr double kStepCap = 1152921504606846976.0;  // 2^60

}  // namespace

LineSearchResult line_search(ComparisonOracle& oracle, const Point& x,
                             const Point& d, double tol, double delta,
                             OracleStream* stream, LineSearchTrace* trace) {
  const int n = oracle.dimension();
  if (static_cast<int>(x.size()) != n || static_cast<int>(d.size()) != n) {
    throw ArgumentError("line_search: dimension mismatch");
  }
  if (!(tol > 0.0)) throw ArgumentError("line_search: tol must be > 0");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ArgumentError("line_search: delta must lie in (0, 1]");
  }
  bool nonzero = false;
  for (double v : d) nonzero |= (v != 0.0);
  if (!nonzero) throw ArgumentError("line_search: direction is zero");

  // Without a caller-supplied stream, noise comes from the oracle's shared
  // default stream, so independent searches stay independent.
  const bool repeat = delta < 1.0 && !oracle.deterministic();
  std::uint64_t queries = 0;

  auto sgn = [&](std::span<const double> a, std::span<const double> b) -> int {
    if (repeat) {
      const RobustCompareResult r =
          stream ? oracle.robust_compare(a, b, delta, *stream)
                 : oracle.robust_compare_counted(a, b, delta);
      queries += r.tosses;
      return to_int(r.sign);
    }
    ++queries;
    return to_int(stream ? oracle.compare(a, b, *stream) : oracle.compare(a, b));
  };

  Point buf_a(x.size()), buf_b(x.size());
  auto probe = [&](Point& buf, double alpha) -> std::span<const double> {
    for (int i = 0; i < n; ++i) buf[i] = x[i] + alpha * d[i];
    return buf;
  };

  double alpha = 0.0, hi = 1.0, lo = -1.0;

  // Step 1: orient the bracket from the two unit probes. If both increase
  // the minimum is interior to [-1, 1] and nothing changes.
  const int o_plus = sgn(x, probe(buf_a, hi));
  const int o_minus = sgn(x, probe(buf_a, lo));
  if (o_plus > 0 && o_minus < 0) {
    hi = 0.0;
  } else if (o_plus < 0 && o_minus > 0) {
    lo = 0.0;
  }

  // Step 2: double an endpoint while the function there is still below
  // g(0). When both unit probes decreased (possible only under noise) only
  // the + side expands; the - endpoint stays at -1.
  while (sgn(x, probe(buf_a, hi)) < 0) {
    hi *= 2.0;
    if (std::abs(hi) > kStepCap) {
      throw UnboundedDescentError("line_search: doubling exceeded 2^60");
    }
  }
  if (!(o_plus < 0 && o_minus < 0)) {
    while (sgn(x, probe(buf_a, lo)) < 0) {
      lo *= 2.0;
      if (std::abs(lo) > kStepCap) {
        throw UnboundedDescentError("line_search: doubling exceeded 2^60");
      }
    }
  }

  // Step 3: bisect. The incumbent moves only on a strict comparison win, so
  // g(alpha) never exceeds g(0).
  while (hi - lo > tol) {
    const double mid_hi = 0.5 * (alpha + hi);
    if (sgn(probe(buf_a, alpha), probe(buf_b, mid_hi)) < 0) {
      lo = alpha;
      alpha = mid_hi;
    } else {
      const double mid_lo = 0.5 * (alpha + lo);
      if (sgn(probe(buf_a, alpha), probe(buf_b, mid_lo)) < 0) {
        hi = alpha;
        alpha = mid_lo;
      } else {
        hi = mid_hi;
        lo = mid_lo;
      }
    }
    if (trace) trace->steps.push_back({lo, hi, alpha});
  }

  return {alpha, lo, hi, queries};
}

}  // namespace pcopt
