#ifndef PCOPT_REPEATED_QUERY_IMPL_HPP
#define PCOPT_REPEATED_QUERY_IMPL_HPP

#include <cmath>
#include <cstdint>

#include "pcopt/errors.hpp"

namespace pcopt {

// Round structure: one initial toss, then rounds k = 0, 1, ... that first
// test the interval and then toss n_k more coins with n_{k+1} = 2 n_k, so the
// round-k test sees exactly 2^k tosses. The confidence radius is the
// Hoeffding bound sqrt(log(2/delta) / (2 * tosses)); see the note in
// robust_compare's implementation for why this replaces the printed radius.
template <typename Toss>
RobustCompareResult repeated_query(Toss&& toss, double delta, int max_rounds) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError("repeated_query: delta must lie in (0, 1)");
  }
  const double log_term = std::log(2.0 / delta);

  std::uint64_t heads = 0;
  std::uint64_t total = 0;
  auto one_toss = [&] {
    if (to_int(toss()) > 0) ++heads;
    ++total;
  };

  one_toss();
  std::uint64_t n_k = 1;
  for (int k = 0; k < max_rounds; ++k) {
    const double p_k = static_cast<double>(heads) / static_cast<double>(total);
    const double r_k = std::sqrt(log_term / (2.0 * static_cast<double>(total)));
    if (p_k - r_k > 0.5 || p_k + r_k < 0.5) {
      return {p_k + r_k <= 0.5 ? Sign::minus : Sign::plus, total};
    }
    for (std::uint64_t i = 0; i < n_k; ++i) one_toss();
    n_k *= 2;
  }
  throw InconclusiveError(
      "repeated_query: round cap exceeded; |f(y) - f(x)| is below the "
      "oracle's resolution at this confidence");
}

}  // namespace pcopt

#endif  // PCOPT_REPEATED_QUERY_IMPL_HPP
