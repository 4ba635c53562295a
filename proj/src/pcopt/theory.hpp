#ifndef PCOPT_THEORY_HPP
#define PCOPT_THEORY_HPP

#include <cstdint>
#include <span>

namespace pcopt::theory {

/// Closed-form constants and bounds for BlockCD[n, m] on sigma-strongly
/// convex, L-strongly smooth objectives, plus checkers for the subset
/// expectation lemma behind the descent constant.

struct TheoreticalBounds {
  double sigma;
  double l;
  int n;
  int m;
  double eta;
  double delta0_gap;  // f(x0) - f(x*)
  double gamma;
  double epsilon;
  std::int64_t t0;
  double k0;
  double deterministic_budget;  // t0 * k0 * (m + 1)
};

/// gamma = (sigma/L)/53 * ((1 - sqrt(1 - sigma/L)) / (1 + sqrt(1 - sigma/L)))^2,
/// in (0, 1/53]. Requires 0 < sigma <= L.
double gamma(double sigma, double l);

/// epsilon = (8 n L^2 / sigma) (1 + n/(m gamma)) eta^2.
double epsilon_bound(int n, int m, double sigma, double l, double eta);

/// T0 = ceil((n/(m gamma)) log(delta0_gap (1 + n/(m gamma)) / epsilon)),
/// clamped to 1 when the logarithm's argument is <= 1.
std::int64_t t0(int n, int m, double gamma, double delta0_gap, double epsilon);

/// K0 = 2 log2(2^10 L delta0_gap / (sigma^2 eta^2)): sufficient queries for
/// one line search.
double k0(double l, double sigma, double eta, double delta0_gap);

/// Query bound of the repeated-querying subroutine for a coin with success
/// probability p > 1/2:
///   (log(2/delta) / (4 |1/2 - p|^2)) * log2(log(2/delta) / (4 |1/2 - p|^2)).
double repeated_query_bound(double p, double delta);

/// Expected-gap bounds after Q queries of the stochastic oracle:
///   kappa == 1: exp(-(c / log n) sqrt(Q / n))      (requires n >= 2)
///   kappa >  1: c (n^2 / m) (n / Q)^(1 / (2 kappa - 2))
/// The constant c is supplied by the caller.
double stochastic_rate_bound(int n, int m, double q, double kappa, double c);

struct LemmaZMoments {
  double value;          // E[Z^2 [Z - 1/2]_+^2 / (Z + 1/2)^2]
  double second_moment;  // E[Z^2], identically 1
};

/// Moments of Z = sqrt(n/m) ||grad||_I / ||grad|| over uniform size-m
/// subsets I, enumerated exactly. Requires C(n, m) <= 10^6 and a nonzero
/// gradient. The lemma asserts value >= 1/53 whenever E[Z^2] = 1.
LemmaZMoments lemma_z_exhaustive(std::span<const double> gradient, int m);

/// Monte-Carlo estimate of the same moments from `samples` uniform subsets.
LemmaZMoments lemma_z_monte_carlo(std::span<const double> gradient, int m,
                                  std::uint64_t samples, std::uint64_t seed);

/// Every descent and query-complexity constant for one configuration.
TheoreticalBounds compute_bounds(double sigma, double l, int n, int m,
                                 double eta, double delta0_gap);

}  // namespace pcopt::theory

#endif  // PCOPT_THEORY_HPP
