#include "pcopt/theory.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pcopt/errors.hpp"
#include "pcopt/rng.hpp"

namespace pcopt::theory {

namespace {

void require_sigma_l(double sigma, double l) {
  if (!(sigma > 0.0) || !(l > 0.0) || sigma > l) {
    throw ArgumentError("theory: need 0 < sigma <= L");
  }
}

double binomial(int n, int m) {
  double c = 1.0;
  for (int i = 0; i < m; ++i) c = c * (n - i) / (i + 1);
  return c;
}

double lemma_term(double z_sq) {
  const double z = std::sqrt(z_sq);
  const double num = std::max(z - 0.5, 0.0);
  const double den = z + 0.5;
  return z_sq * (num * num) / (den * den);
}

}  // namespace

double gamma(double sigma, double l) {
  require_sigma_l(sigma, l);
  const double ratio = sigma / l;
  const double root = std::sqrt(1.0 - ratio);
  const double contraction = (1.0 - root) / (1.0 + root);
  return ratio / 53.0 * contraction * contraction;
}

double epsilon_bound(int n, int m, double sigma, double l, double eta) {
  require_sigma_l(sigma, l);
  if (n < 1 || m < 1 || m > n) throw ArgumentError("epsilon_bound: need 1 <= m <= n");
  if (eta < 0.0) throw ArgumentError("epsilon_bound: eta must be >= 0");
  const double g = gamma(sigma, l);
  return 8.0 * n * l * l / sigma * (1.0 + n / (m * g)) * eta * eta;
}

std::int64_t t0(int n, int m, double gamma, double delta0_gap, double epsilon) {
  if (n < 1 || m < 1 || m > n) throw ArgumentError("t0: need 1 <= m <= n");
  if (!(gamma > 0.0) || !(delta0_gap > 0.0) || !(epsilon > 0.0)) {
    throw ArgumentError("t0: gamma, delta0_gap and epsilon must be positive");
  }
  const double rate = n / (m * gamma);
  const double log_arg = delta0_gap * (1.0 + rate) / epsilon;
  if (log_arg <= 1.0) return 1;  // a non-positive iteration count is meaningless
  return static_cast<std::int64_t>(std::ceil(rate * std::log(log_arg)));
}

double k0(double l, double sigma, double eta, double delta0_gap) {
  if (!(l > 0.0) || !(sigma > 0.0) || !(eta > 0.0) || !(delta0_gap > 0.0)) {
    throw ArgumentError("k0: all inputs must be positive");
  }
  return 2.0 * std::log2(1024.0 * l * delta0_gap / (sigma * sigma * eta * eta));
}

double repeated_query_bound(double p, double delta) {
  if (!(p > 0.5 && p <= 1.0)) {
    throw ArgumentError("repeated_query_bound: p must lie in (1/2, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError("repeated_query_bound: delta must lie in (0, 1)");
  }
  const double margin = p - 0.5;
  const double base = std::log(2.0 / delta) / (4.0 * margin * margin);
  return base * std::log2(base);
}

double stochastic_rate_bound(int n, int m, double q, double kappa, double c) {
  if (n < 1 || m < 1) throw ArgumentError("stochastic_rate_bound: need n, m >= 1");
  if (q < 0.0) throw ArgumentError("stochastic_rate_bound: Q must be >= 0");
  if (kappa < 1.0) throw ArgumentError("stochastic_rate_bound: kappa must be >= 1");
  if (kappa == 1.0) {
    if (n < 2) {
      throw ArgumentError("stochastic_rate_bound: kappa == 1 requires n >= 2");
    }
    return std::exp(-c / std::log(static_cast<double>(n)) *
                    std::sqrt(q / static_cast<double>(n)));
  }
  return c * static_cast<double>(n) * n / m *
         std::pow(static_cast<double>(n) / q, 1.0 / (2.0 * kappa - 2.0));
}

LemmaZMoments lemma_z_exhaustive(std::span<const double> gradient, int m) {
  const int n = static_cast<int>(gradient.size());
  if (m < 1 || m > n) throw ArgumentError("lemma_z: need 1 <= m <= n");
  double norm_sq = 0.0;
  for (double g : gradient) norm_sq += g * g;
  if (norm_sq == 0.0) throw ArgumentError("lemma_z: gradient is zero");
  if (binomial(n, m) > 1e6) {
    throw ArgumentError("lemma_z_exhaustive: C(n, m) exceeds 10^6; use Monte Carlo");
  }

  const double scale = static_cast<double>(n) / m / norm_sq;
  double sum_value = 0.0, sum_z_sq = 0.0;
  std::uint64_t count = 0;

  // Lexicographic subset enumeration.
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    double restricted = 0.0;
    for (int i : idx) restricted += gradient[static_cast<std::size_t>(i)] *
                                    gradient[static_cast<std::size_t>(i)];
    const double z_sq = scale * restricted;
    sum_value += lemma_term(z_sq);
    sum_z_sq += z_sq;
    ++count;

    int k = m - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - m + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < m; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  const double denom = static_cast<double>(count);
  return {sum_value / denom, sum_z_sq / denom};
}

LemmaZMoments lemma_z_monte_carlo(std::span<const double> gradient, int m,
                                  std::uint64_t samples, std::uint64_t seed) {
  const int n = static_cast<int>(gradient.size());
  if (m < 1 || m > n) throw ArgumentError("lemma_z: need 1 <= m <= n");
  if (samples == 0) throw ArgumentError("lemma_z_monte_carlo: samples must be >= 1");
  double norm_sq = 0.0;
  for (double g : gradient) norm_sq += g * g;
  if (norm_sq == 0.0) throw ArgumentError("lemma_z: gradient is zero");

  const double scale = static_cast<double>(n) / m / norm_sq;
  SplitMix64 rng(seed);
  std::vector<int> idx(static_cast<std::size_t>(n));
  double sum_value = 0.0, sum_z_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    double restricted = 0.0;
    for (int i = 0; i < m; ++i) {
      const int j =
          i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      restricted += gradient[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] *
                    gradient[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    const double z_sq = scale * restricted;
    sum_value += lemma_term(z_sq);
    sum_z_sq += z_sq;
  }
  const double denom = static_cast<double>(samples);
  return {sum_value / denom, sum_z_sq / denom};
}

TheoreticalBounds compute_bounds(double sigma, double l, int n, int m,
                                 double eta, double delta0_gap) {
  require_sigma_l(sigma, l);
  if (n < 1 || m < 1 || m > n) throw ArgumentError("compute_bounds: need 1 <= m <= n");
  if (!(eta > 0.0)) throw ArgumentError("compute_bounds: eta must be > 0");
  if (!(delta0_gap > 0.0)) {
    throw ArgumentError("compute_bounds: delta0_gap must be > 0");
  }
  TheoreticalBounds b;
  b.sigma = sigma;
  b.l = l;
  b.n = n;
  b.m = m;
  b.eta = eta;
  b.delta0_gap = delta0_gap;
  b.gamma = gamma(sigma, l);
  b.epsilon = epsilon_bound(n, m, sigma, l, eta);
  b.t0 = t0(n, m, b.gamma, delta0_gap, b.epsilon);
  b.k0 = k0(l, sigma, eta, delta0_gap);
  b.deterministic_budget = static_cast<double>(b.t0) * b.k0 * (m + 1);
  return b;
}

}  // namespace pcopt::theory
