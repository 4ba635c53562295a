#ifndef PCOPT_OBJECTIVE_HPP
#define PCOPT_OBJECTIVE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pcopt {

using Point = std::vector<double>;

struct ConvexityConstants {
  double sigma;  // strong-convexity constant, > 0
  double l;      // strong-smoothness constant, >= sigma
};

/// A benchmark objective. Optimizers never see the evaluator; it exists for
/// oracle construction and for metrics recording only.
struct Objective {
  int dimension = 0;
  std::function<double(std::span<const double>)> evaluator;
  std::optional<double> optimum_value;
  std::optional<Point> optimum_point;
  std::optional<ConvexityConstants> convexity;
};

/// Evaluates f(x). Throws ArgumentError on dimension mismatch and
/// EvaluationError if the result is not finite.
double evaluate(const Objective& obj, std::span<const double> x);

/// f(x) = x^T A x with A = B^T B / n + I, B having iid standard-normal
/// entries from the seeded generator. Minimum 0 at the origin;
/// convexity constants (2 lambda_min(A), 2 lambda_max(A)).
Objective make_quadratic(int n, std::uint64_t seed);

/// Row-major A for the quadratic with the same (n, seed).
std::vector<double> quadratic_matrix(int n, std::uint64_t seed);

/// f(x) = sum_{i=1}^{n-1} [(1-x_i)^2 + 100 (x_{i+1} - x_i^2)^2].
/// Minimum 0 at the all-ones point. Requires n >= 2.
Objective make_rosenbrock(int n);

}  // namespace pcopt

#endif  // PCOPT_OBJECTIVE_HPP
