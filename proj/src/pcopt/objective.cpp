#include "pcopt/objective.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>
#include <string>

#include "pcopt/errors.hpp"
#include "pcopt/rng.hpp"

namespace pcopt {

double evaluate(const Objective& obj, std::span<const double> x) {
  if (static_cast<int>(x.size()) != obj.dimension) {
    throw ArgumentError("evaluate: point has dimension " +
                        std::to_string(x.size()) + ", objective expects " +
                        std::to_string(obj.dimension));
  }
  const double v = obj.evaluator(x);
  if (!std::isfinite(v)) {
    throw EvaluationError("evaluate: objective returned a non-finite value");
  }
  return v;
}

namespace {

Eigen::MatrixXd build_quadratic_matrix(int n, std::uint64_t seed) {
  SplitMix64 rng(hash_combine(seed, 0x51ADu));
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = rng.normal();
  Eigen::MatrixXd a = b.transpose() * b / static_cast<double>(n);
  a += Eigen::MatrixXd::Identity(n, n);
  return a;
}

}  // namespace

std::vector<double> quadratic_matrix(int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("make_quadratic: n must be >= 1");
  const Eigen::MatrixXd a = build_quadratic_matrix(n, seed);
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = a(i, j);
  return out;
}

Objective make_quadratic(int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("make_quadratic: n must be >= 1");
  const Eigen::MatrixXd a = build_quadratic_matrix(n, seed);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues()(0);
  const double lambda_max = es.eigenvalues()(n - 1);

  // x^T A x = ||R x||^2 with A = R^T R: half the flops of a full matvec and
  // never negative in floating point. R is kept row-major and the product is
  // a plain loop; this sits on the hot path of every oracle query.
  const Eigen::MatrixXd r = a.llt().matrixU();
  auto factor = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      (*factor)[static_cast<std::size_t>(i) * n + j] = r(i, j);
    }
  }

  Objective obj;
  obj.dimension = n;
  obj.evaluator = [factor, n](std::span<const double> x) -> double {
    const double* rm = factor->data();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double* row = rm + static_cast<std::size_t>(i) * n;
      double s = 0.0;
      for (int j = i; j < n; ++j) s += row[j] * x[j];
      acc += s * s;
    }
    return acc;
  };
  obj.optimum_value = 0.0;
  obj.optimum_point = Point(static_cast<std::size_t>(n), 0.0);
  obj.convexity = ConvexityConstants{2.0 * lambda_min, 2.0 * lambda_max};
  return obj;
}

Objective make_rosenbrock(int n) {
  if (n < 2) throw ArgumentError("make_rosenbrock: n must be >= 2");
  Objective obj;
  obj.dimension = n;
  obj.evaluator = [n](std::span<const double> x) -> double {
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double t = 1.0 - x[i];
      const double q = x[i + 1] - x[i] * x[i];
      acc += t * t + 100.0 * q * q;
    }
    return acc;
  };
  obj.optimum_value = 0.0;
  obj.optimum_point = Point(static_cast<std::size_t>(n), 1.0);
  return obj;
}

}  // namespace pcopt
