#include <doctest.h>

#include <cmath>
#include <vector>

#include "pcopt/errors.hpp"
#include "pcopt/oracle.hpp"
#include "pcopt/rng.hpp"

using namespace pcopt;

namespace {

Objective norm_squared(int n) {
  Objective obj;
  obj.dimension = n;
  obj.evaluator = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  obj.optimum_value = 0.0;
  return obj;
}

// 1-D identity objective: gaps between probe points are chosen exactly.
Objective line_objective(double scale = 1.0, double shift = 0.0) {
  Objective obj;
  obj.dimension = 1;
  obj.evaluator = [scale, shift](std::span<const double> x) {
    return scale * x[0] + shift;
  };
  return obj;
}

// frequency of correct answers for a fixed gap
double correct_frequency(ComparisonOracle& oracle, double gap, int trials) {
  const Point x{0.0};
  const Point y{gap};
  int correct = 0;
  for (int t = 0; t < trials; ++t) {
    if (oracle.compare(x, y) == Sign::plus) ++correct;
  }
  return static_cast<double>(correct) / trials;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("deterministic compare returns the exact sign") {
  const Objective obj = norm_squared(2);
  ComparisonOracle oracle(obj);
  CHECK(oracle.compare(Point{1.0, 0.0}, Point{2.0, 0.0}) == Sign::plus);
  CHECK(oracle.compare(Point{2.0, 0.0}, Point{1.0, 0.0}) == Sign::minus);
  CHECK(oracle.deterministic());
}

TEST_CASE("ties resolve to +1") {
  const Objective obj = norm_squared(2);
  ComparisonOracle oracle(obj);
  CHECK(oracle.compare(Point{1.0, 0.0}, Point{-1.0, 0.0}) == Sign::plus);
  CHECK(oracle.compare(Point{0.5, 0.5}, Point{0.5, 0.5}) == Sign::plus);
}

TEST_CASE("deterministic compare is antisymmetric off ties") {
  const Objective obj = norm_squared(3);
  ComparisonOracle oracle(obj);
  SplitMix64 rng(9);
  for (int t = 0; t < 200; ++t) {
    Point x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.uniform(-2.0, 2.0);
      y[i] = rng.uniform(-2.0, 2.0);
    }
    const double fx = evaluate(obj, x), fy = evaluate(obj, y);
    if (fx == fy) continue;
    CHECK(to_int(oracle.compare(x, y)) == -to_int(oracle.compare(y, x)));
  }
}

TEST_CASE("compare rejects dimension mismatches") {
  const Objective obj = norm_squared(2);
  ComparisonOracle oracle(obj);
  CHECK_THROWS_AS(oracle.compare(Point{1.0}, Point{1.0, 2.0}), ArgumentError);
}

TEST_CASE("stochastic parameter validation") {
  const Objective obj = norm_squared(1);
  CHECK_THROWS_AS(ComparisonOracle(obj, {0.5, 0.1, 0.3}, 1), ArgumentError);
  CHECK_THROWS_AS(ComparisonOracle(obj, {2.0, -0.1, 0.3}, 1), ArgumentError);
  CHECK_THROWS_AS(ComparisonOracle(obj, {2.0, 0.1, 0.7}, 1), ArgumentError);
  CHECK_THROWS_AS(ComparisonOracle(obj, {2.0, 0.1, 0.0}, 1), ArgumentError);
  // kappa == 1 requires mu <= delta0
  CHECK_THROWS_AS(ComparisonOracle(obj, {1.0, 0.4, 0.3}, 1), ArgumentError);
  CHECK_NOTHROW(ComparisonOracle(obj, {1.0, 0.2, 0.3}, 1));
}

TEST_CASE("stochastic correct-sign probability is exactly 1/2 + min{d0, mu gap^(k-1)}") {
  // kappa=2, mu=0.01, delta0=0.3, |gap| = 10 -> p = 1/2 + min(0.3, 0.1) = 0.6
  const Objective obj = line_objective();
  ComparisonOracle oracle(obj, {2.0, 0.01, 0.3}, 424242);
  const int trials = 100000;
  const double freq = correct_frequency(oracle, 10.0, trials);
  CHECK(std::abs(freq - 0.6) <= 0.005);
}

TEST_CASE("stochastic calibration over a gap/kappa grid") {
  const Objective obj = line_objective();
  const int trials = 100000;
  struct Case {
    double kappa, mu, delta0, gap;
  };
  const Case cases[] = {
      {1.0, 0.01, 0.3, 1e-3}, {1.0, 0.01, 0.3, 1.0}, {1.0, 0.01, 0.3, 1e3},
      {2.0, 0.01, 0.3, 1e-3}, {2.0, 0.01, 0.3, 1.0}, {2.0, 0.01, 0.3, 1e3},
  };
  std::uint64_t seed = 1000;
  for (const Case& c : cases) {
    ComparisonOracle oracle(obj, {c.kappa, c.mu, c.delta0}, seed++);
    const double term =
        c.kappa == 1.0 ? c.mu : c.mu * std::pow(c.gap, c.kappa - 1.0);
    const double p = 0.5 + std::min(c.delta0, term);
    const double freq = correct_frequency(oracle, c.gap, trials);
    const double se = std::sqrt(p * (1.0 - p) / trials);
    CHECK(std::abs(freq - p) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("kappa=1 outcomes are invariant under monotone transformations") {
  // identical seeded outcome streams for f and 2f + 1
  const Objective f = line_objective(1.0, 0.0);
  const Objective g = line_objective(2.0, 1.0);
  ComparisonOracle of(f, {1.0, 0.05, 0.3}, 777);
  ComparisonOracle og(g, {1.0, 0.05, 0.3}, 777);
  SplitMix64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const Point x{rng.uniform(-5.0, 5.0)};
    const Point y{rng.uniform(-5.0, 5.0)};
    CHECK(of.compare(x, y) == og.compare(x, y));
  }
}

TEST_CASE("ledger counts every query") {
  const Objective obj = norm_squared(1);
  ComparisonOracle oracle(obj);
  CHECK(oracle.ledger_count() == 0);
  const Point a{1.0}, b{2.0};
  oracle.compare(a, b);
  oracle.compare(a, b);
  oracle.compare(b, a);
  CHECK(oracle.ledger_count() == 3);
}

TEST_CASE("robust_compare counts all tosses in the ledger") {
  const Objective obj = line_objective();
  ComparisonOracle oracle(obj, {2.0, 0.01, 0.3}, 3);
  OracleStream stream{99, 0};
  const std::uint64_t before = oracle.ledger_count();
  const RobustCompareResult r =
      oracle.robust_compare(Point{0.0}, Point{100.0}, 0.05, stream);
  CHECK(oracle.ledger_count() == before + r.tosses);
  CHECK(r.tosses >= 1);
}

TEST_CASE("robust_compare short-circuits on the deterministic oracle") {
  const Objective obj = norm_squared(2);
  ComparisonOracle oracle(obj);
  const Sign s = oracle.robust_compare(Point{1.0, 0.0}, Point{2.0, 0.0}, 0.1);
  CHECK(s == Sign::plus);
  CHECK(oracle.ledger_count() == 1);
}

TEST_CASE("robust_compare validates delta on stochastic oracles") {
  const Objective obj = line_objective();
  ComparisonOracle oracle(obj, {2.0, 0.01, 0.3}, 3);
  CHECK_THROWS_AS(oracle.robust_compare(Point{0.0}, Point{1.0}, 0.0),
                  ArgumentError);
  CHECK_THROWS_AS(oracle.robust_compare(Point{0.0}, Point{1.0}, 1.0),
                  ArgumentError);
}

TEST_CASE("repeated_query identifies a 0.7 coin at confidence 0.95") {
  SplitMix64 rng(1995);
  int correct = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    const auto r = repeated_query(
        [&] { return rng.uniform01() < 0.7 ? Sign::plus : Sign::minus; }, 0.05);
    if (r.sign == Sign::plus) ++correct;
  }
  CHECK(correct >= static_cast<int>(0.95 * trials));
}

TEST_CASE("repeated_query accuracy over synthetic coins") {
  // error rate <= delta + 0.01 at each (p, delta)
  for (const double p : {0.6, 0.7, 0.9}) {
    for (const double delta : {0.05, 0.01}) {
      SplitMix64 rng(hash_combine(static_cast<std::uint64_t>(p * 1000),
                                  static_cast<std::uint64_t>(delta * 1000)));
      int errors = 0;
      const int trials = 2000;
      for (int t = 0; t < trials; ++t) {
        const auto r = repeated_query(
            [&] { return rng.uniform01() < p ? Sign::plus : Sign::minus; },
            delta);
        if (r.sign != Sign::plus) ++errors;
      }
      CHECK(static_cast<double>(errors) / trials <= delta + 0.01);
    }
  }
}

TEST_CASE("repeated_query detects negative biases too") {
  SplitMix64 rng(2024);
  int errors = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const auto r = repeated_query(
        [&] { return rng.uniform01() < 0.25 ? Sign::plus : Sign::minus; }, 0.05);
    if (r.sign != Sign::minus) ++errors;
  }
  CHECK(static_cast<double>(errors) / trials <= 0.06);
}

TEST_CASE("robust_compare through the oracle meets the confidence target") {
  // kappa = 2, mu = 0.01, |gap| = 10 -> p = 0.6; delta = 0.05
  const Objective obj = line_objective();
  ComparisonOracle oracle(obj, {2.0, 0.01, 0.3}, 90210);
  const Point x{0.0}, y{10.0};
  int errors = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    if (oracle.robust_compare(x, y, 0.05) != Sign::plus) ++errors;
  }
  CHECK(static_cast<double>(errors) / trials <= 0.06);
}

TEST_CASE("repeated_query raises the inconclusive error at the round cap") {
  SplitMix64 rng(8);
  CHECK_THROWS_AS(
      repeated_query(
          [&] { return rng.uniform01() < 0.5 ? Sign::plus : Sign::minus; },
          0.05, /*max_rounds=*/5),
      InconclusiveError);
}

TEST_CASE("query budget: the first query past the cap throws and is not counted") {
  const Objective obj = norm_squared(1);
  ComparisonOracle oracle(obj);
  oracle.set_query_budget(5);
  const Point a{1.0}, b{2.0};
  for (int i = 0; i < 5; ++i) oracle.compare(a, b);
  CHECK_THROWS_AS(oracle.compare(a, b), BudgetExhaustedError);
  CHECK(oracle.ledger_count() == 5);
}

TEST_CASE("stream replay: same stream id and seed give the same outcomes") {
  const Objective obj = line_objective();
  ComparisonOracle o1(obj, {2.0, 0.01, 0.3}, 5150);
  ComparisonOracle o2(obj, {2.0, 0.01, 0.3}, 5150);
  OracleStream s1{1234, 0}, s2{1234, 0};
  const Point x{0.0}, y{1.0};
  for (int t = 0; t < 200; ++t) {
    CHECK(o1.compare(x, y, s1) == o2.compare(x, y, s2));
  }
}

TEST_SUITE_END();
