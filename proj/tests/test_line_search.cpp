#include <doctest.h>

#include <cmath>

#include "pcopt/errors.hpp"
#include "pcopt/line_search.hpp"
#include "pcopt/rng.hpp"
#include "pcopt/theory.hpp"

using namespace pcopt;

namespace {

// g(t) = a (t - c)^2 + b as a 1-D objective; the strictly convex restriction
// used throughout.
Objective shifted_parabola(double a, double c, double b = 0.0) {
  Objective obj;
  obj.dimension = 1;
  obj.evaluator = [a, c, b](std::span<const double> x) {
    const double t = x[0] - c;
    return a * t * t + b;
  };
  return obj;
}

}  // namespace

TEST_SUITE_BEGIN("line_search");

TEST_CASE("finds the minimizer of (t - 5)^2 within tol 0.1") {
  const Objective g = shifted_parabola(1.0, 5.0);
  ComparisonOracle oracle(g);
  const auto r = line_search(oracle, Point{0.0}, Point{1.0}, 0.1, 1.0);
  CHECK(r.alpha >= 4.9);
  CHECK(r.alpha <= 5.1);
  CHECK(r.bracket_hi - r.bracket_lo <= 0.1);
  CHECK(r.queries_used == oracle.ledger_count());
}

TEST_CASE("stays near zero when already at the minimum") {
  const Objective g = shifted_parabola(1.0, 0.0);
  ComparisonOracle oracle(g);
  const auto r = line_search(oracle, Point{0.0}, Point{1.0}, 0.1, 1.0);
  CHECK(std::abs(r.alpha) <= 0.1);
}

TEST_CASE("doubling reaches far minima: (t - 100)^2 within tol 0.5") {
  const Objective g = shifted_parabola(1.0, 100.0);
  ComparisonOracle oracle(g);
  const auto r = line_search(oracle, Point{0.0}, Point{1.0}, 0.5, 1.0);
  CHECK(r.alpha >= 99.5);
  CHECK(r.alpha <= 100.5);
  // Step 2 must have pushed the + endpoint past the minimizer.
  CHECK(r.bracket_hi >= 100.0);
}

TEST_CASE("deterministic accuracy and query bound over random restrictions") {
  SplitMix64 rng(2718);
  for (const double tol : {0.1, 1e-3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const double a = std::exp(rng.uniform(std::log(0.25), std::log(4.0)));
      const double c = (rng.uniform01() < 0.5 ? -1.0 : 1.0) *
                       std::exp(rng.uniform(std::log(0.5), std::log(30.0)));
      const double b = rng.uniform(-5.0, 5.0);
      const Objective g = shifted_parabola(a, c, b);
      ComparisonOracle oracle(g);
      const auto r = line_search(oracle, Point{0.0}, Point{1.0}, tol, 1.0);

      CHECK(std::abs(r.alpha - c) <= tol);
      CHECK(r.bracket_hi - r.bracket_lo <= tol);
      CHECK(r.bracket_lo <= r.alpha);
      CHECK(r.alpha <= r.bracket_hi);
      // one line search stays within K0 + 8 queries
      const double k0 = theory::k0(2.0 * a, 2.0 * a, tol, a * c * c);
      CHECK(static_cast<double>(r.queries_used) <= k0 + 8.0);
      // no worsening relative to the start
      CHECK(evaluate(g, Point{r.alpha}) <= evaluate(g, Point{0.0}));
    }
  }
}

TEST_CASE("bisection brackets are nested and contain the incumbent") {
  const Objective g = shifted_parabola(0.7, 11.25, -2.0);
  ComparisonOracle oracle(g);
  LineSearchTrace trace;
  const auto r =
      line_search(oracle, Point{0.0}, Point{1.0}, 1e-4, 1.0, nullptr, &trace);
  REQUIRE(!trace.steps.empty());
  double prev_lo = trace.steps.front().lo;
  double prev_hi = trace.steps.front().hi;
  for (const auto& s : trace.steps) {
    CHECK(s.lo >= prev_lo - 1e-15);
    CHECK(s.hi <= prev_hi + 1e-15);
    CHECK(s.lo <= s.alpha);
    CHECK(s.alpha <= s.hi);
    prev_lo = s.lo;
    prev_hi = s.hi;
  }
  CHECK(r.alpha == trace.steps.back().alpha);
}

TEST_CASE("integer translation shifts the result accordingly") {
  // The two searches each land within tol of their minimizer, so the
  // difference matches the shift within 2 * tol.
  SplitMix64 rng(99);
  const double tol = 0.01;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.uniform(0.5, 2.0);
    const double c = rng.uniform(-3.0, 3.0);
    const double shift = static_cast<double>(1 + (trial % 5));
    const Objective g1 = shifted_parabola(a, c);
    const Objective g2 = shifted_parabola(a, c + shift);
    ComparisonOracle o1(g1), o2(g2);
    const double a1 = line_search(o1, Point{0.0}, Point{1.0}, tol, 1.0).alpha;
    const double a2 = line_search(o2, Point{0.0}, Point{1.0}, tol, 1.0).alpha;
    CHECK(std::abs((a2 - a1) - shift) <= 2.0 * tol);
  }
}

TEST_CASE("unbounded descent is detected") {
  Objective linear;
  linear.dimension = 1;
  linear.evaluator = [](std::span<const double> x) { return x[0]; };
  ComparisonOracle oracle(linear);
  CHECK_THROWS_AS(line_search(oracle, Point{0.0}, Point{-1.0}, 0.1, 1.0),
                  UnboundedDescentError);
}

TEST_CASE("rejects invalid arguments") {
  const Objective g = shifted_parabola(1.0, 1.0);
  ComparisonOracle oracle(g);
  CHECK_THROWS_AS(line_search(oracle, Point{0.0}, Point{0.0}, 0.1, 1.0),
                  ArgumentError);
  CHECK_THROWS_AS(line_search(oracle, Point{0.0}, Point{1.0}, 0.0, 1.0),
                  ArgumentError);
  CHECK_THROWS_AS(line_search(oracle, Point{0.0}, Point{1.0}, 0.1, 1.5),
                  ArgumentError);
}

TEST_CASE("noisy search with robust comparisons still resolves the bracket") {
  // kappa = 1 keeps the per-comparison cost bounded (p = 1/2 + mu always).
  const Objective g = shifted_parabola(1.0, 3.0);
  ComparisonOracle oracle(g, {1.0, 0.3, 0.3}, 31337);
  OracleStream stream{7, 0};
  int hits = 0;
  for (int t = 0; t < 20; ++t) {
    const auto r = line_search(oracle, Point{0.0}, Point{1.0}, 0.05, 0.01, &stream);
    CHECK(r.bracket_hi - r.bracket_lo <= 0.05);
    if (std::abs(r.alpha - 3.0) <= 0.05) ++hits;
  }
  // most runs must land on the true minimizer
  CHECK(hits >= 16);
}

TEST_CASE("streamless noisy searches draw fresh noise from the default stream") {
  const Objective g = shifted_parabola(1.0, 2.0);
  ComparisonOracle oracle(g, {1.0, 0.3, 0.3}, 77);
  std::uint64_t total = 0;
  int hits = 0;
  for (int t = 0; t < 10; ++t) {
    const auto r = line_search(oracle, Point{0.0}, Point{1.0}, 0.05, 0.01);
    total += r.queries_used;
    if (std::abs(r.alpha - 2.0) <= 0.05) ++hits;
  }
  // exact accounting through the default stream, and the searches are
  // independent rather than replays of one noise sequence
  CHECK(total == oracle.ledger_count());
  CHECK(hits >= 8);
}

TEST_CASE("multiple searches on a shared oracle reconcile with the ledger") {
  const Objective g = shifted_parabola(2.0, -4.0);
  ComparisonOracle oracle(g);
  std::uint64_t total = 0;
  for (int t = 0; t < 5; ++t) {
    total += line_search(oracle, Point{0.0}, Point{1.0}, 1e-3, 1.0).queries_used;
  }
  CHECK(total == oracle.ledger_count());
}

TEST_SUITE_END();
