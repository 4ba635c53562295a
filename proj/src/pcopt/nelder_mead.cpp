#include "pcopt/nelder_mead.hpp"

#include <chrono>
#include <cstddef>

#include "pcopt/errors.hpp"

namespace pcopt {

namespace nm_detail {

namespace {

void merge_sort(ComparisonOracle& oracle, const std::vector<Point>& vertices,
                std::vector<std::size_t>& idx, std::vector<std::size_t>& tmp,
                std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_sort(oracle, vertices, idx, tmp, lo, mid);
  merge_sort(oracle, vertices, idx, tmp, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    // compare(x, y) = +1 iff f(y) >= f(x): keep the left element while it is
    // not worse (stable on ties).
    if (oracle.compare(vertices[idx[a]], vertices[idx[b]]) == Sign::plus) {
      tmp[out++] = idx[a++];
    } else {
      tmp[out++] = idx[b++];
    }
  }
  while (a < mid) tmp[out++] = idx[a++];
  while (b < hi) tmp[out++] = idx[b++];
  for (std::size_t i = lo; i < hi; ++i) idx[i] = tmp[i];
}

}  // namespace

std::vector<std::size_t> oracle_rank(ComparisonOracle& oracle,
                                     const std::vector<Point>& vertices) {
  std::vector<std::size_t> idx(vertices.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::size_t> tmp(idx.size());
  merge_sort(oracle, vertices, idx, tmp, 0, idx.size());
  return idx;
}

void shrink_toward_best(std::vector<Point>& vertices) {
  const Point& best = vertices.front();
  for (std::size_t v = 1; v < vertices.size(); ++v) {
    for (std::size_t i = 0; i < best.size(); ++i) {
      vertices[v][i] = best[i] + 0.5 * (vertices[v][i] - best[i]);
    }
  }
}

}  // namespace nm_detail

namespace {

using Clock = std::chrono::steady_clock;

void reorder(std::vector<Point>& vertices, const std::vector<std::size_t>& order) {
  std::vector<Point> ranked;
  ranked.reserve(vertices.size());
  for (std::size_t i : order) ranked.push_back(std::move(vertices[i]));
  vertices = std::move(ranked);
}

}  // namespace

Trajectory nelder_mead_run(ComparisonOracle& oracle,
                           const Objective& objective_for_metrics,
                           const NelderMeadConfig& config, const Point& x0) {
  const int n = oracle.dimension();
  if (static_cast<int>(x0.size()) != n) {
    throw ArgumentError("nelder_mead_run: x0 has the wrong dimension");
  }
  if (config.target_gap && !objective_for_metrics.optimum_value) {
    throw ArgumentError(
        "nelder_mead_run: target_gap requires an objective with a known optimum");
  }
  std::optional<std::uint64_t> max_queries = config.max_queries;
  if (!config.max_iterations && !max_queries && !config.target_gap) {
    max_queries = 1000000;
  }

  Trajectory out;
  double f_best = evaluate(objective_for_metrics, x0);
  out.records.push_back({0, oracle.ledger_count(), 0.0, f_best, 0.0});
  out.final_point = x0;

  // Initial simplex: x0 plus one step along each axis.
  std::vector<Point> v(static_cast<std::size_t>(n) + 1, x0);
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] +=
        config.initial_step;
  }

  auto leq = [&](const Point& a, const Point& b) {
    return oracle.compare(a, b) == Sign::plus;  // f(a) <= f(b)
  };
  auto less = [&](const Point& a, const Point& b) {
    return oracle.compare(b, a) == Sign::minus;  // f(a) < f(b)
  };

  const auto start = Clock::now();
  try {
    reorder(v, nm_detail::oracle_rank(oracle, v));
    for (std::uint64_t t = 0;; ++t) {
      if (config.max_iterations && t >= *config.max_iterations) break;
      if (max_queries && oracle.ledger_count() >= *max_queries) break;
      if (config.target_gap &&
          f_best - *objective_for_metrics.optimum_value <= *config.target_gap) {
        break;
      }

      const Point& worst = v.back();
      Point centroid(static_cast<std::size_t>(n), 0.0);
      for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        for (int i = 0; i < n; ++i) {
          centroid[static_cast<std::size_t>(i)] +=
              v[k][static_cast<std::size_t>(i)];
        }
      }
      for (int i = 0; i < n; ++i) {
        centroid[static_cast<std::size_t>(i)] /= static_cast<double>(n);
      }

      auto blend = [&](double coeff) {
        Point p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          const std::size_t j = static_cast<std::size_t>(i);
          p[j] = centroid[j] + coeff * (centroid[j] - worst[j]);
        }
        return p;
      };

      Point reflected = blend(1.0);
      bool shrink = false;
      if (less(reflected, v.front())) {
        Point expanded = blend(2.0);
        v.back() = less(expanded, reflected) ? std::move(expanded)
                                             : std::move(reflected);
      } else if (less(reflected, v[v.size() - 2])) {
        v.back() = std::move(reflected);
      } else if (less(reflected, v.back())) {
        Point outside = blend(0.5);
        if (leq(outside, reflected)) {
          v.back() = std::move(outside);
        } else {
          shrink = true;
        }
      } else {
        Point inside = blend(-0.5);
        if (less(inside, v.back())) {
          v.back() = std::move(inside);
        } else {
          shrink = true;
        }
      }
      if (shrink) nm_detail::shrink_toward_best(v);

      reorder(v, nm_detail::oracle_rank(oracle, v));
      f_best = evaluate(objective_for_metrics, v.front());
      out.final_point = v.front();
      out.records.push_back({t + 1, oracle.ledger_count(),
                             std::chrono::duration<double>(Clock::now() - start)
                                 .count(),
                             f_best, 0.0});
    }
  } catch (const BudgetExhaustedError&) {
    // normal termination; the interrupted operation is discarded
  }
  return out;
}

}  // namespace pcopt
