#include "pcopt/blockcd.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "pcopt/errors.hpp"

namespace pcopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream-id tags; coordinate i maps to stream_base combined with i + 1, so
// keep the tags clear of [1, n].
constexpr std::uint64_t kSearchStepTag = 0;
constexpr std::uint64_t kCoordRngTag = 0xC000000000000001ull;

Point unit_vector(const Point& d) {
  double norm_sq = 0.0;
  for (double v : d) norm_sq += v * v;
  const double norm = std::sqrt(norm_sq);
  Point u(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) u[i] = d[i] / norm;
  return u;
}

}  // namespace

std::vector<int> sample_coordinates(int n, int m, SplitMix64& rng) {
  if (m < 1 || m > n) {
    throw ArgumentError("sample_coordinates: need 1 <= m <= n, got m = " +
                        std::to_string(m) + ", n = " + std::to_string(n));
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates: the first m entries are a uniform size-m subset.
  for (int i = 0; i < m; ++i) {
    const int j =
        i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(m));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Point direction_estimate(ComparisonOracle& oracle, const Point& x,
                         const std::vector<int>& coords, double eta,
                         double delta, int workers,
                         std::uint64_t stream_base) {
  const int n = oracle.dimension();
  if (coords.empty()) throw ArgumentError("direction_estimate: empty coordinate set");
  if (!(eta > 0.0)) throw ArgumentError("direction_estimate: eta must be > 0");
  if (workers < 1) throw ArgumentError("direction_estimate: workers must be >= 1");
  for (int i : coords) {
    if (i < 0 || i >= n) throw ArgumentError("direction_estimate: coordinate out of range");
  }

  const double tol = eta / 2.0;
  const std::size_t tasks = coords.size();
  std::vector<double> alphas(tasks, 0.0);
  std::vector<std::exception_ptr> failures(tasks);

  auto run_task = [&](std::size_t k, Point& axis) {
    const int coord = coords[k];
    axis[static_cast<std::size_t>(coord)] = 1.0;
    OracleStream stream{
        hash_combine(stream_base, static_cast<std::uint64_t>(coord) + 1), 0};
    alphas[k] = line_search(oracle, x, axis, tol, delta, &stream).alpha;
    axis[static_cast<std::size_t>(coord)] = 0.0;
  };

  // More threads than cores only adds scheduling churn; results do not
  // depend on the pool size.
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const int pool = std::min<int>(std::min<int>(workers, static_cast<int>(tasks)),
                                 static_cast<int>(hardware));
  if (pool <= 1) {
    Point axis(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < tasks; ++k) run_task(k, axis);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      Point axis(static_cast<std::size_t>(n), 0.0);
      for (;;) {
        const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
        if (k >= tasks) return;
        try {
          run_task(k, axis);
        } catch (...) {
          failures[k] = std::current_exception();
          axis.assign(axis.size(), 0.0);  // run_task may not have reset it
        }
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int w = 0; w < pool; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    // Rethrow by task order so the surfaced error does not depend on
    // scheduling.
    for (std::size_t k = 0; k < tasks; ++k) {
      if (failures[k]) std::rethrow_exception(failures[k]);
    }
  }

  Point d(static_cast<std::size_t>(n), 0.0);
  bool all_zero = true;
  for (std::size_t k = 0; k < tasks; ++k) {
    d[static_cast<std::size_t>(coords[k])] = alphas[k];
    all_zero &= (alphas[k] == 0.0);
  }
  if (all_zero) {
    d[static_cast<std::size_t>(coords.front())] = eta / 2.0;
  }
  return d;
}

double search_step(ComparisonOracle& oracle, const Point& x, const Point& d,
                   double eta, double delta, OracleStream* stream) {
  bool nonzero = false;
  for (double v : d) nonzero |= (v != 0.0);
  if (!nonzero) throw ArgumentError("search_step: direction is zero");
  const Point u = unit_vector(d);
  return line_search(oracle, x, u, eta, delta, stream).alpha;
}

Trajectory blockcd_run(ComparisonOracle& oracle,
                       const Objective& objective_for_metrics,
                       const BlockCDConfig& config, const Point& x0,
                       BlockCDStats* stats) {
  const int n = oracle.dimension();
  if (static_cast<int>(x0.size()) != n) {
    throw ArgumentError("blockcd_run: x0 has the wrong dimension");
  }
  if (config.m < 1 || config.m > n) {
    throw ArgumentError("blockcd_run: need 1 <= m <= n");
  }
  if (!(config.eta > 0.0)) throw ArgumentError("blockcd_run: eta must be > 0");
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    throw ArgumentError("blockcd_run: delta must lie in (0, 1]");
  }
  if (config.workers < 1) throw ArgumentError("blockcd_run: workers must be >= 1");
  if (config.target_gap && !objective_for_metrics.optimum_value) {
    throw ArgumentError(
        "blockcd_run: target_gap requires an objective with a known optimum");
  }

  // At least one stopping criterion must exist; fall back to the default
  // query budget when none was given.
  std::optional<std::uint64_t> max_queries = config.max_queries;
  if (!config.max_iterations && !max_queries && !config.target_gap) {
    max_queries = 1000000;
  }

  Trajectory out;
  out.final_point = x0;
  Point& x = out.final_point;

  double f_cur = evaluate(objective_for_metrics, x);
  out.records.push_back({0, oracle.ledger_count(), 0.0, f_cur, 0.0});
  if (config.max_iterations) {
    out.records.reserve(static_cast<std::size_t>(*config.max_iterations) + 1);
  }

  const auto start = Clock::now();
  for (std::uint64_t t = 0;; ++t) {
    if (config.max_iterations && t >= *config.max_iterations) break;
    if (max_queries && oracle.ledger_count() >= *max_queries) break;
    if (config.target_gap &&
        f_cur - *objective_for_metrics.optimum_value <= *config.target_gap) {
      break;
    }

    double beta = 0.0;
    try {
      const std::uint64_t stream_base = hash_combine(config.master_seed, t);
      SplitMix64 coord_rng(hash_combine(stream_base, kCoordRngTag));
      const std::vector<int> coords = sample_coordinates(n, config.m, coord_rng);

      const auto dir_start = Clock::now();
      const Point d = direction_estimate(oracle, x, coords, config.eta,
                                         config.delta, config.workers,
                                         stream_base);
      if (stats) stats->direction_seconds += seconds_since(dir_start);

      OracleStream step_stream{hash_combine(stream_base, kSearchStepTag), 0};
      const Point u = unit_vector(d);
      beta = line_search(oracle, x, u, config.eta, config.delta, &step_stream)
                 .alpha;
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] += beta * u[static_cast<std::size_t>(i)];
      }
    } catch (const BudgetExhaustedError&) {
      break;  // normal termination; the partial iteration is discarded
    }

    f_cur = evaluate(objective_for_metrics, x);
    out.records.push_back(
        {t + 1, oracle.ledger_count(), seconds_since(start), f_cur, beta});
  }
  return out;
}

}  // namespace pcopt
