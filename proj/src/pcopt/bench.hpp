#ifndef PCOPT_BENCH_HPP
#define PCOPT_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcopt/blockcd.hpp"
#include "pcopt/theory.hpp"

namespace pcopt::bench {

struct ProblemConfig {
  std::string name;  // "quadratic" | "rosenbrock"
  int n = 0;
  std::uint64_t seed = 0;
};

struct OracleConfig {
  std::string mode;  // "deterministic" | "stochastic"
  double kappa = 2.0;
  double mu = 0.01;
  double delta0 = 0.3;
  std::uint64_t seed = 0;
};

struct AlgorithmConfig {
  std::string name;  // "blockcd" | "nelder-mead"
  int m = 1;
  double eta = 0.01;
  double delta = 1.0;
  int workers = 1;
};

struct BudgetConfig {
  std::optional<std::uint64_t> max_queries;
  std::optional<std::uint64_t> max_iterations;
  std::optional<double> target_gap;
};

struct ExperimentConfig {
  ProblemConfig problem;
  OracleConfig oracle;
  AlgorithmConfig algorithm;
  BudgetConfig budget;
  int repeats = 1;
  std::string output_path;
};

/// Strict parse of the JSON config text: unknown or missing keys raise
/// ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses a config file. A file that cannot be read raises
/// IoError; invalid content raises ConfigError.
ExperimentConfig load_config(const std::string& path,
                             const std::optional<std::uint64_t>& seed_override,
                             const std::optional<std::string>& output_override);

struct SummaryRow {
  std::uint64_t checkpoint_queries;
  double median_f;
  double p30_f;
  double p70_f;
  double median_elapsed_seconds;
};

/// Aligns repeats on query checkpoints: each repeat contributes its last
/// record at or before the checkpoint, and the 30/50/70 percentiles are
/// nearest-rank over those values.
std::vector<SummaryRow> summarize(
    const std::vector<std::vector<IterationRecord>>& repeats,
    const std::vector<std::uint64_t>& checkpoints);

/// Strictly increasing powers of two up to the limit (inclusive).
std::vector<std::uint64_t> power_of_two_checkpoints(std::uint64_t limit);

struct ExperimentOutput {
  std::string raw_path;
  std::string summary_path;
};

/// Runs `repeats` seeded trials with initial points uniform on [-2, 2]^n and
/// writes <output_path>.raw.csv plus <output_path>.summary.csv.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Key=value rendering used by the `bounds` CLI subcommand.
std::string format_bounds(const theory::TheoreticalBounds& bounds);

extern const char* const kRawCsvHeader;
extern const char* const kSummaryCsvHeader;

}  // namespace pcopt::bench

#endif  // PCOPT_BENCH_HPP
