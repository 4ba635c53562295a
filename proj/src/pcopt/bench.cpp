#include "pcopt/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pcopt/errors.hpp"
#include "pcopt/nelder_mead.hpp"
#include "pcopt/objective.hpp"
#include "pcopt/oracle.hpp"

namespace pcopt::bench {

const char* const kRawCsvHeader =
    "algorithm,problem,n,m,oracle_mode,repeat,iteration,cumulative_queries,"
    "elapsed_seconds,f_value,step_norm";
const char* const kSummaryCsvHeader =
    "checkpoint_queries,median_f,p30_f,p70_f,median_elapsed_seconds";

namespace {

using nlohmann::json;

constexpr std::uint64_t kX0Tag = 0x58300000000001ull;
constexpr std::uint64_t kOracleTag = 0x0AC1E000000002ull;
constexpr std::uint64_t kMasterTag = 0x3A57E000000003ull;

[[noreturn]] void fail_key(const std::string& what, const std::string& key) {
  throw ConfigError("config error: " + what + " \"" + key + "\"");
}

void reject_unknown_keys(const json& obj, const std::string& section,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known |= (it.key() == k);
    if (!known) {
      fail_key("unknown key",
               section.empty() ? it.key() : section + "." + it.key());
    }
  }
}

const json& require_key(const json& obj, const std::string& section,
                        const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail_key("missing key",
             section.empty() ? key : section + "." + std::string(key));
  }
  return *it;
}

template <typename T>
T value_as(const json& v, const std::string& path) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    fail_key("invalid value for", path);
  }
}

// Shortest round-trip decimal rendering, so identical doubles always print
// identically.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double nearest_rank(const std::vector<double>& sorted, double percentile) {
  const std::size_t n = sorted.size();
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(percentile / 100.0 * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ConfigError("config error: input is not a JSON object");
  }
  reject_unknown_keys(root, "", {"problem", "oracle", "algorithm", "budget",
                                 "repeats", "output_path"});

  ExperimentConfig cfg;

  const json& problem = require_key(root, "", "problem");
  if (!problem.is_object()) fail_key("invalid value for", "problem");
  reject_unknown_keys(problem, "problem", {"name", "n", "seed"});
  cfg.problem.name = value_as<std::string>(require_key(problem, "problem", "name"),
                                           "problem.name");
  if (cfg.problem.name != "quadratic" && cfg.problem.name != "rosenbrock") {
    fail_key("invalid value for", "problem.name");
  }
  cfg.problem.n = value_as<int>(require_key(problem, "problem", "n"), "problem.n");
  if (cfg.problem.n < 1 || (cfg.problem.name == "rosenbrock" && cfg.problem.n < 2)) {
    fail_key("invalid value for", "problem.n");
  }
  if (problem.contains("seed")) {
    cfg.problem.seed = value_as<std::uint64_t>(problem["seed"], "problem.seed");
  }

  const json& oracle = require_key(root, "", "oracle");
  if (!oracle.is_object()) fail_key("invalid value for", "oracle");
  reject_unknown_keys(oracle, "oracle", {"mode", "kappa", "mu", "delta0", "seed"});
  cfg.oracle.mode =
      value_as<std::string>(require_key(oracle, "oracle", "mode"), "oracle.mode");
  if (cfg.oracle.mode != "deterministic" && cfg.oracle.mode != "stochastic") {
    fail_key("invalid value for", "oracle.mode");
  }
  if (cfg.oracle.mode == "stochastic") {
    cfg.oracle.kappa =
        value_as<double>(require_key(oracle, "oracle", "kappa"), "oracle.kappa");
    cfg.oracle.mu = value_as<double>(require_key(oracle, "oracle", "mu"), "oracle.mu");
    cfg.oracle.delta0 =
        value_as<double>(require_key(oracle, "oracle", "delta0"), "oracle.delta0");
  }
  if (oracle.contains("seed")) {
    cfg.oracle.seed = value_as<std::uint64_t>(oracle["seed"], "oracle.seed");
  }

  const json& algorithm = require_key(root, "", "algorithm");
  if (!algorithm.is_object()) fail_key("invalid value for", "algorithm");
  reject_unknown_keys(algorithm, "algorithm", {"name", "m", "eta", "delta", "workers"});
  cfg.algorithm.name = value_as<std::string>(
      require_key(algorithm, "algorithm", "name"), "algorithm.name");
  if (cfg.algorithm.name != "blockcd" && cfg.algorithm.name != "nelder-mead") {
    fail_key("invalid value for", "algorithm.name");
  }
  if (cfg.algorithm.name == "blockcd") {
    cfg.algorithm.m =
        value_as<int>(require_key(algorithm, "algorithm", "m"), "algorithm.m");
    cfg.algorithm.eta = value_as<double>(require_key(algorithm, "algorithm", "eta"),
                                         "algorithm.eta");
    if (cfg.algorithm.m < 1 || cfg.algorithm.m > cfg.problem.n) {
      fail_key("invalid value for", "algorithm.m");
    }
    if (!(cfg.algorithm.eta > 0.0)) fail_key("invalid value for", "algorithm.eta");
  }
  if (algorithm.contains("delta")) {
    cfg.algorithm.delta = value_as<double>(algorithm["delta"], "algorithm.delta");
    if (!(cfg.algorithm.delta > 0.0 && cfg.algorithm.delta <= 1.0)) {
      fail_key("invalid value for", "algorithm.delta");
    }
  }
  if (algorithm.contains("workers")) {
    cfg.algorithm.workers = value_as<int>(algorithm["workers"], "algorithm.workers");
    if (cfg.algorithm.workers < 1) fail_key("invalid value for", "algorithm.workers");
  }

  const json& budget = require_key(root, "", "budget");
  if (!budget.is_object()) fail_key("invalid value for", "budget");
  reject_unknown_keys(budget, "budget", {"max_queries", "max_iterations", "target_gap"});
  if (budget.contains("max_queries")) {
    cfg.budget.max_queries =
        value_as<std::uint64_t>(budget["max_queries"], "budget.max_queries");
  }
  if (budget.contains("max_iterations")) {
    cfg.budget.max_iterations =
        value_as<std::uint64_t>(budget["max_iterations"], "budget.max_iterations");
  }
  if (budget.contains("target_gap")) {
    cfg.budget.target_gap = value_as<double>(budget["target_gap"], "budget.target_gap");
  }
  if (!cfg.budget.max_queries && !cfg.budget.max_iterations && !cfg.budget.target_gap) {
    fail_key("missing key", "budget.max_queries");
  }

  cfg.repeats = value_as<int>(require_key(root, "", "repeats"), "repeats");
  if (cfg.repeats < 1) fail_key("invalid value for", "repeats");
  cfg.output_path =
      value_as<std::string>(require_key(root, "", "output_path"), "output_path");
  return cfg;
}

ExperimentConfig load_config(const std::string& path,
                             const std::optional<std::uint64_t>& seed_override,
                             const std::optional<std::string>& output_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg = parse_config(buffer.str());
  if (seed_override) {
    cfg.problem.seed = *seed_override;
    cfg.oracle.seed = *seed_override;
  }
  if (output_override) cfg.output_path = *output_override;
  return cfg;
}

std::vector<std::uint64_t> power_of_two_checkpoints(std::uint64_t limit) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t c = 1; c <= limit; c *= 2) {
    cps.push_back(c);
    if (c > limit / 2) break;  // avoid overflow
  }
  return cps;
}

std::vector<SummaryRow> summarize(
    const std::vector<std::vector<IterationRecord>>& repeats,
    const std::vector<std::uint64_t>& checkpoints) {
  if (repeats.empty()) throw ArgumentError("summarize: no repeats");
  for (const auto& r : repeats) {
    if (r.empty()) throw ArgumentError("summarize: a repeat has no records");
  }

  std::vector<SummaryRow> rows;
  rows.reserve(checkpoints.size());
  std::vector<double> fs, es;
  for (std::uint64_t cp : checkpoints) {
    fs.clear();
    es.clear();
    for (const auto& records : repeats) {
      // last record at or before the checkpoint; records are ordered by
      // cumulative query count
      const IterationRecord* last = nullptr;
      for (const auto& rec : records) {
        if (rec.cumulative_queries <= cp) {
          last = &rec;
        } else {
          break;
        }
      }
      if (last) {
        fs.push_back(last->f_value);
        es.push_back(last->elapsed_seconds);
      }
    }
    if (fs.empty()) continue;
    std::sort(fs.begin(), fs.end());
    std::sort(es.begin(), es.end());
    rows.push_back({cp, nearest_rank(fs, 50.0), nearest_rank(fs, 30.0),
                    nearest_rank(fs, 70.0), nearest_rank(es, 50.0)});
  }
  return rows;
}

namespace {

Objective build_objective(const ProblemConfig& p) {
  if (p.name == "quadratic") return make_quadratic(p.n, p.seed);
  return make_rosenbrock(p.n);
}

ComparisonOracle build_oracle(const Objective& obj, const OracleConfig& o,
                              std::uint64_t repeat) {
  if (o.mode == "deterministic") return ComparisonOracle(obj);
  return ComparisonOracle(obj, StochasticParams{o.kappa, o.mu, o.delta0},
                          hash_combine(hash_combine(o.seed, kOracleTag), repeat));
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const Objective objective = build_objective(config.problem);
  const int n = config.problem.n;

  ExperimentOutput out;
  out.raw_path = config.output_path + ".raw.csv";
  out.summary_path = config.output_path + ".summary.csv";

  std::ofstream raw(out.raw_path);
  if (!raw) throw IoError("cannot write " + out.raw_path);
  raw << kRawCsvHeader << "\n";

  const int csv_m = config.algorithm.name == "blockcd" ? config.algorithm.m : 0;
  std::vector<std::vector<IterationRecord>> all_records;
  all_records.reserve(static_cast<std::size_t>(config.repeats));

  for (int repeat = 0; repeat < config.repeats; ++repeat) {
    const std::uint64_t r = static_cast<std::uint64_t>(repeat);
    SplitMix64 x0_rng(hash_combine(hash_combine(config.problem.seed, kX0Tag), r));
    Point x0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x0[static_cast<std::size_t>(i)] = x0_rng.uniform(-2.0, 2.0);

    ComparisonOracle oracle = build_oracle(objective, config.oracle, r);
    oracle.set_query_budget(config.budget.max_queries);

    Trajectory trajectory;
    if (config.algorithm.name == "blockcd") {
      BlockCDConfig bc;
      bc.m = config.algorithm.m;
      bc.eta = config.algorithm.eta;
      bc.delta = config.algorithm.delta;
      bc.workers = config.algorithm.workers;
      bc.max_iterations = config.budget.max_iterations;
      bc.max_queries = config.budget.max_queries;
      bc.target_gap = config.budget.target_gap;
      bc.master_seed = hash_combine(hash_combine(config.problem.seed, kMasterTag), r);
      trajectory = blockcd_run(oracle, objective, bc, x0);
    } else {
      NelderMeadConfig nc;
      nc.max_iterations = config.budget.max_iterations;
      nc.max_queries = config.budget.max_queries;
      nc.target_gap = config.budget.target_gap;
      nc.master_seed = hash_combine(hash_combine(config.problem.seed, kMasterTag), r);
      trajectory = nelder_mead_run(oracle, objective, nc, x0);
    }

    for (const auto& rec : trajectory.records) {
      raw << config.algorithm.name << ',' << config.problem.name << ',' << n
          << ',' << csv_m << ',' << config.oracle.mode << ',' << repeat << ','
          << rec.iteration << ',' << rec.cumulative_queries << ','
          << format_double(rec.elapsed_seconds) << ','
          << format_double(rec.f_value) << ',' << format_double(rec.step_norm)
          << '\n';
    }
    all_records.push_back(std::move(trajectory.records));
  }
  raw.flush();
  if (!raw) throw IoError("failed writing " + out.raw_path);

  std::uint64_t limit = 0;
  if (config.budget.max_queries) {
    limit = *config.budget.max_queries;
  } else {
    for (const auto& records : all_records) {
      for (const auto& rec : records) limit = std::max(limit, rec.cumulative_queries);
    }
  }
  if (limit == 0) limit = 1;

  std::ofstream summary(out.summary_path);
  if (!summary) throw IoError("cannot write " + out.summary_path);
  summary << "# pcopt experiment summary\n";
  summary << "# problem=" << config.problem.name << " n=" << n
          << " seed=" << config.problem.seed << "\n";
  summary << "# oracle=" << config.oracle.mode;
  if (config.oracle.mode == "stochastic") {
    summary << " kappa=" << format_double(config.oracle.kappa)
            << " mu=" << format_double(config.oracle.mu)
            << " delta0=" << format_double(config.oracle.delta0)
            << " seed=" << config.oracle.seed;
  }
  summary << "\n";
  summary << "# algorithm=" << config.algorithm.name;
  if (config.algorithm.name == "blockcd") {
    summary << " m=" << config.algorithm.m
            << " eta=" << format_double(config.algorithm.eta)
            << " delta=" << format_double(config.algorithm.delta)
            << " workers=" << config.algorithm.workers;
  }
  summary << " repeats=" << config.repeats << "\n";
  summary << kSummaryCsvHeader << "\n";
  for (const SummaryRow& row :
       summarize(all_records, power_of_two_checkpoints(limit))) {
    summary << row.checkpoint_queries << ',' << format_double(row.median_f)
            << ',' << format_double(row.p30_f) << ','
            << format_double(row.p70_f) << ','
            << format_double(row.median_elapsed_seconds) << '\n';
  }
  summary.flush();
  if (!summary) throw IoError("failed writing " + out.summary_path);
  return out;
}

std::string format_bounds(const theory::TheoreticalBounds& b) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "gamma=%.6f\nepsilon=%.6g\nt0=%" PRId64
                "\nk0=%.6g\ndeterministic_budget=%.6g\n",
                b.gamma, b.epsilon, b.t0, b.k0, b.deterministic_budget);
  return buf;
}

}  // namespace pcopt::bench
