// pcopt command line: experiment runner and bound calculator on top of the
// pcopt C API.
//
//   pcopt run    --config config.json [--seed N] [--output PATH]
//   pcopt bounds --sigma S --L L --n N --m M --eta E --gap G
//
// Exit codes: 0 success, 1 configuration/argument error, 2 I/O error.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "pcopt/pcopt.h"

namespace {

int exit_code_for(pcopt_status status) {
  switch (status) {
    case PCOPT_OK:
      return 0;
    case PCOPT_ERROR_IO:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivative-free optimization through a pairwise-comparison oracle"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  std::uint64_t seed_override = 0;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "experiment config file")->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_override, "override problem and oracle seeds");
  CLI::Option* output_opt =
      run->add_option("--output", output_override, "override the output path prefix");

  double sigma = 0, l = 0, eta = 0, gap = 0;
  int n = 0, m = 0;
  CLI::App* bounds = app.add_subcommand("bounds", "print the theoretical constants");
  bounds->add_option("--sigma", sigma, "strong-convexity constant")->required();
  bounds->add_option("--L", l, "strong-smoothness constant")->required();
  bounds->add_option("--n", n, "problem dimension")->required();
  bounds->add_option("--m", m, "coordinates per iteration")->required();
  bounds->add_option("--eta", eta, "line-search accuracy")->required();
  bounds->add_option("--gap", gap, "initial optimality gap f(x0) - f*")->required();

  // Command-line mistakes are configuration errors: exit 1, not CLI11's
  // default parse-error codes.
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (run->parsed()) {
    const std::uint64_t* seed = seed_opt->count() > 0 ? &seed_override : nullptr;
    const char* output = output_opt->count() > 0 ? output_override.c_str() : nullptr;
    char raw_path[4096] = {0};
    char summary_path[4096] = {0};
    const pcopt_status status =
        pcopt_run_experiment(config_path.c_str(), seed, output, raw_path,
                             sizeof(raw_path), summary_path, sizeof(summary_path));
    if (status != PCOPT_OK) {
      std::fprintf(stderr, "pcopt run: %s\n", pcopt_last_error());
      return exit_code_for(status);
    }
    std::printf("raw=%s\nsummary=%s\n", raw_path, summary_path);
    return 0;
  }

  char text[512] = {0};
  const pcopt_status status =
      pcopt_bounds_format(sigma, l, n, m, eta, gap, text, sizeof(text));
  if (status != PCOPT_OK) {
    std::fprintf(stderr, "pcopt bounds: %s\n", pcopt_last_error());
    return exit_code_for(status);
  }
  std::fputs(text, stdout);
  return 0;
}
