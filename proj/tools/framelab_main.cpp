#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framelab/config.hpp"
#include "framelab/errors.hpp"
#include "framelab/experiments.hpp"

// Exit codes: 0 on success, 1 when an experiment's built-in check fails,
// 2 for malformed configuration (file, flags, or parameter values).
int main(int argc, char** argv) {
  CLI::App app{
      "framelab: signal propagation on oscillator chains, radar-built "
      "inertial frames, causal-order checks, and quantum clock scales"};

  std::string config_path;
  std::string experiment;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::string output;
  bool list = false;

  app.add_option("config", config_path, "Config file of key = value lines");
  auto* exp_opt =
      app.add_option("-e,--experiment", experiment, "Experiment name instead of a config file");
  app.add_option("-s,--set", overrides, "Override or add key=value (repeatable)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (default 0)");
  auto* out_opt = app.add_option("-o,--output", output, "Directory for CSV artifacts");
  app.add_flag("--list", list, "List experiments and their parameter keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list) {
      for (const auto& [name, keys] : framelab::cli::experiment_registry()) {
        std::cout << name << ":";
        for (const std::string& key : keys) std::cout << " " << key;
        std::cout << "\n";
      }
      return 0;
    }

    framelab::cli::RunConfig config;
    if (!config_path.empty()) {
      if (*exp_opt)
        throw framelab::ConfigError("give a config file or --experiment, not both");
      config = framelab::cli::parse_config_file(config_path);
    } else if (*exp_opt) {
      if (framelab::cli::experiment_registry().count(experiment) == 0)
        throw framelab::ConfigError("unknown experiment '" + experiment + "'");
      config.experiment = experiment;
    } else {
      throw framelab::ConfigError("need a config file or --experiment (see --help)");
    }

    for (const std::string& assignment : overrides)
      framelab::cli::apply_override(config, assignment);
    if (*seed_opt) config.seed = seed;
    if (*out_opt) config.output = output;

    for (const std::string& path : framelab::cli::run_experiment(config))
      std::cout << path << "\n";
    return 0;
  } catch (const framelab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const framelab::ExperimentError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
