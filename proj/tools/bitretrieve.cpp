// bitretrieve: command line front end for the experiments, diagnostics and theory tables.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "bitretrieve/diagnostics.hpp"
#include "bitretrieve/experiments.hpp"

namespace {

using namespace bitretrieve;

constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) std::cout << text;
  else write_text_file(path, text);
}

void emit_sidecar(const std::string& text, const std::string& path, const char* suffix) {
  if (!path.empty()) write_text_file(path + suffix, text);
}

int run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::Pointwise: {
      const auto result = run_pointwise(cfg);
      emit(format_csv(result.records), cfg.output_path);
      emit_sidecar(format_bound_csv(result.bound, cfg.bound_D), cfg.output_path, ".bound.csv");
      return 0;
    }
    case ExperimentKind::Uniform: {
      const auto result = run_uniform(cfg);
      emit(format_csv(result.records), cfg.output_path);
      emit_sidecar(format_uniform_summary_csv(result.summary, cfg.inputs, cfg.bound_D), cfg.output_path,
                   ".summary.csv");
      return 0;
    }
    case ExperimentKind::Noise: {
      const auto result = run_noise(cfg);
      emit(format_csv(result.records), cfg.output_path);
      emit_sidecar(format_noise_csv(result.details), cfg.output_path, ".noise.csv");
      if (!result.all_hold) {
        std::cerr << "noise: noisy error exceeded the bound on an applicable trial\n";
        return kExitCheckFailure;
      }
      return 0;
    }
    case ExperimentKind::Diagnostics: {
      const auto checks = diagnostics::run_diagnostics(cfg);
      emit(diagnostics::format_report(checks), cfg.output_path);
      bool ok = true;
      for (const auto& c : checks) {
        if (!c.passed) {
          std::cerr << "diagnostics: check failed: " << c.name << '\n';
          ok = false;
        }
      }
      return ok ? 0 : kExitCheckFailure;
    }
    case ExperimentKind::Theory:
      emit(print_theory(cfg.field, cfg.n, cfg.delta, cfg.bound_D, cfg.tau), cfg.output_path);
      return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-bit phase retrieval experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> overrides;
  const char* const keys[] = {"experiment", "field", "n",         "m_grid",     "trials", "inputs", "delta",
                              "bound_D",    "tau",   "flip_mode", "master_seed", "threads"};

  auto* experiment = app.add_subcommand("experiment", "Run the experiment named by the config");
  auto* theory = app.add_subcommand("theory", "Print theory constants as key=value lines");
  auto* diagnostics = app.add_subcommand("diagnostics", "Run the distributional checks");
  for (auto* sub : {experiment, theory, diagnostics}) {
    sub->add_option("--config", config_path, "Config file (key = value lines)");
    sub->add_option_function<std::string>(
        "--seed", [&](const std::string& v) { overrides["master_seed"] = v; }, "Master seed");
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& v) { overrides["output_path"] = v; }, "Output path (default stdout)");
    for (const char* key : keys) {
      const std::string k = key;
      sub->add_option_function<std::string>(
          "--" + k, [&overrides, k](const std::string& v) { overrides[k] = v; }, "Override config key " + k);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    if (theory->parsed()) cfg.experiment = ExperimentKind::Theory;
    if (diagnostics->parsed()) cfg.experiment = ExperimentKind::Diagnostics;
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    return run_experiment(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}
