#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cavsim/harness/presets.hpp"
#include "cavsim/harness/runner.hpp"
#include "cavsim/version.hpp"

namespace {

using namespace cavsim;
using namespace cavsim::harness;

std::string default_out_dir() {
  if (const char* env = std::getenv("CAVSIM_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

int run_configs(const std::vector<ExperimentConfig>& configs, const RunnerOptions& options) {
  for (const auto& cfg : configs) {
    try {
      const RunResult result = run_experiment(cfg, options);
      std::cout << "wrote " << result.data_file << " and " << result.manifest_file << "\n";
      for (const auto& w : result.manifest.at("warnings")) {
        std::cout << "  warning: " << w.get<std::string>() << "\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "run '" << cfg.name << "' failed: " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cavsim: two three-level ions in a strongly detuned optical cavity - effective "
      "Hamiltonians, control-phase/CNOT gates and open-system dynamics"};
  app.set_version_flag("--version", std::string(kArtifactVersion));
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute an experiment config or a preset");
  std::string config_path;
  std::string preset_name;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  std::string format;
  run_cmd->add_option("config", config_path, "JSON experiment config");
  run_cmd->add_option("--preset", preset_name, "named preset (see list-presets)");
  run_cmd->add_option("--out-dir", out_dir,
                      "output directory (default: $CAVSIM_OUT_DIR or '.')");
  run_cmd
      ->add_option("--seed", seed, "override the RNG seed (mcwf runs)")
      ->each([&](const std::string&) { seed_given = true; });
  run_cmd->add_option("--threads", threads, "trajectory worker threads (mcwf runs)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--format", format, "output format override")
      ->check(CLI::IsMember({"csv", "json"}));

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  std::string validate_path;
  validate_cmd->add_option("config", validate_path, "JSON experiment config")->required();

  // list-presets
  app.add_subcommand("list-presets", "Show the built-in experiment presets");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list-presets")) {
    std::cout << format_preset_listing();
    return 0;
  }

  if (app.got_subcommand("validate")) {
    std::ifstream in(validate_path);
    if (!in) {
      std::cerr << "error: cannot open '" << validate_path << "'\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto diags = validate_config_text(buffer.str(), nullptr);
    for (const auto& d : diags) std::cout << d.format(validate_path) << "\n";
    if (has_errors(diags)) return 1;
    std::cout << "ok: " << validate_path << "\n";
    return 0;
  }

  // run
  RunnerOptions options;
  options.out_dir = out_dir;
  if (seed_given) options.seed_override = seed;
  if (threads != 1) options.threads_override = threads;
  if (!format.empty()) options.format_override = format;

  std::vector<ExperimentConfig> configs;
  if (!preset_name.empty()) {
    const Preset* preset = find_preset(preset_name);
    if (preset == nullptr) {
      std::cerr << "error: unknown preset '" << preset_name
                << "' (try: cavsim list-presets)\n";
      return 2;
    }
    configs = preset->runs;
  } else if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open '" << config_path << "'\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ExperimentConfig cfg;
    const auto diags = validate_config_text(buffer.str(), &cfg);
    bool failed = has_errors(diags);
    for (const auto& d : diags) {
      (failed ? std::cerr : std::cout) << d.format(config_path) << "\n";
    }
    if (failed) return 2;
    configs.push_back(std::move(cfg));
  } else {
    std::cerr << "error: run needs a config file or --preset\n";
    return 2;
  }
  return run_configs(configs, options);
}
