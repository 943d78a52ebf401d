#pragma once

#include <json.hpp>

#include "cavsim/harness/config.hpp"

namespace cavsim::harness {

struct RunnerOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::optional<int> threads_override;
  std::optional<std::string> format_override;
};

struct RunResult {
  std::string data_file;
  std::string manifest_file;
  nlohmann::json manifest;
  TimeSeries series;
};

// Executes one experiment: integrates, writes the time-series file and its
// manifest (config echo, effective seed, wall clock, convergence diagnostics,
// warnings). On failure partially written files are removed and the exception
// propagates.
RunResult run_experiment(const ExperimentConfig& config, const RunnerOptions& options = {});

void write_csv(const std::string& path, const TimeSeries& series);
void write_series_json(const std::string& path, const TimeSeries& series);

}  // namespace cavsim::harness
