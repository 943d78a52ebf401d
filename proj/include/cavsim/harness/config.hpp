#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavsim/gates.hpp"

namespace cavsim::harness {

// Declarative description of one run. All rates are in units of g (g = 1
// internally, times in 1/g); the JSON schema is documented in the README.
struct OutputSpec {
  std::string stem = "run";
  std::string format = "csv";  // csv | json
};

struct ExperimentConfig {
  std::string name = "run";
  SystemParams params;
  std::string initial_state = "bell_plus";
  Solver solver = Solver::full_unitary;
  std::optional<double> t_final;  // exactly one of t_final / n_gates
  std::optional<int> n_gates;
  int n_samples = 500;
  std::optional<int> n_traj;           // mcwf only
  std::optional<std::uint64_t> seed;   // mcwf only
  std::vector<std::string> observables;
  FidelityReference fidelity_reference = FidelityReference::effective_evolution;
  OutputSpec output;
};

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string message;
  int line = 0;  // 1-based line in the config text; 0 when not tied to one

  std::string format(const std::string& file = "") const;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Parses and validates a JSON config. Never runs dynamics. On success (no
// error diagnostics) *out is filled; warnings may still be present.
std::vector<Diagnostic> validate_config_text(const std::string& text, ExperimentConfig* out);

// Convenience wrapper: reads the file and throws std::runtime_error listing
// the diagnostics when validation fails.
ExperimentConfig load_config_file(const std::string& path);

// Channels repeat_gate produces; n_gates runs may only request these.
std::vector<std::string> gate_run_channels();

// Channels available for plain t_final runs.
std::vector<std::string> known_channels();

std::string config_to_json_text(const ExperimentConfig& config);

}  // namespace cavsim::harness
