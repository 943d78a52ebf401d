#include "cavsim/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cavsim/version.hpp"

namespace cavsim::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> sample_times(double t_final, int n_samples) {
  std::vector<double> times(n_samples + 1);
  for (int k = 0; k <= n_samples; ++k) times[k] = t_final * k / n_samples;
  return times;
}

ObservableSet build_observables(const std::vector<std::string>& names, const SpaceLayout& layout,
                                const HamiltonianSet& hamiltonians, const Vector& psi0,
                                const std::vector<double>& times, FidelityReference ref_kind,
                                double t_gate) {
  ObservableSet obs;
  for (const auto& name : names) {
    if (name == "p_zero_photons") {
      obs.push_back(zero_photon_probability(layout));
    } else if (name == "fidelity") {
      std::vector<Vector> refs(times.size());
      if (ref_kind == FidelityReference::effective_evolution) {
        const UnitaryPropagator ideal(hamiltonians.h_gate);
        for (std::size_t k = 0; k < times.size(); ++k) refs[k] = ideal.at(psi0, times[k]);
      } else {
        const Matrix cz = ideal_control_phase(layout).mat;
        for (std::size_t k = 0; k < times.size(); ++k) {
          const int completed = static_cast<int>(std::floor(times[k] / t_gate + 1e-9));
          Vector ref = psi0;
          for (int gate = 0; gate < completed; ++gate) ref = cz * ref;
          refs[k] = std::move(ref);
        }
      }
      obs.push_back(Observable::reference_fidelity("fidelity", std::move(refs)));
    } else if (name.rfind("pop_", 0) == 0) {
      const auto state = resolve_state_label(name.substr(4), layout);
      if (!state) throw std::invalid_argument("unknown observable '" + name + "'");
      obs.push_back(Observable::population(name, *state));
    } else {
      throw std::invalid_argument("unknown observable '" + name + "'");
    }
  }
  return obs;
}

TimeSeries select_channels(const TimeSeries& series, const std::vector<std::string>& names) {
  TimeSeries out;
  out.times = series.times;
  for (const auto& name : names) out.channels.push_back(series.channel(name));
  return out;
}

struct ConvergenceCheck {
  std::string method;
  double window = 0.0;
  double max_delta = 0.0;
  bool pass = true;
  json extra;
};

json to_json(const ConvergenceCheck& check) {
  json j{{"method", check.method},
         {"window", check.window},
         {"max_observable_delta", check.max_delta},
         {"pass", check.pass}};
  for (auto& [k, v] : check.extra.items()) j[k] = v;
  return j;
}

// Truncation probe: the run's observables under closed dynamics at the
// configured cutoff and at twice the cutoff must agree to 1e-6.
ConvergenceCheck fock_cutoff_check(const ExperimentConfig& cfg, double t_final, double t_gate) {
  ConvergenceCheck check;
  check.method = "closed_unitary_probe";
  check.window = t_final;
  const int n_check = std::min(cfg.n_samples, 200);
  const auto times = sample_times(t_final, n_check);

  std::vector<std::vector<double>> results;
  for (int factor : {1, 2}) {
    SystemParams params = cfg.params;
    params.fock_cutoff = cfg.params.fock_cutoff * factor;
    const SpaceLayout layout = params.layout();
    const HamiltonianSet hamiltonians = build_hamiltonians(params, layout);
    const Vector psi0 = *resolve_state_label(cfg.initial_state, layout);
    const ObservableSet obs = build_observables(cfg.observables, layout, hamiltonians, psi0,
                                                times, cfg.fidelity_reference, t_gate);
    const OperatorMatrix h =
        cfg.solver == Solver::effective
            ? hamiltonians.h_gate
            : OperatorMatrix(hamiltonians.h_full.mat + hamiltonians.h_drive.mat, true);
    const TimeSeries ts =
        evolve_unitary(h, QuantumState::ket(psi0), t_final, n_check, obs);
    std::vector<double> flat;
    for (const auto& ch : ts.channels) {
      flat.insert(flat.end(), ch.values.begin(), ch.values.end());
    }
    results.push_back(std::move(flat));
  }
  for (std::size_t i = 0; i < results[0].size(); ++i) {
    check.max_delta = std::max(check.max_delta, std::abs(results[0][i] - results[1][i]));
  }
  check.pass = check.max_delta < 1e-6;
  check.extra = json{{"fock_cutoff", cfg.params.fock_cutoff},
                     {"fock_cutoff_doubled", 2 * cfg.params.fock_cutoff}};
  return check;
}

ConvergenceCheck dt_halving_check(const ExperimentConfig& cfg, const SpaceLayout& layout,
                                  const HamiltonianSet& hamiltonians,
                                  const JumpOperatorSet& jumps, const Vector& psi0,
                                  double t_final, double t_gate, double dt) {
  ConvergenceCheck check;
  if (cfg.solver == Solver::effective || cfg.solver == Solver::full_unitary) {
    check.method = "exact_eigendecomposition";
    check.window = t_final;
    check.max_delta = 0.0;
    check.pass = true;
    return check;
  }
  const double window = std::min(t_final, std::max(t_final / 50.0, 200.0 * dt));
  const int n_check = 20;
  const auto times = sample_times(window, n_check);
  const ObservableSet obs = build_observables(cfg.observables, layout, hamiltonians, psi0, times,
                                              cfg.fidelity_reference, t_gate);
  const OperatorMatrix h(hamiltonians.h_full.mat + hamiltonians.h_drive.mat, true);
  check.window = window;
  check.extra = json{{"dt", dt}};
  if (cfg.solver == Solver::lindblad) {
    check.method = "rk4_dt_halving";
    check.max_delta = lindblad_dt_halving_delta(h, jumps, QuantumState::ket(psi0), window,
                                                n_check, obs, dt);
  } else {
    check.method = "nojump_drift_dt_halving";
    check.max_delta =
        mcwf_nojump_dt_delta(h, jumps, QuantumState::ket(psi0), window, n_check, obs, dt);
  }
  check.pass = check.max_delta < 1e-6;
  return check;
}

void format_value(std::string& row, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  row += buf;
}

}  // namespace

void write_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  std::string header = "time";
  for (const auto& ch : series.channels) {
    header += "," + ch.name;
    if (!ch.stderr_values.empty()) header += "," + ch.name + "_stderr";
  }
  out << header << "\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    std::string row;
    format_value(row, series.times[k]);
    for (const auto& ch : series.channels) {
      row += ',';
      format_value(row, ch.values[k]);
      if (!ch.stderr_values.empty()) {
        row += ',';
        format_value(row, ch.stderr_values[k]);
      }
    }
    out << row << "\n";
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void write_series_json(const std::string& path, const TimeSeries& series) {
  json j;
  j["schema_version"] = 1;
  j["times"] = series.times;
  json channels = json::object();
  for (const auto& ch : series.channels) {
    channels[ch.name] = ch.values;
    if (!ch.stderr_values.empty()) channels[ch.name + "_stderr"] = ch.stderr_values;
  }
  j["channels"] = channels;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

RunResult run_experiment(const ExperimentConfig& config, const RunnerOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  config.params.validate();

  const int threads = options.threads_override.value_or(1);
  const std::string format = options.format_override.value_or(config.output.format);
  std::optional<std::uint64_t> seed = config.seed;
  if (options.seed_override) seed = *options.seed_override;

  const SpaceLayout layout = config.params.layout();
  const HamiltonianSet hamiltonians = build_hamiltonians(config.params, layout);
  const JumpOperatorSet jumps = jump_operators(config.params, layout);
  const auto psi0_vec = resolve_state_label(config.initial_state, layout);
  if (!psi0_vec) {
    throw std::invalid_argument("unresolvable initial_state '" + config.initial_state + "'");
  }
  const QuantumState psi0 = QuantumState::ket(*psi0_vec);

  const bool needs_gate_time =
      config.n_gates.has_value() ||
      config.fidelity_reference == FidelityReference::stroboscopic;
  const double t_gate = needs_gate_time ? control_phase_duration(config.params) : 0.0;
  const double t_final = config.n_gates ? *config.n_gates * t_gate : *config.t_final;
  const double dt = default_timestep(config.params);

  std::vector<std::string> warnings = config.params.regime_warnings();

  // Integrate.
  TimeSeries series;
  json solver_info;
  OpenSystemOptions open_options;
  open_options.threads = threads;
  if (config.n_traj) open_options.n_traj = *config.n_traj;
  if (seed) open_options.seed = *seed;

  if (config.n_gates) {
    TrajectoryEnsemble ensemble;
    LindbladRunInfo lindblad_info;
    series = repeat_gate(config.params, psi0, *config.n_gates, config.solver, config.n_samples,
                         open_options, config.fidelity_reference,
                         config.solver == Solver::mcwf ? &ensemble : nullptr,
                         config.solver == Solver::lindblad ? &lindblad_info : nullptr);
    series = select_channels(series, config.observables);
    if (config.solver == Solver::mcwf) {
      std::size_t total_jumps = 0;
      for (const auto& records : ensemble.jump_records) total_jumps += records.size();
      solver_info = {{"method", "mcwf"},
                     {"dt", dt},
                     {"n_traj", ensemble.n_traj},
                     {"total_jumps", total_jumps},
                     {"max_step_jump_probability",
                      ensemble.observed_max_step_jump_probability}};
      if (ensemble.observed_max_step_jump_probability > 0.01) {
        warnings.push_back("mcwf per-step jump probability exceeded 0.01; consider a smaller dt");
      }
    } else if (config.solver == Solver::lindblad) {
      solver_info = {{"method", "lindblad_rk4"},
                     {"dt", lindblad_info.dt},
                     {"steps", lindblad_info.steps},
                     {"max_trace_drift", lindblad_info.max_trace_drift},
                     {"max_hermiticity_error", lindblad_info.max_hermiticity_error},
                     {"min_eigenvalue", lindblad_info.min_eigenvalue}};
    } else {
      solver_info = {{"method", "unitary_eigendecomposition"}};
    }
  } else {
    const auto times = sample_times(t_final, config.n_samples);
    const ObservableSet obs = build_observables(config.observables, layout, hamiltonians,
                                                *psi0_vec, times, config.fidelity_reference,
                                                t_gate);
    switch (config.solver) {
      case Solver::effective:
        series = evolve_unitary(hamiltonians.h_gate, psi0, t_final, config.n_samples, obs);
        solver_info = {{"method", "unitary_eigendecomposition"}};
        break;
      case Solver::full_unitary: {
        const OperatorMatrix h(hamiltonians.h_full.mat + hamiltonians.h_drive.mat, true);
        series = evolve_unitary(h, psi0, t_final, config.n_samples, obs);
        solver_info = {{"method", "unitary_eigendecomposition"}};
        break;
      }
      case Solver::lindblad: {
        const OperatorMatrix h(hamiltonians.h_full.mat + hamiltonians.h_drive.mat, true);
        LindbladOptions lopt;
        lopt.dt = dt;
        LindbladRunInfo info;
        series = evolve_lindblad(h, jumps, psi0, t_final, config.n_samples, obs, lopt, &info);
        solver_info = {{"method", "lindblad_rk4"},
                       {"dt", info.dt},
                       {"steps", info.steps},
                       {"max_trace_drift", info.max_trace_drift},
                       {"max_hermiticity_error", info.max_hermiticity_error},
                       {"min_eigenvalue", info.min_eigenvalue}};
        break;
      }
      case Solver::mcwf: {
        const OperatorMatrix h(hamiltonians.h_full.mat + hamiltonians.h_drive.mat, true);
        McwfOptions mopt;
        mopt.dt = dt;
        mopt.threads = threads;
        TrajectoryEnsemble ensemble =
            evolve_mcwf(h, jumps, psi0, t_final, config.n_samples, open_options.n_traj,
                        open_options.seed, obs, mopt);
        series = std::move(ensemble.mean);
        std::size_t total_jumps = 0;
        for (const auto& records : ensemble.jump_records) total_jumps += records.size();
        solver_info = {{"method", "mcwf"},
                       {"dt", dt},
                       {"n_traj", ensemble.n_traj},
                       {"total_jumps", total_jumps},
                       {"max_step_jump_probability",
                        ensemble.observed_max_step_jump_probability}};
        if (ensemble.observed_max_step_jump_probability > 0.01) {
          warnings.push_back(
              "mcwf per-step jump probability exceeded 0.01; consider a smaller dt");
        }
        break;
      }
    }
  }
  series.validate();

  // Convergence diagnostics for the manifest.
  const ConvergenceCheck fock = fock_cutoff_check(config, t_final, t_gate);
  const ConvergenceCheck halving = dt_halving_check(config, layout, hamiltonians, jumps,
                                                    *psi0_vec, t_final, t_gate, dt);

  // Emit files; on failure remove the partial outputs.
  fs::create_directories(options.out_dir);
  const std::string extension = format == "csv" ? ".csv" : ".json";
  const fs::path data_path = fs::path(options.out_dir) / (config.output.stem + extension);
  const fs::path manifest_path =
      fs::path(options.out_dir) / (config.output.stem + ".manifest.json");

  RunResult result;
  try {
    if (format == "csv") {
      write_csv(data_path.string(), series);
    } else {
      write_series_json(data_path.string(), series);
    }

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    json manifest;
    manifest["schema_version"] = 1;
    manifest["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
    manifest["run_name"] = config.name;
    manifest["config"] = json::parse(config_to_json_text(config));
    manifest["effective"] = {{"threads", threads},
                             {"format", format},
                             {"t_final", t_final},
                             {"n_rows", series.times.size()}};
    manifest["effective"]["seed"] = seed ? json(*seed) : json(nullptr);
    manifest["solver_info"] = solver_info;
    manifest["convergence"] = {{"fock_cutoff_check", to_json(fock)},
                               {"dt_halving_check", to_json(halving)}};
    manifest["warnings"] = warnings;
    manifest["wall_clock_seconds"] = elapsed.count();
    manifest["data_file"] = data_path.filename().string();

    std::ofstream mout(manifest_path, std::ios::binary);
    if (!mout) throw std::runtime_error("cannot open '" + manifest_path.string() + "'");
    mout << manifest.dump(2) << "\n";
    if (!mout) throw std::runtime_error("failed writing '" + manifest_path.string() + "'");

    result.data_file = data_path.string();
    result.manifest_file = manifest_path.string();
    result.manifest = std::move(manifest);
    result.series = std::move(series);
  } catch (...) {
    std::error_code ec;
    fs::remove(data_path, ec);
    fs::remove(manifest_path, ec);
    throw;
  }
  return result;
}

}  // namespace cavsim::harness
