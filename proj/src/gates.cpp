#include "cavsim/gates.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "cavsim/fidelity.hpp"

namespace cavsim {

namespace {

constexpr double kSubspaceTol = 1e-6;
constexpr double kLevel3Tol = 1e-9;
constexpr int kLeakageSamples = 200;

QuantumState apply_full_space_unitary(const Matrix& u, const QuantumState& state) {
  if (state.kind() == QuantumState::Kind::ket) {
    return QuantumState::ket(u * state.amplitudes());
  }
  return QuantumState::density(u * state.density_matrix() * u.adjoint());
}

double diagonal_weight(const QuantumState& state,
                       const std::function<bool(const SpaceLayout::BasisLabel&)>& keep,
                       const SpaceLayout& layout) {
  double weight = 0.0;
  if (state.kind() == QuantumState::Kind::ket) {
    const Vector& psi = state.amplitudes();
    for (int i = 0; i < layout.total_dim(); ++i) {
      if (keep(layout.unindex(i))) weight += std::norm(psi(i));
    }
  } else {
    const Matrix& rho = state.density_matrix();
    for (int i = 0; i < layout.total_dim(); ++i) {
      if (keep(layout.unindex(i))) weight += rho(i, i).real();
    }
  }
  return weight;
}

void require_qubit_vacuum_support(const QuantumState& state, const SpaceLayout& layout,
                                  const char* where) {
  const double inside = diagonal_weight(
      state,
      [](const SpaceLayout::BasisLabel& l) {
        return l.ion1_level <= 2 && l.ion2_level <= 2 && l.n_photon == 0;
      },
      layout);
  if (1.0 - inside > kSubspaceTol) {
    throw std::invalid_argument(std::string(where) +
                                ": state has weight outside the qubit (x) vacuum subspace (" +
                                std::to_string(1.0 - inside) + " > 1e-6)");
  }
}

std::vector<std::pair<std::string, QuantumState>> probe_states(const SpaceLayout& layout) {
  std::vector<std::pair<std::string, QuantumState>> probes;
  for (const char* label : {"11", "12", "21", "22"}) {
    probes.emplace_back(label, QuantumState::ket(*resolve_state_label(label, layout)));
  }
  // Uniform superposition probes |s1 s2> with |+-> = (|1> +- |2>)/sqrt(2);
  // these expose the phase structure the computational probes miss.
  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      Vector v = Vector::Zero(layout.total_dim());
      v(layout.index(1, 1, 0)) = 0.5;
      v(layout.index(1, 2, 0)) = 0.5 * s2;
      v(layout.index(2, 1, 0)) = 0.5 * s1;
      v(layout.index(2, 2, 0)) = 0.5 * s1 * s2;
      std::string name = std::string(s1 > 0 ? "+" : "-") + (s2 > 0 ? "+" : "-");
      probes.emplace_back(name, QuantumState::ket(std::move(v)));
    }
  }
  return probes;
}

struct GateDynamics {
  SpaceLayout layout;
  HamiltonianSet hamiltonians;
  JumpOperatorSet jumps;
  double t_gate;
};

GateDynamics make_dynamics(const SystemParams& params) {
  params.validate();
  GateDynamics d{params.layout(), {}, {}, 0.0};
  d.hamiltonians = build_hamiltonians(params, d.layout);
  d.jumps = jump_operators(params, d.layout);
  d.t_gate = control_phase_duration(params);
  return d;
}

// Evolves a state through one control-phase window. leakage_out, when given,
// receives the largest probability of having at least one photon seen at the
// internal sample points.
QuantumState evolve_gate_window(const GateDynamics& d, const SystemParams& params,
                                const QuantumState& state, Solver solver,
                                const OpenSystemOptions& options, std::uint64_t seed,
                                double* leakage_out) {
  const int n_samples = leakage_out != nullptr ? kLeakageSamples : 1;
  ObservableSet obs{zero_photon_probability(d.layout)};
  const double dt = options.dt > 0.0 ? options.dt : default_timestep(params);

  QuantumState final_state = state;
  TimeSeries series;
  switch (solver) {
    case Solver::effective:
    case Solver::full_unitary: {
      const OperatorMatrix h =
          solver == Solver::effective
              ? d.hamiltonians.h_gate
              : OperatorMatrix(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
      const UnitaryPropagator prop(h);
      if (leakage_out != nullptr) {
        series.times.resize(n_samples + 1);
        Channel p0;
        p0.name = "p_zero_photons";
        p0.values.resize(n_samples + 1);
        const Observable zero_photons = obs.front();
        for (int k = 0; k <= n_samples; ++k) {
          const Vector psi = prop.at(state.amplitudes(), d.t_gate * k / n_samples);
          p0.values[k] = zero_photons.eval_ket(psi, k);
          series.times[k] = d.t_gate * k / n_samples;
        }
        series.channels.push_back(std::move(p0));
      }
      final_state = QuantumState::ket(prop.at(state.amplitudes(), d.t_gate));
      break;
    }
    case Solver::lindblad: {
      const OperatorMatrix h(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
      LindbladOptions lopt;
      lopt.dt = dt;
      LindbladRunInfo info;
      series = evolve_lindblad(h, d.jumps, state, d.t_gate, n_samples, obs, lopt, &info);
      final_state = QuantumState::density(std::move(info.final_density));
      break;
    }
    case Solver::mcwf: {
      const OperatorMatrix h(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
      McwfOptions mopt;
      mopt.dt = dt;
      mopt.threads = options.threads;
      TrajectoryEnsemble ensemble = evolve_mcwf(h, d.jumps, state, d.t_gate, n_samples,
                                                options.n_traj, seed, obs, mopt);
      series = std::move(ensemble.mean);
      final_state = QuantumState::density(std::move(ensemble.mean_final_density));
      break;
    }
  }
  if (leakage_out != nullptr) {
    double leakage = 0.0;
    for (double p0 : series.channel("p_zero_photons").values) {
      leakage = std::max(leakage, 1.0 - p0);
    }
    *leakage_out = leakage;
  }
  return final_state;
}

GateReport score_gate(const GateDynamics& d, const SystemParams& params,
                      const QuantumState& psi0, Solver solver, const OpenSystemOptions& options,
                      const Matrix& ideal_map,
                      const std::function<QuantumState(const QuantumState&, std::uint64_t)>&
                          run_sequence) {
  GateReport report{run_sequence(psi0, options.seed)};
  const QuantumState ideal_out = apply_full_space_unitary(ideal_map, psi0);
  report.state_fidelity = fidelity(report.final_state, ideal_out);

  double sum = 0.0;
  for (const auto& [name, probe] : probe_states(d.layout)) {
    const std::uint64_t probe_seed =
        options.seed + 1000003ull * (report.probe_fidelities.size() + 1);
    const QuantumState probe_out = run_sequence(probe, probe_seed);
    const QuantumState probe_ideal = apply_full_space_unitary(ideal_map, probe);
    const double f = fidelity(probe_out, probe_ideal);
    report.probe_fidelities.emplace_back(name, f);
    sum += f;
  }
  report.process_fidelity_proxy = sum / static_cast<double>(report.probe_fidelities.size());
  return report;
}

}  // namespace

const char* to_string(Solver solver) {
  switch (solver) {
    case Solver::effective:
      return "effective";
    case Solver::full_unitary:
      return "full_unitary";
    case Solver::lindblad:
      return "lindblad";
    case Solver::mcwf:
      return "mcwf";
  }
  return "unknown";
}

Solver solver_from_string(const std::string& name) {
  if (name == "effective") return Solver::effective;
  if (name == "full_unitary") return Solver::full_unitary;
  if (name == "lindblad") return Solver::lindblad;
  if (name == "mcwf") return Solver::mcwf;
  throw std::invalid_argument("unknown solver '" + name + "'");
}

double control_phase_duration(const SystemParams& params) {
  if (!(params.omega > 0.0)) {
    throw std::invalid_argument("control_phase_duration: omega must be > 0");
  }
  return std::numbers::pi / (std::sqrt(2.0) * params.omega);
}

GateSpec GateSpec::control_phase(const SystemParams& params, Solver solver) {
  GateSpec spec;
  spec.kind = Kind::control_phase;
  spec.duration = control_phase_duration(params);
  spec.solver = solver;
  return spec;
}

GateSpec GateSpec::hadamard(int ion) {
  GateSpec spec;
  spec.kind = Kind::hadamard;
  spec.ion = ion;
  spec.duration = 0.0;
  return spec;
}

GateSpec GateSpec::cnot(const SystemParams& params, int control, Solver solver) {
  GateSpec spec;
  spec.kind = Kind::cnot;
  spec.ion = control;
  spec.duration = control_phase_duration(params);
  spec.solver = solver;
  return spec;
}

OperatorMatrix ideal_control_phase(const SpaceLayout& layout) {
  Matrix m = Matrix::Identity(layout.total_dim(), layout.total_dim());
  for (int i = 0; i < layout.total_dim(); ++i) {
    const auto label = layout.unindex(i);
    if (label.ion1_level == 2 && label.ion2_level == 2) m(i, i) = -1.0;
  }
  return OperatorMatrix(std::move(m), true);
}

OperatorMatrix hadamard_operator(int ion, const SpaceLayout& layout) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix m = inv_sqrt2 * (sigma(ion, 1, 1, layout).mat + sigma(ion, 1, 2, layout).mat +
                          sigma(ion, 2, 1, layout).mat - sigma(ion, 2, 2, layout).mat);
  m += sigma(ion, 3, 3, layout).mat;
  return OperatorMatrix(std::move(m), true);
}

OperatorMatrix ideal_cnot(int control, const SpaceLayout& layout) {
  if (control != 1 && control != 2) {
    throw std::invalid_argument("ideal_cnot: control must be ion 1 or 2");
  }
  const int target = 3 - control;
  const Matrix h = hadamard_operator(target, layout).mat;
  return OperatorMatrix(h * ideal_control_phase(layout).mat * h, false);
}

GateReport apply_control_phase(const SystemParams& params, const QuantumState& psi0,
                               Solver solver, const OpenSystemOptions& options) {
  const GateDynamics d = make_dynamics(params);
  require_qubit_vacuum_support(psi0, d.layout, "apply_control_phase");

  double leakage = 0.0;
  bool first_run = true;
  auto run = [&](const QuantumState& in, std::uint64_t seed) {
    double* leak_ptr = first_run ? &leakage : nullptr;
    first_run = false;
    return evolve_gate_window(d, params, in, solver, options, seed, leak_ptr);
  };
  GateReport report =
      score_gate(d, params, psi0, solver, options, ideal_control_phase(d.layout).mat, run);
  report.photon_leakage = leakage;
  return report;
}

QuantumState apply_hadamard(int ion, const QuantumState& state, const SpaceLayout& layout) {
  if (ion != 1 && ion != 2) {
    throw std::invalid_argument("apply_hadamard: ion must be 1 or 2");
  }
  const double weight3 = diagonal_weight(
      state,
      [ion](const SpaceLayout::BasisLabel& l) {
        return (ion == 1 ? l.ion1_level : l.ion2_level) == 3;
      },
      layout);
  if (weight3 > kLevel3Tol) {
    throw std::invalid_argument("apply_hadamard: state has weight " + std::to_string(weight3) +
                                " on level 3 of ion " + std::to_string(ion));
  }
  return apply_full_space_unitary(hadamard_operator(ion, layout).mat, state);
}

GateReport apply_cnot(const SystemParams& params, int control, const QuantumState& psi0,
                      Solver solver, const OpenSystemOptions& options) {
  if (control != 1 && control != 2) {
    throw std::invalid_argument("apply_cnot: control must be ion 1 or 2");
  }
  const GateDynamics d = make_dynamics(params);
  require_qubit_vacuum_support(psi0, d.layout, "apply_cnot");
  const int target = 3 - control;
  const Matrix h_target = hadamard_operator(target, d.layout).mat;

  double leakage = 0.0;
  bool first_run = true;
  auto run = [&](const QuantumState& in, std::uint64_t seed) {
    double* leak_ptr = first_run ? &leakage : nullptr;
    first_run = false;
    // The basis rotations are ideal and instantaneous (drive off); they act
    // as the identity on level 3 and on the photon sector, so the small
    // transient weight left there by the gate window passes through them.
    const QuantumState rotated = apply_full_space_unitary(h_target, in);
    const QuantumState evolved =
        evolve_gate_window(d, params, rotated, solver, options, seed, leak_ptr);
    return apply_full_space_unitary(h_target, evolved);
  };
  GateReport report =
      score_gate(d, params, psi0, solver, options, ideal_cnot(control, d.layout).mat, run);
  report.photon_leakage = leakage;
  return report;
}

GateReport apply_gate(const GateSpec& spec, const SystemParams& params, const QuantumState& psi0,
                      const OpenSystemOptions& options) {
  switch (spec.kind) {
    case GateSpec::Kind::control_phase:
      return apply_control_phase(params, psi0, spec.solver, options);
    case GateSpec::Kind::cnot:
      return apply_cnot(params, spec.ion, psi0, spec.solver, options);
    case GateSpec::Kind::hadamard: {
      const SpaceLayout layout = params.layout();
      GateReport report{apply_hadamard(spec.ion, psi0, layout)};
      report.state_fidelity = 1.0;
      report.process_fidelity_proxy = 1.0;
      report.photon_leakage = 0.0;
      return report;
    }
    case GateSpec::Kind::custom: {
      const SpaceLayout layout = params.layout();
      require_qubit_vacuum_support(psi0, layout, "apply_gate(custom)");
      // Embed the 4x4 qubit-subspace unitary (basis |11>,|12>,|21>,|22>, zero
      // photons), identity elsewhere.
      Matrix u = Matrix::Identity(layout.total_dim(), layout.total_dim());
      const int idx[4] = {layout.index(1, 1, 0), layout.index(1, 2, 0), layout.index(2, 1, 0),
                          layout.index(2, 2, 0)};
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          u(idx[a], idx[b]) = spec.custom_unitary(a, b);
        }
      }
      GateReport report{apply_full_space_unitary(u, psi0)};
      report.state_fidelity = 1.0;
      report.process_fidelity_proxy = 1.0;
      report.photon_leakage = 0.0;
      return report;
    }
  }
  throw std::logic_error("apply_gate: unknown gate kind");
}

std::vector<DurationSweepPoint> control_phase_duration_sweep(const SystemParams& params,
                                                             const QuantumState& psi0,
                                                             Solver solver,
                                                             double span_fraction,
                                                             int n_points) {
  if (solver != Solver::effective && solver != Solver::full_unitary) {
    throw std::invalid_argument(
        "control_phase_duration_sweep: closed solvers only (effective, full_unitary)");
  }
  if (n_points < 2 || !(span_fraction > 0.0) || span_fraction >= 1.0) {
    throw std::invalid_argument(
        "control_phase_duration_sweep: need n_points >= 2 and 0 < span_fraction < 1");
  }
  const GateDynamics d = make_dynamics(params);
  require_qubit_vacuum_support(psi0, d.layout, "control_phase_duration_sweep");
  const OperatorMatrix h =
      solver == Solver::effective
          ? d.hamiltonians.h_gate
          : OperatorMatrix(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
  const UnitaryPropagator prop(h);
  const QuantumState ideal_out =
      apply_full_space_unitary(ideal_control_phase(d.layout).mat, psi0);

  std::vector<DurationSweepPoint> sweep(n_points);
  const double lo = d.t_gate * (1.0 - span_fraction);
  const double hi = d.t_gate * (1.0 + span_fraction);
  for (int k = 0; k < n_points; ++k) {
    const double duration = lo + (hi - lo) * k / (n_points - 1);
    const QuantumState out = QuantumState::ket(prop.at(psi0.amplitudes(), duration));
    sweep[k] = {duration, fidelity(out, ideal_out)};
  }
  return sweep;
}

TimeSeries repeat_gate(const SystemParams& params, const QuantumState& psi0, int n_gates,
                       Solver solver, int n_samples, const OpenSystemOptions& options,
                       FidelityReference reference, TrajectoryEnsemble* ensemble_out,
                       LindbladRunInfo* lindblad_info) {
  if (n_gates < 1) {
    throw std::invalid_argument("repeat_gate: n_gates must be >= 1");
  }
  if (psi0.kind() != QuantumState::Kind::ket) {
    throw std::invalid_argument("repeat_gate: initial state must be a ket");
  }
  const GateDynamics d = make_dynamics(params);
  const double t_final = n_gates * d.t_gate;

  // Reference trajectory for the fidelity channel.
  std::vector<Vector> refs(n_samples + 1);
  if (reference == FidelityReference::effective_evolution) {
    const UnitaryPropagator ideal(d.hamiltonians.h_gate);
    for (int k = 0; k <= n_samples; ++k) {
      refs[k] = ideal.at(psi0.amplitudes(), t_final * k / n_samples);
    }
  } else {
    const Matrix cz = ideal_control_phase(d.layout).mat;
    for (int k = 0; k <= n_samples; ++k) {
      const double t = t_final * k / n_samples;
      const int completed = static_cast<int>(std::floor(t / d.t_gate + 1e-9));
      Vector ref = psi0.amplitudes();
      for (int gate = 0; gate < completed; ++gate) ref = cz * ref;
      refs[k] = std::move(ref);
    }
  }

  ObservableSet obs;
  obs.push_back(Observable::reference_fidelity("fidelity", std::move(refs)));
  obs.push_back(Observable::population("pop_bell_plus", *resolve_state_label("bell_plus", d.layout)));
  obs.push_back(Observable::population("pop_bell_minus", *resolve_state_label("bell_minus", d.layout)));
  obs.push_back(Observable::population("pop_22", *resolve_state_label("22", d.layout)));
  obs.push_back(Observable::population("pop_psi_a", psi_a(d.layout)));
  obs.push_back(zero_photon_probability(d.layout));

  const double dt = options.dt > 0.0 ? options.dt : default_timestep(params);
  switch (solver) {
    case Solver::effective:
      return evolve_unitary(d.hamiltonians.h_gate, psi0, t_final, n_samples, obs);
    case Solver::full_unitary: {
      const OperatorMatrix h(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
      return evolve_unitary(h, psi0, t_final, n_samples, obs);
    }
    case Solver::lindblad: {
      const OperatorMatrix h(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
      LindbladOptions lopt;
      lopt.dt = dt;
      return evolve_lindblad(h, d.jumps, psi0, t_final, n_samples, obs, lopt, lindblad_info);
    }
    case Solver::mcwf: {
      const OperatorMatrix h(d.hamiltonians.h_full.mat + d.hamiltonians.h_drive.mat, true);
      McwfOptions mopt;
      mopt.dt = dt;
      mopt.threads = options.threads;
      TrajectoryEnsemble ensemble = evolve_mcwf(h, d.jumps, psi0, t_final, n_samples,
                                                options.n_traj, options.seed, obs, mopt);
      TimeSeries mean = ensemble.mean;
      if (ensemble_out != nullptr) *ensemble_out = std::move(ensemble);
      return mean;
    }
  }
  throw std::logic_error("repeat_gate: unknown solver");
}

}  // namespace cavsim
