#pragma once

#include "cavsim/observables.hpp"
#include "cavsim/params.hpp"
#include "cavsim/states.hpp"
#include "cavsim/time_series.hpp"

namespace cavsim {

// Collapse operators of the open system: sqrt(kappa) a for cavity decay and
// sqrt(gamma) sigma^i_23 for spontaneous |3> -> |2> emission of each ion.
struct JumpOperator {
  OperatorMatrix op;
  std::string label;
};

struct JumpOperatorSet {
  std::vector<JumpOperator> operators;
  bool empty() const { return operators.empty(); }
};

// Builds the set from the rates in params; channels with zero rate are
// omitted. Labels: cavity_decay, ion1_emission, ion2_emission.
JumpOperatorSet jump_operators(const SystemParams& params, const SpaceLayout& layout);

// Fixed integration step 1e-2 / max(|delta|, g, kappa), shared by the
// Lindblad and MCWF solvers.
double default_timestep(const SystemParams& params);

struct LindbladOptions {
  double dt = 0.0;  // 0 -> derived from the operator norms
  bool check_positivity = true;
  double trace_tol = 1e-7;
  double hermiticity_tol = 1e-9;
  double positivity_tol = 1e-7;
};

struct LindbladRunInfo {
  double dt = 0.0;
  long long steps = 0;
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  Matrix final_density;
};

// Integrates drho/dt = -i[H,rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho})
// with a fixed-step RK4 scheme on the density matrix. Kets are promoted to
// |psi><psi|. Trace, Hermiticity and positivity are verified at every sample;
// a violation aborts with a diagnostic asking for a smaller dt.
TimeSeries evolve_lindblad(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                           const QuantumState& rho0, double t_final, int n_samples,
                           const ObservableSet& observables,
                           const LindbladOptions& options = {}, LindbladRunInfo* info = nullptr);

// Re-runs the first t_window of the integration at dt and dt/2 and returns
// the largest observable discrepancy; the convergence diagnostic recorded in
// run manifests.
double lindblad_dt_halving_delta(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                                 const QuantumState& rho0, double t_window, int n_check_samples,
                                 const ObservableSet& observables, double dt);

}  // namespace cavsim
