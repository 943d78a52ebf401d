#pragma once

#include <cstdint>

#include "cavsim/lindblad.hpp"

namespace cavsim {

struct JumpRecord {
  double time;
  std::string channel;
};

struct McwfOptions {
  double dt = 0.0;  // 0 -> derived from the operator norms
  int threads = 1;
  double max_step_jump_probability = 0.1;  // hard error above this
};

// Ensemble of quantum-jump trajectories. mean carries the trajectory average
// of every observable with its standard error per sample; identical
// (seed, n_traj, parameters) reproduce the ensemble bit-for-bit regardless of
// the number of threads.
struct TrajectoryEnsemble {
  int n_traj = 0;
  std::uint64_t seed = 0;
  TimeSeries mean;
  std::vector<std::vector<JumpRecord>> jump_records;
  Matrix mean_final_density;
  double observed_max_step_jump_probability = 0.0;
};

// Monte Carlo wavefunction unraveling: deterministic drift under
// H_nh = H - (i/2) sum L^dag L applied as a precomputed exp(-i H_nh dt) per
// step, with a jump once the squared norm crosses a pre-drawn uniform
// threshold; the channel is chosen proportional to <L_j^dag L_j> and the
// state renormalized. Trajectory k draws from the stream (seed, k).
TrajectoryEnsemble evolve_mcwf(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                               const QuantumState& psi0, double t_final, int n_samples,
                               int n_traj, std::uint64_t seed, const ObservableSet& observables,
                               const McwfOptions& options = {});

// dt sensitivity of the deterministic (no-jump) branch over the first
// t_window: observables on the normalized drift state at step dt vs dt/2.
// The per-step propagator is an exact exponential, so this only probes the
// sampling alignment; jump times themselves are resolved to one step.
double mcwf_nojump_dt_delta(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                            const QuantumState& psi0, double t_window, int n_check_samples,
                            const ObservableSet& observables, double dt);

}  // namespace cavsim
