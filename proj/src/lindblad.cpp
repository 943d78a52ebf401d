#include "cavsim/lindblad.hpp"

#include <cmath>

namespace cavsim {

namespace {

// Right-hand side of the master equation. With A = H - (i/2) sum L^dag L and
// Hermitian x, the commutator and anticommutator collapse into
// -i (A x - (A x)^dag), which costs one product; each collapse term adds two.
class LindbladRhs {
 public:
  LindbladRhs(const OperatorMatrix& h, const JumpOperatorSet& jumps) {
    const Eigen::Index dim = h.dim();
    a_ = h.mat;
    for (const auto& jump : jumps.operators) {
      if (jump.op.dim() != dim) {
        throw std::invalid_argument("evolve_lindblad: jump operator dimension mismatch");
      }
      ls_.push_back(jump.op.mat);
      ldags_.push_back(jump.op.mat.adjoint());
      a_ -= Complex(0.0, 0.5) * (ldags_.back() * ls_.back());
    }
    m_.resize(dim, dim);
    b_.resize(dim, dim);
  }

  void operator()(const Matrix& x, Matrix& out) {
    m_.noalias() = a_ * x;
    out = Complex(0.0, -1.0) * (m_ - m_.adjoint());
    for (std::size_t j = 0; j < ls_.size(); ++j) {
      b_.noalias() = ls_[j] * x;
      out.noalias() += b_ * ldags_[j];
    }
  }

  double norm_scale() const {
    double scale = a_.cwiseAbs().rowwise().sum().maxCoeff();
    for (const auto& l : ls_) {
      scale = std::max(scale, l.cwiseAbs().rowwise().sum().maxCoeff());
    }
    return std::max(scale, 1.0);
  }

 private:
  Matrix a_;
  std::vector<Matrix> ls_, ldags_;
  Matrix m_, b_;
};

}  // namespace

JumpOperatorSet jump_operators(const SystemParams& params, const SpaceLayout& layout) {
  params.validate();
  JumpOperatorSet set;
  if (params.kappa > 0.0) {
    OperatorMatrix a = annihilator(layout);
    a.mat *= std::sqrt(params.kappa);
    set.operators.push_back({std::move(a), "cavity_decay"});
  }
  if (params.gamma > 0.0) {
    for (int ion = 1; ion <= 2; ++ion) {
      OperatorMatrix s = sigma(ion, 2, 3, layout);
      s.mat *= std::sqrt(params.gamma);
      s.hermitian_hint = false;
      set.operators.push_back({std::move(s), "ion" + std::to_string(ion) + "_emission"});
    }
  }
  return set;
}

double default_timestep(const SystemParams& params) {
  return 1e-2 / std::max({std::abs(params.delta), params.g, params.kappa});
}

TimeSeries evolve_lindblad(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                           const QuantumState& rho0, double t_final, int n_samples,
                           const ObservableSet& observables, const LindbladOptions& options,
                           LindbladRunInfo* info) {
  if (rho0.dim() != h.dim()) {
    throw std::invalid_argument("evolve_lindblad: state/Hamiltonian dimension mismatch");
  }
  if (!(t_final > 0.0) || n_samples < 1) {
    throw std::invalid_argument("evolve_lindblad: need t_final > 0 and n_samples >= 1");
  }
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.mat.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("evolve_lindblad: Hamiltonian is not Hermitian");
  }

  LindbladRhs rhs(h, jumps);
  const double sample_dt = t_final / n_samples;
  const double dt_target = options.dt > 0.0 ? options.dt : 1e-2 / rhs.norm_scale();
  const long long steps_per_sample =
      std::max<long long>(1, static_cast<long long>(std::ceil(sample_dt / dt_target)));
  const double dt = sample_dt / static_cast<double>(steps_per_sample);

  Matrix rho = rho0.as_density();
  const Eigen::Index dim = rho.rows();
  Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);

  TimeSeries ts;
  ts.times.resize(n_samples + 1);
  ts.channels.resize(observables.size());
  for (std::size_t c = 0; c < observables.size(); ++c) {
    ts.channels[c].name = observables[c].name();
    ts.channels[c].probability = observables[c].probability();
    ts.channels[c].probability_tol = observables[c].probability_tol();
    ts.channels[c].values.resize(n_samples + 1);
  }

  LindbladRunInfo run_info;
  run_info.dt = dt;
  run_info.min_eigenvalue = 1.0;

  for (int k = 0; k <= n_samples; ++k) {
    const double t = sample_dt * k;
    const double trace_drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    const double herm_error = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
    run_info.max_trace_drift = std::max(run_info.max_trace_drift, trace_drift);
    run_info.max_hermiticity_error = std::max(run_info.max_hermiticity_error, herm_error);
    if (trace_drift > options.trace_tol) {
      throw std::runtime_error("evolve_lindblad: trace drift " + std::to_string(trace_drift) +
                               " at t=" + std::to_string(t) +
                               " exceeds tolerance; reduce the time step");
    }
    if (herm_error > options.hermiticity_tol) {
      throw std::runtime_error("evolve_lindblad: Hermiticity error " + std::to_string(herm_error) +
                               " at t=" + std::to_string(t) +
                               " exceeds tolerance; reduce the time step");
    }
    if (options.check_positivity) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
      const double min_eig = es.eigenvalues().minCoeff();
      run_info.min_eigenvalue = std::min(run_info.min_eigenvalue, min_eig);
      if (min_eig < -options.positivity_tol) {
        throw std::runtime_error("evolve_lindblad: negative eigenvalue " +
                                 std::to_string(min_eig) + " at t=" + std::to_string(t) +
                                 " exceeds tolerance; reduce the time step");
      }
    }
    ts.times[k] = t;
    for (std::size_t c = 0; c < observables.size(); ++c) {
      ts.channels[c].values[k] = observables[c].eval_density(rho, k);
    }
    if (k == n_samples) break;

    for (long long s = 0; s < steps_per_sample; ++s) {
      rhs(rho, k1);
      tmp = rho + (0.5 * dt) * k1;
      rhs(tmp, k2);
      tmp = rho + (0.5 * dt) * k2;
      rhs(tmp, k3);
      tmp = rho + dt * k3;
      rhs(tmp, k4);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++run_info.steps;
    }
  }
  ts.validate();
  if (info != nullptr) {
    run_info.final_density = std::move(rho);
    *info = std::move(run_info);
  }
  return ts;
}

double lindblad_dt_halving_delta(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                                 const QuantumState& rho0, double t_window, int n_check_samples,
                                 const ObservableSet& observables, double dt) {
  LindbladOptions coarse;
  coarse.dt = dt;
  LindbladOptions fine;
  fine.dt = 0.5 * dt;
  const TimeSeries at_dt =
      evolve_lindblad(h, jumps, rho0, t_window, n_check_samples, observables, coarse);
  const TimeSeries at_half =
      evolve_lindblad(h, jumps, rho0, t_window, n_check_samples, observables, fine);
  double max_delta = 0.0;
  for (std::size_t c = 0; c < at_dt.channels.size(); ++c) {
    for (std::size_t k = 0; k < at_dt.channels[c].values.size(); ++k) {
      max_delta = std::max(max_delta, std::abs(at_dt.channels[c].values[k] -
                                               at_half.channels[c].values[k]));
    }
  }
  return max_delta;
}

}  // namespace cavsim
