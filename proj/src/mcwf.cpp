#include "cavsim/mcwf.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "cavsim/rng.hpp"

namespace cavsim {

namespace {

struct TrajectoryScratch {
  std::vector<double> values;  // n_channels x (n_samples+1), channel-major
  Vector final_ket;
  std::vector<JumpRecord> jumps;
  double max_step_jump_probability = 0.0;
};

}  // namespace

TrajectoryEnsemble evolve_mcwf(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                               const QuantumState& psi0, double t_final, int n_samples,
                               int n_traj, std::uint64_t seed, const ObservableSet& observables,
                               const McwfOptions& options) {
  if (psi0.kind() != QuantumState::Kind::ket) {
    throw std::invalid_argument("evolve_mcwf: initial state must be a ket");
  }
  if (psi0.dim() != h.dim()) {
    throw std::invalid_argument("evolve_mcwf: state/Hamiltonian dimension mismatch");
  }
  if (!(t_final > 0.0) || n_samples < 1 || n_traj < 1) {
    throw std::invalid_argument("evolve_mcwf: need t_final > 0, n_samples >= 1, n_traj >= 1");
  }
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.mat.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("evolve_mcwf: Hamiltonian is not Hermitian");
  }

  const Eigen::Index dim = h.dim();
  Matrix h_nh = h.mat;
  std::vector<Matrix> ls;
  std::vector<std::string> labels;
  double norm_scale = h.mat.cwiseAbs().rowwise().sum().maxCoeff();
  for (const auto& jump : jumps.operators) {
    if (jump.op.dim() != dim) {
      throw std::invalid_argument("evolve_mcwf: jump operator dimension mismatch");
    }
    ls.push_back(jump.op.mat);
    labels.push_back(jump.label);
    h_nh -= Complex(0.0, 0.5) * (jump.op.mat.adjoint() * jump.op.mat);
    norm_scale = std::max(norm_scale, jump.op.mat.cwiseAbs().rowwise().sum().maxCoeff());
  }

  const double sample_dt = t_final / n_samples;
  const double dt_target = options.dt > 0.0 ? options.dt : 1e-2 / std::max(norm_scale, 1.0);
  const long long steps_per_sample =
      std::max<long long>(1, static_cast<long long>(std::ceil(sample_dt / dt_target)));
  const double dt = sample_dt / static_cast<double>(steps_per_sample);

  // One exact propagator for the whole run; every step is then a mat-vec.
  const Matrix step_propagator = (Complex(0.0, -1.0) * dt * h_nh).exp();

  const std::size_t n_channels = observables.size();
  const std::size_t n_points = static_cast<std::size_t>(n_samples) + 1;
  const bool can_jump = !ls.empty();

  std::vector<TrajectoryScratch> scratch(n_traj);

  auto run_trajectory = [&](int traj) {
    TrajectoryScratch& out = scratch[traj];
    out.values.assign(n_channels * n_points, 0.0);
    Xoshiro256pp rng(seed, static_cast<std::uint64_t>(traj));

    Vector psi = psi0.amplitudes();
    Vector psi_next(dim);
    Vector normalized(dim);
    double threshold = rng.uniform_open_zero();
    long long step_index = 0;

    for (std::size_t sample = 0; sample < n_points; ++sample) {
      normalized = psi / psi.norm();
      for (std::size_t c = 0; c < n_channels; ++c) {
        out.values[c * n_points + sample] = observables[c].eval_ket(normalized, sample);
      }
      if (sample == n_points - 1) break;

      for (long long s = 0; s < steps_per_sample; ++s, ++step_index) {
        const double norm2_before = psi.squaredNorm();
        psi_next.noalias() = step_propagator * psi;
        const double norm2_after = psi_next.squaredNorm();
        const double step_jump_prob = 1.0 - norm2_after / norm2_before;
        out.max_step_jump_probability =
            std::max(out.max_step_jump_probability, step_jump_prob);
        if (step_jump_prob > options.max_step_jump_probability) {
          throw std::runtime_error(
              "evolve_mcwf: per-step jump probability " + std::to_string(step_jump_prob) +
              " exceeds " + std::to_string(options.max_step_jump_probability) +
              "; use a smaller dt");
        }
        psi.swap(psi_next);
        if (can_jump && psi.squaredNorm() <= threshold) {
          // Channel weights from the pre-jump state; overall normalization
          // cancels in the comparison.
          double total = 0.0;
          std::vector<double> weights(ls.size());
          for (std::size_t j = 0; j < ls.size(); ++j) {
            weights[j] = (ls[j] * psi).squaredNorm();
            total += weights[j];
          }
          if (total <= 0.0) continue;  // dark state: the norm cannot decay further
          const double pick = rng.uniform() * total;
          std::size_t channel = 0;
          double cumulative = weights[0];
          while (channel + 1 < ls.size() && pick >= cumulative) {
            ++channel;
            cumulative += weights[channel];
          }
          psi = ls[channel] * psi;
          psi /= psi.norm();
          out.jumps.push_back(JumpRecord{dt * static_cast<double>(step_index + 1),
                                         labels[channel]});
          threshold = rng.uniform_open_zero();
        }
      }
    }
    out.final_ket = psi / psi.norm();
  };

  const int threads = std::clamp(options.threads, 1, n_traj);
  if (threads == 1) {
    for (int k = 0; k < n_traj; ++k) run_trajectory(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        try {
          // Static partition: trajectory k belongs to thread k % threads, so
          // the work split never depends on timing.
          for (int k = w; k < n_traj; k += threads) run_trajectory(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Reduce in trajectory order; the result is independent of thread count.
  TrajectoryEnsemble ensemble;
  ensemble.n_traj = n_traj;
  ensemble.seed = seed;
  ensemble.jump_records.resize(n_traj);
  ensemble.mean_final_density = Matrix::Zero(dim, dim);
  for (int k = 0; k < n_traj; ++k) {
    ensemble.jump_records[k] = std::move(scratch[k].jumps);
    ensemble.mean_final_density += scratch[k].final_ket * scratch[k].final_ket.adjoint();
    ensemble.observed_max_step_jump_probability =
        std::max(ensemble.observed_max_step_jump_probability,
                 scratch[k].max_step_jump_probability);
  }
  ensemble.mean_final_density /= static_cast<double>(n_traj);

  ensemble.mean.times.resize(n_points);
  for (std::size_t k = 0; k < n_points; ++k) {
    ensemble.mean.times[k] = sample_dt * static_cast<double>(k);
  }
  ensemble.mean.channels.resize(n_channels);
  for (std::size_t c = 0; c < n_channels; ++c) {
    Channel& ch = ensemble.mean.channels[c];
    ch.name = observables[c].name();
    ch.probability = observables[c].probability();
    ch.probability_tol = observables[c].probability_tol();
    ch.values.resize(n_points);
    ch.stderr_values.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      double sum = 0.0;
      for (int traj = 0; traj < n_traj; ++traj) {
        sum += scratch[traj].values[c * n_points + k];
      }
      const double mean = sum / n_traj;
      double sq_dev = 0.0;
      for (int traj = 0; traj < n_traj; ++traj) {
        const double dev = scratch[traj].values[c * n_points + k] - mean;
        sq_dev += dev * dev;
      }
      ch.values[k] = mean;
      ch.stderr_values[k] =
          (n_traj > 1) ? std::sqrt(sq_dev / (static_cast<double>(n_traj) *
                                             static_cast<double>(n_traj - 1)))
                       : 0.0;
    }
  }
  ensemble.mean.validate();
  return ensemble;
}

double mcwf_nojump_dt_delta(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                            const QuantumState& psi0, double t_window, int n_check_samples,
                            const ObservableSet& observables, double dt) {
  Matrix h_nh = h.mat;
  for (const auto& jump : jumps.operators) {
    h_nh -= Complex(0.0, 0.5) * (jump.op.mat.adjoint() * jump.op.mat);
  }
  auto sample_values = [&](double step) {
    const double sample_dt = t_window / n_check_samples;
    const long long steps_per_sample =
        std::max<long long>(1, static_cast<long long>(std::ceil(sample_dt / step)));
    const Matrix u = (Complex(0.0, -1.0) * (sample_dt / steps_per_sample) * h_nh).exp();
    std::vector<double> values;
    Vector psi = psi0.amplitudes();
    for (int k = 0; k <= n_check_samples; ++k) {
      const Vector normalized = psi / psi.norm();
      for (const auto& obs : observables) {
        values.push_back(obs.eval_ket(normalized, static_cast<std::size_t>(k)));
      }
      for (long long s = 0; s < steps_per_sample; ++s) psi = u * psi;
    }
    return values;
  };
  const auto coarse = sample_values(dt);
  const auto fine = sample_values(0.5 * dt);
  double max_delta = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    max_delta = std::max(max_delta, std::abs(coarse[i] - fine[i]));
  }
  return max_delta;
}

}  // namespace cavsim
