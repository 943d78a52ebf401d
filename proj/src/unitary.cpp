#include "cavsim/unitary.hpp"

#include <cmath>

namespace cavsim {

UnitaryPropagator::UnitaryPropagator(const OperatorMatrix& h) {
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.mat.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("UnitaryPropagator: Hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("UnitaryPropagator: eigendecomposition failed");
  }
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

Vector UnitaryPropagator::at(const Vector& psi0, double t) const {
  Vector coeffs = eigenvectors_.adjoint() * psi0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::polar(1.0, -eigenvalues_(i) * t);
  }
  return eigenvectors_ * coeffs;
}

TimeSeries evolve_unitary(const OperatorMatrix& h, const QuantumState& psi0, double t_final,
                          int n_samples, const ObservableSet& observables) {
  if (psi0.kind() != QuantumState::Kind::ket) {
    throw std::invalid_argument("evolve_unitary: initial state must be a ket");
  }
  if (psi0.dim() != h.dim()) {
    throw std::invalid_argument("evolve_unitary: state/Hamiltonian dimension mismatch");
  }
  if (!(t_final > 0.0) || n_samples < 1) {
    throw std::invalid_argument("evolve_unitary: need t_final > 0 and n_samples >= 1");
  }
  const UnitaryPropagator prop(h);

  TimeSeries ts;
  ts.times.resize(n_samples + 1);
  ts.channels.resize(observables.size());
  for (std::size_t c = 0; c < observables.size(); ++c) {
    ts.channels[c].name = observables[c].name();
    ts.channels[c].probability = observables[c].probability();
    ts.channels[c].probability_tol = observables[c].probability_tol();
    ts.channels[c].values.resize(n_samples + 1);
  }

  for (int k = 0; k <= n_samples; ++k) {
    const double t = t_final * k / n_samples;
    const Vector psi = prop.at(psi0.amplitudes(), t);
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) {
      throw std::runtime_error("evolve_unitary: norm drift beyond 1e-9 at t=" + std::to_string(t));
    }
    ts.times[k] = t;
    for (std::size_t c = 0; c < observables.size(); ++c) {
      ts.channels[c].values[k] = observables[c].eval_ket(psi, k);
    }
  }
  ts.validate();
  return ts;
}

}  // namespace cavsim
