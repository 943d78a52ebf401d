#pragma once

#include "cavsim/observables.hpp"
#include "cavsim/states.hpp"
#include "cavsim/time_series.hpp"

namespace cavsim {

// Exact closed-system propagation of a time-independent Hermitian H through
// its eigendecomposition: psi(t) = V exp(-i lambda t) V^dag psi0.
class UnitaryPropagator {
 public:
  explicit UnitaryPropagator(const OperatorMatrix& h);

  Vector at(const Vector& psi0, double t) const;
  Eigen::Index dim() const { return eigenvectors_.rows(); }

 private:
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

// Samples psi(t_k) at n_samples+1 equally spaced times in [0, t_final] and
// evaluates the observables. Norm conservation is checked to 1e-9 at every
// sample. Throws std::invalid_argument for non-Hermitian h.
TimeSeries evolve_unitary(const OperatorMatrix& h, const QuantumState& psi0, double t_final,
                          int n_samples, const ObservableSet& observables);

}  // namespace cavsim
