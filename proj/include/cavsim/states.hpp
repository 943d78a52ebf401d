#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavsim/operators.hpp"

namespace cavsim {

// Pure ket or density matrix on the composite space. Construction validates
// the state: kets must be normalized, density matrices must have unit trace,
// be Hermitian and positive semidefinite (up to the stated tolerances).
class QuantumState {
 public:
  enum class Kind { ket, density };

  static QuantumState ket(Vector amplitudes);
  static QuantumState density(Matrix rho);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return kind_ == Kind::ket ? ket_.size() : rho_.rows(); }

  const Vector& amplitudes() const;
  const Matrix& density_matrix() const;

  // Density-matrix view regardless of kind (kets are promoted to |psi><psi|).
  Matrix as_density() const;

 private:
  QuantumState() = default;
  Kind kind_ = Kind::ket;
  Vector ket_;
  Matrix rho_;
};

// Computational basis ket |ion1, ion2, n>.
QuantumState tensor_basis_state(int ion1_level, int ion2_level, int n_photon,
                                const SpaceLayout& layout);

// <psi|O|psi> for kets, tr(rho O) for density matrices. When the operator
// carries hermitian_hint the imaginary part is checked to vanish (1e-10).
Complex expectation(const QuantumState& state, const OperatorMatrix& op);

// Named states of the two-ion zero-photon sector. Labels: "11".."33" for
// product states, "psi_a"/"psi_s" for (|23> -+ |32>)/sqrt(2), "bell_plus"/
// "bell_minus" for (|11> +- |22>)/sqrt(2). All carry zero photons.
std::optional<Vector> resolve_state_label(const std::string& label, const SpaceLayout& layout);

std::vector<std::string> known_state_labels();

// Antisymmetric two-ion state (|23> - |32>)/sqrt(2) (x) |0>.
Vector psi_a(const SpaceLayout& layout);

// The five cavity-unshifted basis states {|11>,|12>,|21>,|22>,|psi_a>} at
// zero photons, in that order.
std::vector<QuantumState> unshifted_subspace_basis(const SpaceLayout& layout);

}  // namespace cavsim
