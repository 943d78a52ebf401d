#include "cavsim/fidelity.hpp"

namespace cavsim {

double fidelity(const QuantumState& state, const QuantumState& reference) {
  if (reference.kind() != QuantumState::Kind::ket) {
    throw std::invalid_argument("fidelity: reference must be a ket");
  }
  if (state.dim() != reference.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Vector& ref = reference.amplitudes();
  if (state.kind() == QuantumState::Kind::ket) {
    return std::norm(ref.dot(state.amplitudes()));
  }
  return ref.dot(state.density_matrix() * ref).real();
}

}  // namespace cavsim
