#include "cavsim/states.hpp"

#include <cmath>

namespace cavsim {

namespace {
constexpr double kKetNormTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kEigTol = 1e-9;
}  // namespace

QuantumState QuantumState::ket(Vector amplitudes) {
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kKetNormTol) {
    throw std::invalid_argument("QuantumState::ket: |psi|^2 = " + std::to_string(norm2) +
                                ", expected 1 within 1e-9");
  }
  QuantumState s;
  s.kind_ = Kind::ket;
  s.ket_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::density(Matrix rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("QuantumState::density: matrix must be square");
  }
  const double trace = rho.trace().real();
  if (std::abs(rho.trace().imag()) > kTraceTol || std::abs(trace - 1.0) > kTraceTol) {
    throw std::invalid_argument("QuantumState::density: trace must be 1 within 1e-9");
  }
  if (!is_hermitian(rho, 1e-9)) {
    throw std::invalid_argument("QuantumState::density: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigTol) {
    throw std::invalid_argument("QuantumState::density: negative eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
  QuantumState s;
  s.kind_ = Kind::density;
  s.rho_ = std::move(rho);
  return s;
}

const Vector& QuantumState::amplitudes() const {
  if (kind_ != Kind::ket) throw std::logic_error("QuantumState: not a ket");
  return ket_;
}

const Matrix& QuantumState::density_matrix() const {
  if (kind_ != Kind::density) throw std::logic_error("QuantumState: not a density matrix");
  return rho_;
}

Matrix QuantumState::as_density() const {
  if (kind_ == Kind::density) return rho_;
  return ket_ * ket_.adjoint();
}

QuantumState tensor_basis_state(int ion1_level, int ion2_level, int n_photon,
                                const SpaceLayout& layout) {
  Vector v = Vector::Zero(layout.total_dim());
  v(layout.index(ion1_level, ion2_level, n_photon)) = 1.0;
  return QuantumState::ket(std::move(v));
}

Complex expectation(const QuantumState& state, const OperatorMatrix& op) {
  if (state.dim() != op.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch (state " +
                                std::to_string(state.dim()) + ", operator " +
                                std::to_string(op.dim()) + ")");
  }
  Complex value;
  if (state.kind() == QuantumState::Kind::ket) {
    const Vector& psi = state.amplitudes();
    value = psi.dot(op.mat * psi);
  } else {
    value = (op.mat * state.density_matrix()).trace();
  }
  if (op.hermitian_hint && std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error("expectation: Hermitian operator produced imaginary part " +
                             std::to_string(value.imag()));
  }
  return value;
}

Vector psi_a(const SpaceLayout& layout) {
  Vector v = Vector::Zero(layout.total_dim());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  v(layout.index(2, 3, 0)) = inv_sqrt2;
  v(layout.index(3, 2, 0)) = -inv_sqrt2;
  return v;
}

std::optional<Vector> resolve_state_label(const std::string& label, const SpaceLayout& layout) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(layout.total_dim());
  if (label == "psi_a") {
    return psi_a(layout);
  }
  if (label == "psi_s") {
    v(layout.index(2, 3, 0)) = inv_sqrt2;
    v(layout.index(3, 2, 0)) = inv_sqrt2;
    return v;
  }
  if (label == "bell_plus" || label == "bell_minus") {
    const double sign = (label == "bell_plus") ? 1.0 : -1.0;
    v(layout.index(1, 1, 0)) = inv_sqrt2;
    v(layout.index(2, 2, 0)) = sign * inv_sqrt2;
    return v;
  }
  if (label.size() == 2 && label[0] >= '1' && label[0] <= '3' && label[1] >= '1' &&
      label[1] <= '3') {
    v(layout.index(label[0] - '0', label[1] - '0', 0)) = 1.0;
    return v;
  }
  return std::nullopt;
}

std::vector<std::string> known_state_labels() {
  std::vector<std::string> labels;
  for (char a = '1'; a <= '3'; ++a) {
    for (char b = '1'; b <= '3'; ++b) labels.push_back(std::string{a, b});
  }
  labels.insert(labels.end(), {"psi_a", "psi_s", "bell_plus", "bell_minus"});
  return labels;
}

std::vector<QuantumState> unshifted_subspace_basis(const SpaceLayout& layout) {
  std::vector<QuantumState> basis;
  basis.reserve(5);
  basis.push_back(tensor_basis_state(1, 1, 0, layout));
  basis.push_back(tensor_basis_state(1, 2, 0, layout));
  basis.push_back(tensor_basis_state(2, 1, 0, layout));
  basis.push_back(tensor_basis_state(2, 2, 0, layout));
  basis.push_back(QuantumState::ket(psi_a(layout)));
  return basis;
}

}  // namespace cavsim
