#include "cavsim/observables.hpp"

#include <stdexcept>

namespace cavsim {

Observable Observable::population(std::string name, Vector state) {
  Observable o;
  o.kind_ = Kind::population;
  o.name_ = std::move(name);
  o.vec_ = std::move(state);
  return o;
}

Observable Observable::diagonal_mask(std::string name, Eigen::VectorXd mask) {
  Observable o;
  o.kind_ = Kind::diagonal_mask;
  o.name_ = std::move(name);
  o.mask_ = std::move(mask);
  return o;
}

Observable Observable::op_expectation(std::string name, OperatorMatrix op, bool probability) {
  Observable o;
  o.kind_ = Kind::op_expectation;
  o.name_ = std::move(name);
  o.op_ = std::move(op);
  o.probability_ = probability;
  return o;
}

Observable Observable::reference_fidelity(std::string name, std::vector<Vector> refs) {
  Observable o;
  o.kind_ = Kind::reference_fidelity;
  o.name_ = std::move(name);
  o.refs_ = std::move(refs);
  o.probability_tol_ = 1e-7;
  return o;
}

double Observable::eval_ket(const Vector& psi, std::size_t sample) const {
  switch (kind_) {
    case Kind::population:
      return std::norm(vec_.dot(psi));
    case Kind::diagonal_mask:
      return (mask_.array() * psi.cwiseAbs2().array()).sum();
    case Kind::op_expectation:
      return psi.dot(op_.mat * psi).real();
    case Kind::reference_fidelity:
      return std::norm(refs_.at(sample).dot(psi));
  }
  throw std::logic_error("Observable: unknown kind");
}

double Observable::eval_density(const Matrix& rho, std::size_t sample) const {
  switch (kind_) {
    case Kind::population:
      return vec_.dot(rho * vec_).real();
    case Kind::diagonal_mask:
      return (mask_.array() * rho.diagonal().real().array()).sum();
    case Kind::op_expectation:
      return (op_.mat * rho).trace().real();
    case Kind::reference_fidelity:
      return refs_.at(sample).dot(rho * refs_.at(sample)).real();
  }
  throw std::logic_error("Observable: unknown kind");
}

Observable zero_photon_probability(const SpaceLayout& layout) {
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(layout.total_dim());
  for (int i = 0; i < layout.total_dim(); ++i) {
    if (layout.unindex(i).n_photon == 0) mask(i) = 1.0;
  }
  return Observable::diagonal_mask("p_zero_photons", std::move(mask));
}

}  // namespace cavsim
