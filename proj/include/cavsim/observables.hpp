#pragma once

#include <string>
#include <vector>

#include "cavsim/operators.hpp"
#include "cavsim/space.hpp"

namespace cavsim {

// One named channel sampled during time evolution. Evaluation expects a
// normalized ket (or unit-trace density matrix); the reference-fidelity kind
// compares against a precomputed reference ket per sample index.
class Observable {
 public:
  static Observable population(std::string name, Vector state);
  static Observable diagonal_mask(std::string name, Eigen::VectorXd mask);
  static Observable op_expectation(std::string name, OperatorMatrix op, bool probability);
  static Observable reference_fidelity(std::string name, std::vector<Vector> refs);

  double eval_ket(const Vector& psi, std::size_t sample) const;
  double eval_density(const Matrix& rho, std::size_t sample) const;

  const std::string& name() const { return name_; }
  bool probability() const { return probability_; }
  double probability_tol() const { return probability_tol_; }

 private:
  enum class Kind { population, diagonal_mask, op_expectation, reference_fidelity };
  Observable() = default;

  Kind kind_ = Kind::population;
  std::string name_;
  bool probability_ = true;
  double probability_tol_ = 1e-9;
  Vector vec_;
  Eigen::VectorXd mask_;
  OperatorMatrix op_;
  std::vector<Vector> refs_;
};

using ObservableSet = std::vector<Observable>;

// P(n = 0), as a diagonal mask over the basis.
Observable zero_photon_probability(const SpaceLayout& layout);

}  // namespace cavsim
