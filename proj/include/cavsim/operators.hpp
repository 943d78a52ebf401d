#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cavsim/space.hpp"

namespace cavsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense complex square matrix on the composite space. hermitian_hint marks
// operators that are Hermitian by construction; is_hermitian() makes the
// claim checkable.
struct OperatorMatrix {
  Matrix mat;
  bool hermitian_hint = false;

  OperatorMatrix() = default;
  OperatorMatrix(Matrix m, bool hermitian) : mat(std::move(m)), hermitian_hint(hermitian) {
    if (mat.rows() != mat.cols()) {
      throw std::invalid_argument("OperatorMatrix: matrix must be square");
    }
  }

  Eigen::Index dim() const { return mat.rows(); }
};

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

inline bool is_hermitian(const OperatorMatrix& op, double tol = 1e-12) {
  return is_hermitian(op.mat, tol);
}

// sigma^ion_{alpha,beta} = |alpha><beta| on the given ion, identity elsewhere.
OperatorMatrix sigma(int ion, int alpha, int beta, const SpaceLayout& layout);

// Cavity annihilation operator: a|n> = sqrt(n)|n-1>, a|0> = 0.
OperatorMatrix annihilator(const SpaceLayout& layout);

// a^dagger a.
OperatorMatrix number_operator(const SpaceLayout& layout);

// Projector onto the zero-photon subspace.
OperatorMatrix zero_photon_projector(const SpaceLayout& layout);

OperatorMatrix identity_operator(const SpaceLayout& layout);

}  // namespace cavsim
