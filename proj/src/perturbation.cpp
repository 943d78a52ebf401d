#include "cavsim/perturbation.hpp"

#include <cmath>

namespace cavsim {

namespace {

double abs_scale(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

void require_square_same_dim(const OperatorMatrix& a, const OperatorMatrix& b,
                             const OperatorMatrix& c) {
  if (a.dim() != b.dim() || a.dim() != c.dim()) {
    throw std::invalid_argument("adiabatic_eliminate: operator dimensions differ");
  }
}

}  // namespace

OperatorMatrix adiabatic_eliminate(const OperatorMatrix& h_diag, const OperatorMatrix& coupling,
                                   const OperatorMatrix& subspace_projector) {
  require_square_same_dim(h_diag, coupling, subspace_projector);
  const Matrix& hd = h_diag.mat;
  const Matrix& v = coupling.mat;
  const Matrix& p = subspace_projector.mat;

  if (!is_hermitian(hd, 1e-12 * abs_scale(hd)) || !is_hermitian(v, 1e-12 * abs_scale(v))) {
    throw std::invalid_argument("adiabatic_eliminate: h_diag and coupling must be Hermitian");
  }
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-12 || !is_hermitian(p, 1e-12)) {
    throw std::invalid_argument("adiabatic_eliminate: subspace_projector is not a projector");
  }
  const double rank = p.trace().real();
  if (rank < 0.5) {
    throw std::invalid_argument("adiabatic_eliminate: subspace is empty");
  }

  // The subspace must be a degenerate eigenspace of h_diag.
  const double subspace_energy = (hd * p).trace().real() / rank;
  if ((hd * p - subspace_energy * p).cwiseAbs().maxCoeff() > 1e-9 * abs_scale(hd)) {
    throw std::invalid_argument(
        "adiabatic_eliminate: subspace is not a degenerate eigenspace of h_diag");
  }

  // No first-order term allowed: P V P must vanish.
  if ((p * v * p).cwiseAbs().maxCoeff() > 1e-12 * abs_scale(v)) {
    throw std::invalid_argument("adiabatic_eliminate: subspace not protected at first order");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(hd);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("adiabatic_eliminate: eigendecomposition of h_diag failed");
  }
  const auto& evals = es.eigenvalues();
  const auto& evecs = es.eigenvectors();
  const double deg_tol = 1e-9 * std::max(1.0, evals.cwiseAbs().maxCoeff());

  // Coupling into other states at the subspace energy would hit a zero
  // denominator; detect via the degenerate eigenspace beyond the subspace.
  Matrix degenerate_proj = Matrix::Zero(hd.rows(), hd.cols());
  Matrix resolvent = Matrix::Zero(hd.rows(), hd.cols());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    const Vector u = evecs.col(k);
    if (std::abs(evals(k) - subspace_energy) <= deg_tol) {
      degenerate_proj += u * u.adjoint();
    } else {
      resolvent += (u * u.adjoint()) / (subspace_energy - evals(k));
    }
  }
  const Matrix outside_degenerate = degenerate_proj - p;
  if ((outside_degenerate * v * p).cwiseAbs().maxCoeff() > 1e-9 * abs_scale(v)) {
    throw std::invalid_argument(
        "adiabatic_eliminate: zero energy denominator (coupling reaches degenerate states "
        "outside the subspace)");
  }

  Matrix h_eff = p * v * resolvent * v * p;
  h_eff = 0.5 * (h_eff + h_eff.adjoint().eval());
  return OperatorMatrix(std::move(h_eff), true);
}

OperatorMatrix project_first_order(const OperatorMatrix& h_pert,
                                   const std::vector<QuantumState>& degenerate_subspace) {
  const Eigen::Index k = static_cast<Eigen::Index>(degenerate_subspace.size());
  if (k == 0) {
    throw std::invalid_argument("project_first_order: empty subspace");
  }
  for (const auto& s : degenerate_subspace) {
    if (s.kind() != QuantumState::Kind::ket) {
      throw std::invalid_argument("project_first_order: subspace states must be kets");
    }
    if (s.dim() != h_pert.dim()) {
      throw std::invalid_argument("project_first_order: state/operator dimension mismatch");
    }
  }
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const Complex overlap =
          degenerate_subspace[a].amplitudes().dot(degenerate_subspace[b].amplitudes());
      const Complex want = (a == b) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      if (std::abs(overlap - want) > 1e-10) {
        throw std::invalid_argument("project_first_order: basis is not orthonormal");
      }
    }
  }
  Matrix block(k, k);
  for (Eigen::Index b = 0; b < k; ++b) {
    const Vector image = h_pert.mat * degenerate_subspace[b].amplitudes();
    for (Eigen::Index a = 0; a < k; ++a) {
      block(a, b) = degenerate_subspace[a].amplitudes().dot(image);
    }
  }
  return OperatorMatrix(std::move(block), h_pert.hermitian_hint);
}

OperatorMatrix embed_in_full_space(const OperatorMatrix& block,
                                   const std::vector<QuantumState>& basis) {
  const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
  if (block.dim() != k) {
    throw std::invalid_argument("embed_in_full_space: block/basis size mismatch");
  }
  const Eigen::Index dim = basis.front().dim();
  Matrix b(dim, k);
  for (Eigen::Index i = 0; i < k; ++i) b.col(i) = basis[i].amplitudes();
  Matrix full = b * block.mat * b.adjoint();
  return OperatorMatrix(std::move(full), block.hermitian_hint);
}

}  // namespace cavsim
