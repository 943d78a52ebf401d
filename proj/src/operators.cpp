#include "cavsim/operators.hpp"

#include <cmath>

namespace cavsim {

OperatorMatrix sigma(int ion, int alpha, int beta, const SpaceLayout& layout) {
  if (ion != 1 && ion != 2) {
    throw std::invalid_argument("sigma: ion must be 1 or 2, got " + std::to_string(ion));
  }
  if (alpha < 1 || alpha > 3 || beta < 1 || beta > 3) {
    throw std::invalid_argument("sigma: levels must be in 1..3");
  }
  const int dim = layout.total_dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    auto label = layout.unindex(col);
    const int level = (ion == 1) ? label.ion1_level : label.ion2_level;
    if (level != beta) continue;
    if (ion == 1) {
      label.ion1_level = alpha;
    } else {
      label.ion2_level = alpha;
    }
    const int row = layout.index(label.ion1_level, label.ion2_level, label.n_photon);
    m(row, col) = 1.0;
  }
  return OperatorMatrix(std::move(m), alpha == beta);
}

OperatorMatrix annihilator(const SpaceLayout& layout) {
  const int dim = layout.total_dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto label = layout.unindex(col);
    if (label.n_photon == 0) continue;
    const int row = layout.index(label.ion1_level, label.ion2_level, label.n_photon - 1);
    m(row, col) = std::sqrt(static_cast<double>(label.n_photon));
  }
  return OperatorMatrix(std::move(m), false);
}

OperatorMatrix number_operator(const SpaceLayout& layout) {
  const int dim = layout.total_dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = static_cast<double>(layout.unindex(i).n_photon);
  }
  return OperatorMatrix(std::move(m), true);
}

OperatorMatrix zero_photon_projector(const SpaceLayout& layout) {
  const int dim = layout.total_dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (layout.unindex(i).n_photon == 0) m(i, i) = 1.0;
  }
  return OperatorMatrix(std::move(m), true);
}

OperatorMatrix identity_operator(const SpaceLayout& layout) {
  return OperatorMatrix(Matrix::Identity(layout.total_dim(), layout.total_dim()), true);
}

}  // namespace cavsim
