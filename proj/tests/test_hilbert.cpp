#include <doctest.h>

#include <cmath>

#include "cavsim/states.hpp"

using namespace cavsim;

namespace {
const SpaceLayout kLayout(2);  // n_max = 2, dim 27
}

TEST_SUITE("hilbert-core") {

TEST_CASE("layout dimensions and index formula") {
  CHECK(kLayout.total_dim() == 27);
  CHECK(SpaceLayout(4).total_dim() == 45);
  CHECK(kLayout.index(1, 1, 0) == 0);
  // index = ((ion1-1)*3 + (ion2-1))*(n_max+1) + n
  CHECK(kLayout.index(2, 2, 0) == ((2 - 1) * 3 + (2 - 1)) * 3 + 0);
  CHECK(kLayout.index(3, 1, 2) == ((3 - 1) * 3 + (1 - 1)) * 3 + 2);
  CHECK_THROWS_AS(SpaceLayout(0), std::invalid_argument);
  CHECK_THROWS_AS(kLayout.index(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(kLayout.index(1, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(kLayout.index(1, 1, 3), std::invalid_argument);
}

TEST_CASE("index/unindex round-trips over the whole space") {
  for (int n_max : {1, 2, 4}) {
    const SpaceLayout layout(n_max);
    for (int i = 0; i < layout.total_dim(); ++i) {
      const auto label = layout.unindex(i);
      CHECK(layout.index(label.ion1_level, label.ion2_level, label.n_photon) == i);
    }
  }
}

TEST_CASE("sigma is |alpha><beta| on one ion") {
  const auto s = sigma(1, 2, 3, kLayout);
  const Vector in = tensor_basis_state(3, 1, 0, kLayout).amplitudes();
  const Vector expected = tensor_basis_state(2, 1, 0, kLayout).amplitudes();
  CHECK((s.mat * in - expected).norm() == 0.0);

  // Projector on its own eigenstate.
  const auto p22 = sigma(1, 2, 2, kLayout);
  const Vector ket = tensor_basis_state(2, 1, 0, kLayout).amplitudes();
  CHECK((p22.mat * ket - ket).norm() == 0.0);

  CHECK_THROWS_AS(sigma(3, 1, 1, kLayout), std::invalid_argument);
  CHECK_THROWS_AS(sigma(1, 0, 2, kLayout), std::invalid_argument);
  CHECK_THROWS_AS(sigma(2, 1, 4, kLayout), std::invalid_argument);
}

TEST_CASE("sigma adjoint pairs up exactly") {
  for (int ion : {1, 2}) {
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        const Matrix lhs = sigma(ion, a, b, kLayout).mat.adjoint();
        const Matrix rhs = sigma(ion, b, a, kLayout).mat;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("operators on different ions commute exactly") {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const Matrix s1 = sigma(1, a, b, kLayout).mat;
      for (int c = 1; c <= 3; ++c) {
        for (int d = 1; d <= 3; ++d) {
          const Matrix s2 = sigma(2, c, d, kLayout).mat;
          CHECK((s1 * s2 - s2 * s1).cwiseAbs().maxCoeff() == 0.0);
        }
      }
    }
  }
}

TEST_CASE("projector rank counts the matching basis states") {
  // Independent oracle: enumerate the basis and count states with ion1=2,
  // ion2=3; the trace of the product projector must equal that count.
  int count = 0;
  for (int i = 0; i < kLayout.total_dim(); ++i) {
    const auto label = kLayout.unindex(i);
    if (label.ion1_level == 2 && label.ion2_level == 3) ++count;
  }
  CHECK(count == kLayout.fock_cutoff() + 1);
  const Matrix prod = sigma(1, 2, 2, kLayout).mat * sigma(2, 3, 3, kLayout).mat;
  CHECK(prod.trace().real() == doctest::Approx(count).epsilon(1e-15));
}

TEST_CASE("annihilator ladder action") {
  const auto a = annihilator(kLayout);
  const Vector one = tensor_basis_state(1, 1, 1, kLayout).amplitudes();
  const Vector zero = tensor_basis_state(1, 1, 0, kLayout).amplitudes();
  CHECK((a.mat * one - zero).norm() == 0.0);
  CHECK((a.mat * zero).norm() == 0.0);

  const auto n_op = number_operator(kLayout);
  const QuantumState two = tensor_basis_state(1, 1, 2, kLayout);
  CHECK(expectation(two, n_op).real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((a.mat.adjoint() * a.mat - n_op.mat).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("[a, a^dag] = 1 below the truncation edge") {
  // The commutator equals the identity on the subspace n < n_max; the highest
  // Fock row is the truncation artifact.
  for (int n_max : {1, 2, 4}) {
    const SpaceLayout layout(n_max);
    const Matrix a = annihilator(layout).mat;
    const Matrix commutator = a * a.adjoint() - a.adjoint() * a;
    Matrix sub = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (int i = 0; i < layout.total_dim(); ++i) {
      if (layout.unindex(i).n_photon < n_max) sub(i, i) = 1.0;
    }
    CHECK((sub * commutator * sub - sub).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("tensor_basis_state places a single unit amplitude") {
  const QuantumState s = tensor_basis_state(2, 2, 0, kLayout);
  const int want = ((2 - 1) * 3 + (2 - 1)) * (kLayout.fock_cutoff() + 1) + 0;
  CHECK(s.amplitudes()(want) == Complex(1.0, 0.0));
  CHECK(s.amplitudes().squaredNorm() == doctest::Approx(1.0));

  const QuantumState other = tensor_basis_state(1, 1, 0, kLayout);
  CHECK(std::abs(other.amplitudes().dot(s.amplitudes())) == 0.0);

  CHECK_THROWS_AS(tensor_basis_state(1, 1, 3, kLayout), std::invalid_argument);

  CHECK(psi_a(kLayout).squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("expectation values") {
  const QuantumState vac = tensor_basis_state(1, 1, 0, kLayout);
  CHECK(expectation(vac, identity_operator(kLayout)).real() == doctest::Approx(1.0));
  CHECK(expectation(vac, number_operator(kLayout)).real() == doctest::Approx(0.0));

  Vector v = Vector::Zero(kLayout.total_dim());
  v(kLayout.index(1, 1, 0)) = 1.0 / std::sqrt(2.0);
  v(kLayout.index(1, 1, 1)) = 1.0 / std::sqrt(2.0);
  const QuantumState superposition = QuantumState::ket(v);
  CHECK(expectation(superposition, zero_photon_projector(kLayout)).real() ==
        doctest::Approx(0.5).epsilon(1e-12));

  const SpaceLayout bigger(3);
  CHECK_THROWS_AS(expectation(vac, identity_operator(bigger)), std::invalid_argument);

  // Density-matrix branch.
  const QuantumState rho = QuantumState::density(superposition.as_density());
  CHECK(expectation(rho, zero_photon_projector(kLayout)).real() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("state validation catches bad inputs") {
  Vector v = Vector::Zero(kLayout.total_dim());
  v(0) = 0.9;
  CHECK_THROWS_AS(QuantumState::ket(v), std::invalid_argument);

  Matrix rho = Matrix::Zero(kLayout.total_dim(), kLayout.total_dim());
  rho(0, 0) = 0.5;
  CHECK_THROWS_AS(QuantumState::density(rho), std::invalid_argument);  // trace 0.5

  rho(0, 0) = 1.5;
  rho(1, 1) = -0.5;  // trace 1 but indefinite
  CHECK_THROWS_AS(QuantumState::density(rho), std::invalid_argument);

  rho.setZero();
  rho(0, 0) = 1.0;
  rho(0, 1) = 0.3;  // not Hermitian
  CHECK_THROWS_AS(QuantumState::density(rho), std::invalid_argument);
}

TEST_CASE("state labels resolve") {
  for (const auto& label : known_state_labels()) {
    REQUIRE(resolve_state_label(label, kLayout).has_value());
    CHECK(resolve_state_label(label, kLayout)->squaredNorm() == doctest::Approx(1.0));
  }
  CHECK_FALSE(resolve_state_label("bogus", kLayout).has_value());
  CHECK_FALSE(resolve_state_label("41", kLayout).has_value());

  const Vector bp = *resolve_state_label("bell_plus", kLayout);
  CHECK(bp(kLayout.index(1, 1, 0)).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(bp(kLayout.index(2, 2, 0)).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto basis = unshifted_subspace_basis(kLayout);
  REQUIRE(basis.size() == 5);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex overlap = basis[i].amplitudes().dot(basis[j].amplitudes());
      CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) < 1e-15);
    }
  }
}

}  // TEST_SUITE
