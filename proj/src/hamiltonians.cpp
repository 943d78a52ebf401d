#include "cavsim/hamiltonians.hpp"

#include "cavsim/perturbation.hpp"

namespace cavsim {

OperatorMatrix cavity_coupling(const SystemParams& params, const SpaceLayout& layout) {
  const Matrix a = annihilator(layout).mat;
  const Matrix s23 = sigma(1, 2, 3, layout).mat + sigma(2, 2, 3, layout).mat;
  Matrix v = params.g * (a.adjoint() * s23);
  v += v.adjoint().eval();
  return OperatorMatrix(std::move(v), true);
}

OperatorMatrix build_full_hamiltonian(const SystemParams& params, const SpaceLayout& layout) {
  params.validate();
  Matrix h = params.delta * number_operator(layout).mat;
  h += cavity_coupling(params, layout).mat;
  return OperatorMatrix(std::move(h), true);
}

OperatorMatrix build_drive(const SystemParams& params, const SpaceLayout& layout) {
  params.validate();
  Matrix d = params.omega * (sigma(1, 3, 2, layout).mat - sigma(2, 3, 2, layout).mat);
  d += d.adjoint().eval();
  return OperatorMatrix(std::move(d), true);
}

HamiltonianSet build_hamiltonians(const SystemParams& params, const SpaceLayout& layout) {
  HamiltonianSet set;
  set.h_full = build_full_hamiltonian(params, layout);
  set.h_drive = build_drive(params, layout);

  OperatorMatrix h_diag(params.delta * number_operator(layout).mat, true);
  set.h_eff_cavity =
      adiabatic_eliminate(h_diag, cavity_coupling(params, layout), zero_photon_projector(layout));

  const auto basis = unshifted_subspace_basis(layout);
  set.h_gate = embed_in_full_space(project_first_order(set.h_drive, basis), basis);
  return set;
}

}  // namespace cavsim
