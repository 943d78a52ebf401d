#pragma once

#include <vector>

#include "cavsim/states.hpp"

namespace cavsim {

// Second-order degenerate perturbation theory for a subspace P of h_diag with
// common energy E_P:
//
//   H_eff = P V (E_P - H_D)^{-1}|_Q V P,
//
// returned as a full-space operator supported on the subspace. Preconditions
// (checked): subspace_projector is an orthogonal projector onto an eigenspace
// of h_diag; the coupling has no first-order block inside the subspace; the
// coupling does not connect the subspace to other states at energy E_P.
OperatorMatrix adiabatic_eliminate(const OperatorMatrix& h_diag, const OperatorMatrix& coupling,
                                   const OperatorMatrix& subspace_projector);

// First-order degenerate perturbation theory: P H_pert P expressed as a k x k
// matrix in the given orthonormal basis. Throws when the basis states are not
// kets or not orthonormal (tolerance 1e-10).
OperatorMatrix project_first_order(const OperatorMatrix& h_pert,
                                   const std::vector<QuantumState>& degenerate_subspace);

// Lifts a k x k matrix expressed in an orthonormal ket basis back to the full
// space: sum_ab M(a,b) |basis_a><basis_b|.
OperatorMatrix embed_in_full_space(const OperatorMatrix& block,
                                   const std::vector<QuantumState>& basis);

}  // namespace cavsim
