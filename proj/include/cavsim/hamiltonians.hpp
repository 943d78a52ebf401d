#pragma once

#include "cavsim/params.hpp"
#include "cavsim/states.hpp"

namespace cavsim {

// All Hamiltonians live in the rotating frame in which the cavity term is
// delta * a^dag a and the laser drive is time independent (laser resonant
// with the bare |2> -> |3> transition).

// delta * a^dag a + g [ a^dag (sigma^1_23 + sigma^2_23) + h.c. ], no drive.
OperatorMatrix build_full_hamiltonian(const SystemParams& params, const SpaceLayout& layout);

// The g [ a^dag (sigma^1_23 + sigma^2_23) + h.c. ] coupling term alone.
OperatorMatrix cavity_coupling(const SystemParams& params, const SpaceLayout& layout);

// Antisymmetric laser drive omega (sigma^1_32 - sigma^2_32 + h.c.).
OperatorMatrix build_drive(const SystemParams& params, const SpaceLayout& layout);

struct HamiltonianSet {
  OperatorMatrix h_full;        // rotating-frame cavity-ion Hamiltonian, no drive
  OperatorMatrix h_drive;       // the laser term
  OperatorMatrix h_eff_cavity;  // second-order cavity shift on the zero-photon block
  OperatorMatrix h_gate;        // first-order drive on the unshifted subspace,
                                // embedded in the full space
};

// Builds the full set; h_eff_cavity comes from adiabatic elimination of the
// photon states and h_gate from projecting the drive onto the unshifted
// five-state subspace. Every member is Hermitian within 1e-12.
HamiltonianSet build_hamiltonians(const SystemParams& params, const SpaceLayout& layout);

}  // namespace cavsim
