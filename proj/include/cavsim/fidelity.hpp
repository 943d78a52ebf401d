#pragma once

#include "cavsim/states.hpp"

namespace cavsim {

// |<ref|psi>|^2 for kets, <ref|rho|ref> for density matrices. The reference
// must be a ket; global phase drops out by construction.
double fidelity(const QuantumState& state, const QuantumState& reference);

}  // namespace cavsim
