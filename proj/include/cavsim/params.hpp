#pragma once

#include <string>
#include <vector>

#include "cavsim/space.hpp"

namespace cavsim {

// Physical constants of one run. g sets the rate scale; delta is the cavity
// detuning from the |2>-|3> transition; omega the laser Rabi frequency; kappa
// the cavity decay rate; gamma the |3> -> |2> linewidth per ion. Bare level
// frequencies never appear: only delta enters the rotating-frame dynamics.
struct SystemParams {
  double g = 1.0;
  double delta = 3.0;
  double omega = 2.0e-3;
  double kappa = 0.0;
  double gamma = 0.0;
  int fock_cutoff = 2;

  SpaceLayout layout() const { return SpaceLayout(fock_cutoff); }

  // Throws std::invalid_argument when g <= 0, any rate is negative, or the
  // Fock cutoff is below 1.
  void validate() const;

  // Perturbative-regime diagnostics. The scheme needs g^2/delta^2 << 1 and
  // (g^2/delta)^2 >> omega^2; a warning is emitted when g^2/delta^2 > 0.5 or
  // omega*|delta|/g^2 > 0.2. Warnings, not errors: the thresholds mark where
  // the effective description starts to degrade, not where it is wrong.
  std::vector<std::string> regime_warnings() const;
};

}  // namespace cavsim
