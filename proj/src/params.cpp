#include "cavsim/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cavsim {

void SystemParams::validate() const {
  if (!(g > 0.0)) {
    throw std::invalid_argument("SystemParams: g must be > 0");
  }
  if (omega < 0.0 || kappa < 0.0 || gamma < 0.0) {
    throw std::invalid_argument("SystemParams: rates omega, kappa, gamma must be >= 0");
  }
  if (!std::isfinite(g) || !std::isfinite(delta) || !std::isfinite(omega) ||
      !std::isfinite(kappa) || !std::isfinite(gamma)) {
    throw std::invalid_argument("SystemParams: all rates must be finite");
  }
  if (fock_cutoff < 1) {
    throw std::invalid_argument("SystemParams: fock_cutoff must be >= 1");
  }
}

std::vector<std::string> SystemParams::regime_warnings() const {
  std::vector<std::string> warnings;
  std::ostringstream os;
  const double g2 = g * g;
  const double detuning_ratio = (delta == 0.0) ? std::numeric_limits<double>::infinity()
                                               : g2 / (delta * delta);
  if (detuning_ratio > 0.5) {
    os << "g^2/delta^2 = " << detuning_ratio
       << " is not small; the dispersive condition g^2/delta^2 << 1 is violated";
    warnings.push_back(os.str());
    os.str("");
  }
  const double drive_ratio = omega * std::abs(delta) / g2;
  if (drive_ratio > 0.2) {
    os << "omega*|delta|/g^2 = " << drive_ratio
       << " is not small; the Stark-selection condition (g^2/delta)^2 >> omega^2 is violated";
    warnings.push_back(os.str());
  }
  return warnings;
}

}  // namespace cavsim
