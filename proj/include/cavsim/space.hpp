#pragma once

#include <stdexcept>
#include <string>

namespace cavsim {

// Composite Hilbert space of two three-level ions and one cavity mode,
// ordered ion1 (x) ion2 (x) cavity. Ion levels are labelled 1..3, the cavity
// holds Fock states 0..n_max. The flat basis index is
//
//   index = ((ion1 - 1) * 3 + (ion2 - 1)) * (n_max + 1) + n_photon
//
// and every module must go through index()/unindex(); the ordering is part of
// the file-format and test contract.
class SpaceLayout {
 public:
  static constexpr int kIonLevels = 3;
  static constexpr int kNumIons = 2;

  explicit SpaceLayout(int fock_cutoff) : n_max_(fock_cutoff) {
    if (fock_cutoff < 1) {
      throw std::invalid_argument("SpaceLayout: fock_cutoff must be >= 1, got " +
                                  std::to_string(fock_cutoff));
    }
  }

  int fock_cutoff() const { return n_max_; }
  int fock_dim() const { return n_max_ + 1; }
  int total_dim() const { return kIonLevels * kIonLevels * fock_dim(); }

  int index(int ion1_level, int ion2_level, int n_photon) const {
    check_level(ion1_level, "ion1");
    check_level(ion2_level, "ion2");
    if (n_photon < 0 || n_photon > n_max_) {
      throw std::invalid_argument("SpaceLayout: photon number " + std::to_string(n_photon) +
                                  " outside 0.." + std::to_string(n_max_));
    }
    return ((ion1_level - 1) * kIonLevels + (ion2_level - 1)) * fock_dim() + n_photon;
  }

  struct BasisLabel {
    int ion1_level;
    int ion2_level;
    int n_photon;
  };

  BasisLabel unindex(int index) const {
    if (index < 0 || index >= total_dim()) {
      throw std::invalid_argument("SpaceLayout: basis index out of range");
    }
    const int n = index % fock_dim();
    const int ions = index / fock_dim();
    return BasisLabel{ions / kIonLevels + 1, ions % kIonLevels + 1, n};
  }

 private:
  static void check_level(int level, const char* which) {
    if (level < 1 || level > kIonLevels) {
      throw std::invalid_argument(std::string("SpaceLayout: ") + which + " level " +
                                  std::to_string(level) + " outside 1..3");
    }
  }

  int n_max_;
};

}  // namespace cavsim
