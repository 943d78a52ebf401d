#pragma once

#include <cstdint>

namespace cavsim {

// xoshiro256++ (Blackman & Vigna), seeded through splitmix64. Chosen over
// std::mt19937_64 because the full draw sequence, including the uniform
// double conversion, is pinned here and therefore bit-portable across
// standard libraries. Trajectory k of a run uses the stream (seed, k), so
// ensembles are reproducible independent of scheduling order.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
    // Mix seed and stream through splitmix64 so nearby (seed, stream) pairs
    // land in unrelated states.
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]; used for jump thresholds so a threshold of
  // exactly zero (which would never trigger) cannot occur.
  double uniform_open_zero() { return 1.0 - uniform(); }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace cavsim
