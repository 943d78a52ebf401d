#pragma once

#include <string>
#include <vector>

namespace cavsim {

// Sampled observables over time. Channels flagged as probabilities must stay
// in [0,1]: populations within 1e-9, fidelities within 1e-7 (the looser bound
// matches the integrator's positivity tolerance). stderr_values is filled only
// by ensemble solvers.
struct Channel {
  std::string name;
  std::vector<double> values;
  std::vector<double> stderr_values;
  bool probability = true;
  double probability_tol = 1e-9;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<Channel> channels;

  // Throws std::runtime_error when times are not strictly increasing, channel
  // lengths disagree, or a probability channel leaves [0,1] beyond tolerance.
  void validate() const;

  const Channel& channel(const std::string& name) const;
  bool has_channel(const std::string& name) const;
};

}  // namespace cavsim
