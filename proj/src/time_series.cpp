#include "cavsim/time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace cavsim {

void TimeSeries::validate() const {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::runtime_error("TimeSeries: sample times must be strictly increasing");
    }
  }
  for (const auto& ch : channels) {
    if (ch.values.size() != times.size()) {
      throw std::runtime_error("TimeSeries: channel '" + ch.name + "' length mismatch");
    }
    if (!ch.stderr_values.empty() && ch.stderr_values.size() != times.size()) {
      throw std::runtime_error("TimeSeries: channel '" + ch.name + "' stderr length mismatch");
    }
    for (double v : ch.values) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("TimeSeries: channel '" + ch.name + "' has non-finite value");
      }
      if (ch.probability && (v < -ch.probability_tol || v > 1.0 + ch.probability_tol)) {
        throw std::runtime_error("TimeSeries: probability channel '" + ch.name +
                                 "' outside [0,1]: " + std::to_string(v));
      }
    }
  }
}

const Channel& TimeSeries::channel(const std::string& name) const {
  for (const auto& ch : channels) {
    if (ch.name == name) return ch;
  }
  throw std::out_of_range("TimeSeries: no channel named '" + name + "'");
}

bool TimeSeries::has_channel(const std::string& name) const {
  for (const auto& ch : channels) {
    if (ch.name == name) return true;
  }
  return false;
}

}  // namespace cavsim
