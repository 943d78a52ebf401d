#pragma once

#include "cavsim/harness/config.hpp"

namespace cavsim::harness {

// A preset bundles one or more ready-made runs. fig5 expands to the kappa=0
// and kappa=1 g pair, fig6 to the two published gamma values.
struct Preset {
  std::string name;
  std::string summary;
  std::vector<ExperimentConfig> runs;
};

// Sorted by name; stable across invocations.
const std::vector<Preset>& presets();

const Preset* find_preset(const std::string& name);

// Human-readable listing of every preset with its parameter values.
std::string format_preset_listing();

}  // namespace cavsim::harness
