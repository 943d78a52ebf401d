#include "cavsim/harness/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace cavsim::harness {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Best-effort line lookup for semantic errors: first occurrence of the quoted
// key in the config text.
int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return line_of_offset(text, pos);
}

void check_unknown_keys(const json& object, const std::set<std::string>& known,
                        const std::string& scope, const std::string& text,
                        std::vector<Diagnostic>& diags) {
  for (const auto& [key, value] : object.items()) {
    if (!known.contains(key)) {
      diags.push_back({Diagnostic::Severity::error,
                       "unknown key '" + key + "'" + (scope.empty() ? "" : " in " + scope),
                       line_of_key(text, key)});
    }
  }
}

}  // namespace

std::string Diagnostic::format(const std::string& file) const {
  std::ostringstream os;
  if (!file.empty()) os << file << ":";
  if (line > 0) os << line << ":";
  if (!file.empty() || line > 0) os << " ";
  os << (severity == Severity::error ? "error: " : "warning: ") << message;
  return os.str();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::error) return true;
  }
  return false;
}

std::vector<std::string> gate_run_channels() {
  return {"fidelity", "pop_bell_plus", "pop_bell_minus", "pop_22", "pop_psi_a",
          "p_zero_photons"};
}

std::vector<std::string> known_channels() {
  std::vector<std::string> channels = {"p_zero_photons", "fidelity"};
  for (const auto& label : known_state_labels()) channels.push_back("pop_" + label);
  return channels;
}

std::vector<Diagnostic> validate_config_text(const std::string& text, ExperimentConfig* out) {
  std::vector<Diagnostic> diags;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    diags.push_back({Diagnostic::Severity::error, e.what(), line_of_offset(text, e.byte)});
    return diags;
  }
  if (!root.is_object()) {
    diags.push_back({Diagnostic::Severity::error, "config must be a JSON object", 1});
    return diags;
  }

  ExperimentConfig cfg;
  auto error = [&](const std::string& message, const std::string& key) {
    diags.push_back({Diagnostic::Severity::error, message, line_of_key(text, key)});
  };

  check_unknown_keys(root,
                     {"name", "params", "initial_state", "solver", "t_final", "n_gates",
                      "n_samples", "n_traj", "seed", "observables", "fidelity_reference",
                      "output"},
                     "", text, diags);

  try {
    if (root.contains("name")) cfg.name = root.at("name").get<std::string>();

    if (root.contains("params")) {
      const json& p = root.at("params");
      check_unknown_keys(p, {"delta", "omega", "kappa", "gamma", "fock_cutoff"},
                         "params (rates are in units of g; g itself is fixed to 1)", text,
                         diags);
      cfg.params.g = 1.0;
      if (p.contains("delta")) cfg.params.delta = p.at("delta").get<double>();
      if (p.contains("omega")) cfg.params.omega = p.at("omega").get<double>();
      if (p.contains("kappa")) cfg.params.kappa = p.at("kappa").get<double>();
      if (p.contains("gamma")) cfg.params.gamma = p.at("gamma").get<double>();
      if (p.contains("fock_cutoff")) cfg.params.fock_cutoff = p.at("fock_cutoff").get<int>();
    }
    try {
      cfg.params.validate();
    } catch (const std::exception& e) {
      error(e.what(), "params");
    }

    if (root.contains("initial_state")) {
      cfg.initial_state = root.at("initial_state").get<std::string>();
    }
    if (!resolve_state_label(cfg.initial_state, cfg.params.layout()).has_value()) {
      error("unresolvable initial_state label '" + cfg.initial_state + "'", "initial_state");
    }

    if (root.contains("solver")) {
      try {
        cfg.solver = solver_from_string(root.at("solver").get<std::string>());
      } catch (const std::exception& e) {
        error(e.what(), "solver");
      }
    }

    if (root.contains("t_final")) cfg.t_final = root.at("t_final").get<double>();
    if (root.contains("n_gates")) cfg.n_gates = root.at("n_gates").get<int>();
    if (cfg.t_final.has_value() == cfg.n_gates.has_value()) {
      error("exactly one of t_final and n_gates must be given",
            cfg.t_final.has_value() ? "t_final" : "solver");
    }
    if (cfg.t_final && !(*cfg.t_final > 0.0)) error("t_final must be > 0", "t_final");
    if (cfg.n_gates && *cfg.n_gates < 1) error("n_gates must be >= 1", "n_gates");
    if (cfg.n_gates && !(cfg.params.omega > 0.0)) {
      error("n_gates runs need omega > 0 to define the gate period", "n_gates");
    }

    if (root.contains("n_samples")) cfg.n_samples = root.at("n_samples").get<int>();
    if (cfg.n_samples < 1) error("n_samples must be >= 1", "n_samples");

    if (root.contains("n_traj")) cfg.n_traj = root.at("n_traj").get<int>();
    if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();
    if (cfg.solver == Solver::mcwf) {
      if (!cfg.n_traj) error("solver mcwf requires n_traj", "solver");
      if (!cfg.seed) error("solver mcwf requires seed", "solver");
      if (cfg.n_traj && *cfg.n_traj < 1) error("n_traj must be >= 1", "n_traj");
    } else {
      if (cfg.n_traj) error("n_traj is only valid for solver mcwf", "n_traj");
      if (cfg.seed) error("seed is only valid for solver mcwf", "seed");
    }

    if (root.contains("observables")) {
      cfg.observables = root.at("observables").get<std::vector<std::string>>();
    }
    if (cfg.observables.empty()) {
      error("observables must name at least one channel", "observables");
    }
    const auto allowed = cfg.n_gates ? gate_run_channels() : known_channels();
    for (const auto& name : cfg.observables) {
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
        error("unknown observable channel '" + name + "'" +
                  (cfg.n_gates ? " (gate runs provide: fidelity, pop_bell_plus, "
                                 "pop_bell_minus, pop_22, pop_psi_a, p_zero_photons)"
                               : ""),
              "observables");
      }
    }

    if (root.contains("fidelity_reference")) {
      const auto ref = root.at("fidelity_reference").get<std::string>();
      if (ref == "effective") {
        cfg.fidelity_reference = FidelityReference::effective_evolution;
      } else if (ref == "stroboscopic") {
        cfg.fidelity_reference = FidelityReference::stroboscopic;
      } else {
        error("fidelity_reference must be 'effective' or 'stroboscopic'", "fidelity_reference");
      }
    }
    if (cfg.fidelity_reference == FidelityReference::stroboscopic && !(cfg.params.omega > 0.0)) {
      error("stroboscopic fidelity reference needs omega > 0", "fidelity_reference");
    }

    if (root.contains("output")) {
      const json& o = root.at("output");
      check_unknown_keys(o, {"stem", "format"}, "output", text, diags);
      if (o.contains("stem")) cfg.output.stem = o.at("stem").get<std::string>();
      if (o.contains("format")) cfg.output.format = o.at("format").get<std::string>();
    } else {
      cfg.output.stem = cfg.name;
    }
    if (cfg.output.format != "csv" && cfg.output.format != "json") {
      error("output.format must be 'csv' or 'json'", "format");
    }
  } catch (const json::exception& e) {
    diags.push_back({Diagnostic::Severity::error, e.what(), 0});
  }

  for (const auto& warning : cfg.params.regime_warnings()) {
    diags.push_back({Diagnostic::Severity::warning, warning, line_of_key(text, "params")});
  }

  if (!has_errors(diags) && out != nullptr) *out = cfg;
  return diags;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg;
  const auto diags = validate_config_text(buffer.str(), &cfg);
  if (has_errors(diags)) {
    std::ostringstream os;
    os << "config validation failed:";
    for (const auto& d : diags) os << "\n  " << d.format(path);
    throw std::runtime_error(os.str());
  }
  return cfg;
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["params"] = {{"delta", cfg.params.delta},
                 {"omega", cfg.params.omega},
                 {"kappa", cfg.params.kappa},
                 {"gamma", cfg.params.gamma},
                 {"fock_cutoff", cfg.params.fock_cutoff}};
  j["initial_state"] = cfg.initial_state;
  j["solver"] = to_string(cfg.solver);
  if (cfg.t_final) j["t_final"] = *cfg.t_final;
  if (cfg.n_gates) j["n_gates"] = *cfg.n_gates;
  j["n_samples"] = cfg.n_samples;
  if (cfg.n_traj) j["n_traj"] = *cfg.n_traj;
  if (cfg.seed) j["seed"] = *cfg.seed;
  j["observables"] = cfg.observables;
  j["fidelity_reference"] = cfg.fidelity_reference == FidelityReference::effective_evolution
                                ? "effective"
                                : "stroboscopic";
  j["output"] = {{"stem", cfg.output.stem}, {"format", cfg.output.format}};
  return j.dump(2);
}

}  // namespace cavsim::harness
