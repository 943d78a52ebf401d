#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavsim/harness/presets.hpp"
#include "cavsim/harness/runner.hpp"

using namespace cavsim;
using namespace cavsim::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines_with(const std::string& text, const std::string& needle) {
  int count = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find(needle) != std::string::npos) ++count;
  }
  return count;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cavsim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kValidConfig = R"({
  "name": "mini",
  "params": {"delta": 3.0, "omega": 0.002, "kappa": 0.0, "gamma": 0.0, "fock_cutoff": 2},
  "initial_state": "bell_plus",
  "solver": "full_unitary",
  "t_final": 50.0,
  "n_samples": 25,
  "observables": ["pop_bell_plus", "p_zero_photons"],
  "output": {"stem": "mini", "format": "csv"}
})";

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("a well-formed config validates cleanly") {
  ExperimentConfig cfg;
  const auto diags = validate_config_text(kValidConfig, &cfg);
  CHECK(diags.empty());
  CHECK(cfg.name == "mini");
  CHECK(cfg.params.delta == 3.0);
  CHECK(cfg.solver == Solver::full_unitary);
  REQUIRE(cfg.t_final.has_value());
  CHECK(*cfg.t_final == 50.0);
}

TEST_CASE("validation pinpoints unresolvable labels with a line number") {
  const std::string text = R"({
  "params": {"delta": 3.0, "omega": 0.002},
  "initial_state": "nope",
  "solver": "full_unitary",
  "t_final": 10.0,
  "observables": ["p_zero_photons"]
})";
  const auto diags = validate_config_text(text, nullptr);
  REQUIRE(has_errors(diags));
  bool found = false;
  for (const auto& d : diags) {
    if (d.message.find("initial_state") != std::string::npos) {
      found = true;
      CHECK(d.line == 3);
      CHECK(d.format("cfg.json").find("cfg.json:3:") == 0);
    }
  }
  CHECK(found);
}

TEST_CASE("validation catches structural mistakes") {
  auto diag_messages = [](const std::string& text) {
    std::string all;
    for (const auto& d : validate_config_text(text, nullptr)) all += d.message + "\n";
    return all;
  };

  CHECK(diag_messages(R"({"solver": "magic", "t_final": 1.0,
                          "observables": ["p_zero_photons"]})")
            .find("unknown solver") != std::string::npos);

  CHECK(diag_messages(R"({"solver": "full_unitary", "t_final": 1.0, "n_gates": 2,
                          "observables": ["p_zero_photons"]})")
            .find("exactly one of t_final and n_gates") != std::string::npos);

  CHECK(diag_messages(R"({"solver": "mcwf", "t_final": 1.0,
                          "observables": ["p_zero_photons"]})")
            .find("requires n_traj") != std::string::npos);

  CHECK(diag_messages(R"({"solver": "full_unitary", "t_final": 1.0, "n_traj": 10,
                          "observables": ["p_zero_photons"]})")
            .find("only valid for solver mcwf") != std::string::npos);

  CHECK(diag_messages(R"({"solver": "full_unitary", "t_final": 1.0,
                          "observables": ["pop_xyz"]})")
            .find("unknown observable") != std::string::npos);

  CHECK(diag_messages(R"({"solvr": "full_unitary", "t_final": 1.0,
                          "observables": ["p_zero_photons"]})")
            .find("unknown key") != std::string::npos);

  CHECK(diag_messages(R"({"solver": "full_unitary", "t_final": 1.0,
                          "observables": ["p_zero_photons"], "output": {"format": "xml"}})")
            .find("output.format") != std::string::npos);

  // Parse errors carry the offending line.
  const auto parse_diags = validate_config_text("{\n  \"name\": \"x\",\n  oops\n}", nullptr);
  REQUIRE(parse_diags.size() == 1);
  CHECK(parse_diags[0].line == 3);
}

TEST_CASE("regime warnings surface as warnings, not errors") {
  const std::string strong_coupling = R"({
  "params": {"delta": 1.0, "omega": 0.001},
  "solver": "full_unitary",
  "t_final": 10.0,
  "observables": ["p_zero_photons"]
})";
  const auto diags = validate_config_text(strong_coupling, nullptr);
  CHECK_FALSE(has_errors(diags));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Diagnostic::Severity::warning);
  CHECK(diags[0].message.find("g^2/delta^2") != std::string::npos);

  const std::string strong_drive = R"({
  "params": {"delta": 3.0, "omega": 0.34},
  "solver": "full_unitary",
  "t_final": 10.0,
  "observables": ["p_zero_photons"]
})";
  const auto drive_diags = validate_config_text(strong_drive, nullptr);
  CHECK_FALSE(has_errors(drive_diags));
  REQUIRE(drive_diags.size() == 1);
  CHECK(drive_diags[0].message.find("Stark-selection") != std::string::npos);
}

TEST_CASE("preset registry") {
  REQUIRE(find_preset("fig4") != nullptr);
  CHECK(find_preset("fig4")->runs.size() == 1);
  CHECK(find_preset("fig4")->runs[0].params.delta == 3.0);
  CHECK(find_preset("fig4")->runs[0].params.omega == 2.0e-3);

  REQUIRE(find_preset("fig5") != nullptr);
  REQUIRE(find_preset("fig5")->runs.size() == 2);
  CHECK(find_preset("fig5")->runs[0].params.kappa == 0.0);
  CHECK(find_preset("fig5")->runs[1].params.kappa == 1.0);
  CHECK(find_preset("fig5")->runs[1].solver == Solver::lindblad);
  CHECK(find_preset("fig5")->runs[0].n_gates == 5);

  REQUIRE(find_preset("fig6") != nullptr);
  REQUIRE(find_preset("fig6")->runs.size() == 2);
  for (const auto& run : find_preset("fig6")->runs) {
    CHECK(run.solver == Solver::mcwf);
    CHECK(run.params.kappa == 0.5);
    CHECK(run.n_traj == 500);
    CHECK(run.seed == 42);
  }

  CHECK(find_preset("does_not_exist") == nullptr);

  // Every preset run must itself pass validation when serialized.
  for (const auto& preset : presets()) {
    for (const auto& run : preset.runs) {
      const auto diags = validate_config_text(config_to_json_text(run), nullptr);
      CHECK_FALSE(has_errors(diags));
    }
  }
}

TEST_CASE("preset listing is informative, sorted and stable") {
  const std::string listing = format_preset_listing();
  CHECK(listing.find("fig4") != std::string::npos);
  CHECK(listing.find("delta=3") != std::string::npos);
  // Both gamma variants with the discrepancy note.
  CHECK(listing.find("gamma=0.0005") != std::string::npos);
  CHECK(listing.find("gamma=5e-05") != std::string::npos);
  CHECK(listing.find("disagree") != std::string::npos);
  CHECK(listing == format_preset_listing());

  // Sorted by name.
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("fig4 preset run: files, shape and the zero-photon floor") {
  const fs::path dir = fresh_dir("fig4");
  RunnerOptions options;
  options.out_dir = dir.string();
  const RunResult result = run_experiment(find_preset("fig4")->runs[0], options);

  REQUIRE(fs::exists(result.data_file));
  REQUIRE(fs::exists(result.manifest_file));

  const std::string csv = slurp(result.data_file);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "time,pop_bell_plus,pop_bell_minus,p_zero_photons");
  int rows = 0;
  std::string line;
  const auto columns = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',') + 1;
  };
  const auto want_cols = columns(header);
  while (std::getline(is, line)) {
    CHECK(columns(line) == want_cols);
    ++rows;
  }
  CHECK(rows == 2001);

  // The published claim behind this preset: zero photons above 0.999.
  double min_p0 = 1.0;
  for (double v : result.series.channel("p_zero_photons").values) min_p0 = std::min(min_p0, v);
  CHECK(min_p0 > 0.999);

  CHECK(result.manifest.at("warnings").empty());
  CHECK(result.manifest.at("convergence").at("fock_cutoff_check").at("pass").get<bool>());
  CHECK(result.manifest.at("convergence").at("dt_halving_check").at("pass").get<bool>());
  CHECK(result.manifest.at("data_file").get<std::string>() == "fig4.csv");
  CHECK(result.manifest.at("config").at("params").at("delta").get<double>() == 3.0);
}

TEST_CASE("csv values round-trip at full precision") {
  const fs::path dir = fresh_dir("roundtrip");
  ExperimentConfig cfg;
  const auto diags = validate_config_text(kValidConfig, &cfg);
  REQUIRE_FALSE(has_errors(diags));
  RunnerOptions options;
  options.out_dir = dir.string();
  const RunResult result = run_experiment(cfg, options);

  std::istringstream is(slurp(result.data_file));
  std::string line;
  std::getline(is, line);  // header
  for (std::size_t k = 0; k < result.series.times.size(); ++k) {
    REQUIRE(std::getline(is, line));
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == result.series.times[k]);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == result.series.channels[0].values[k]);
  }
}

TEST_CASE("mcwf runs are byte-reproducible and thread invariant") {
  const std::string mcwf_config = R"({
  "name": "mcwf_mini",
  "params": {"delta": 3.0, "omega": 0.05, "kappa": 0.3, "gamma": 0.05, "fock_cutoff": 2},
  "initial_state": "bell_plus",
  "solver": "mcwf",
  "t_final": 30.0,
  "n_samples": 15,
  "n_traj": 24,
  "seed": 7,
  "observables": ["pop_bell_plus", "p_zero_photons"],
  "output": {"stem": "mcwf_mini", "format": "csv"}
})";
  ExperimentConfig cfg;
  REQUIRE_FALSE(has_errors(validate_config_text(mcwf_config, &cfg)));

  const fs::path dir_a = fresh_dir("mcwf_a");
  const fs::path dir_b = fresh_dir("mcwf_b");
  const fs::path dir_c = fresh_dir("mcwf_c");

  RunnerOptions options_a;
  options_a.out_dir = dir_a.string();
  RunnerOptions options_b;
  options_b.out_dir = dir_b.string();
  RunnerOptions options_c;
  options_c.out_dir = dir_c.string();
  options_c.threads_override = 2;

  const RunResult a = run_experiment(cfg, options_a);
  const RunResult b = run_experiment(cfg, options_b);
  const RunResult c = run_experiment(cfg, options_c);

  CHECK(slurp(a.data_file) == slurp(b.data_file));
  CHECK(slurp(a.data_file) == slurp(c.data_file));

  // The stderr columns ride along in the CSV for ensemble runs.
  CHECK(count_lines_with(slurp(a.data_file), "pop_bell_plus_stderr") == 1);

  // A different seed changes the bytes.
  RunnerOptions options_d;
  options_d.out_dir = fresh_dir("mcwf_d").string();
  options_d.seed_override = 8;
  const RunResult d = run_experiment(cfg, options_d);
  CHECK(slurp(a.data_file) != slurp(d.data_file));
  CHECK(d.manifest.at("effective").at("seed").get<std::uint64_t>() == 8);
}

TEST_CASE("json output format") {
  const fs::path dir = fresh_dir("jsonfmt");
  ExperimentConfig cfg;
  REQUIRE_FALSE(has_errors(validate_config_text(kValidConfig, &cfg)));
  cfg.output.format = "json";
  RunnerOptions options;
  options.out_dir = dir.string();
  const RunResult result = run_experiment(cfg, options);
  const auto parsed = nlohmann::json::parse(slurp(result.data_file));
  CHECK(parsed.at("times").size() == 26);
  CHECK(parsed.at("channels").contains("pop_bell_plus"));
}

TEST_CASE("gate-channel restriction for n_gates runs") {
  const std::string bad = R"({
  "params": {"delta": 3.0, "omega": 0.002},
  "solver": "full_unitary",
  "n_gates": 1,
  "observables": ["pop_33"]
})";
  const auto diags = validate_config_text(bad, nullptr);
  CHECK(has_errors(diags));

  const std::string good = R"({
  "params": {"delta": 3.0, "omega": 0.002},
  "solver": "full_unitary",
  "n_gates": 1,
  "observables": ["fidelity", "pop_psi_a"]
})";
  CHECK_FALSE(has_errors(validate_config_text(good, nullptr)));
}

}  // TEST_SUITE
