#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/initial_condition.hpp"
#include "beamflutter/integrate.hpp"
#include "beamflutter/sweep.hpp"

namespace beamflutter::app {

/// Malformed or invalid scenario input. `line` is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class ScenarioKind { Simulate, Sweep, Ucrit, Dispersion };
std::string_view to_string(ScenarioKind kind);

struct OutputSelection {
  bool trajectory = true;
  bool energies = true;
  bool tip = true;
  bool sweep_table = true;
};

struct ScenarioConfig {
  std::string name = "run";
  ScenarioKind kind = ScenarioKind::Simulate;
  BeamConfig beam;
  InitialCondition ic = ic::Equilibrium{};
  SimulationOptions simulation;
  OutputSelection outputs;
  std::string output_dir;  // empty: chosen by the caller

  // kind = sweep
  std::vector<GridAxis> grid;
  SweepMetric metric = SweepMetric::Classify;

  // kind = ucrit
  std::vector<double> ucrit_alphas{0.0};
  double bracket_lo = 100.0;
  double bracket_hi = 160.0;
  double ucrit_tolerance = 0.25;

  // kind = dispersion
  std::vector<double> dispersion_alphas{0.0, 1e-3, 1e-2, 1e-1, 1.0};
  double kmax = 50.0;
  int k_points = 501;
};

/// Parses the flat `key = value` / `key: value` format. `#` starts a comment.
/// A whole document wrapped in braces, e.g. `{U: 150, b2: 1}`, is also accepted;
/// inside braces list values must be bracketed.
ScenarioConfig parse_scenario(std::istream& in, const std::string& source = "<input>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Sets one key. Throws ConfigError on unknown keys or bad values.
void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Cross-field checks (beam parameters, grid non-empty for sweeps, ...).
void validate(const ScenarioConfig& cfg);

/// Every field written explicitly; parse_scenario on the output reproduces `cfg`.
void write_manifest(std::ostream& os, const ScenarioConfig& cfg);

}  // namespace beamflutter::app
