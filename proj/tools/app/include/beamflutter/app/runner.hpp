#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beamflutter/app/scenario.hpp"

namespace beamflutter::app {

inline constexpr const char* kOutputDirEnv = "BEAMFLUTTER_OUTPUT_DIR";

struct RunContext {
  std::filesystem::path output_dir = ".";
  int jobs = 1;
  std::ostream* log = nullptr;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  bool blew_up = false;
};

/// Command line beats the scenario's output_dir, which beats the environment; "." otherwise.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& from_cli, const ScenarioConfig& cfg);

/// Executes the scenario and writes its CSVs, plot scripts and `<name>.manifest`.
/// Blow-up is a result, not an error.
RunResult run_scenario(const ScenarioConfig& cfg, const RunContext& ctx);

struct PlotSeries {
  int column;  // 1-based CSV column
  std::string title;
};

/// Gnuplot script rendering `csv_name` (relative to the script) to a PNG next to it.
void write_plot_script(std::ostream& os, const std::string& csv_name, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel, const std::vector<PlotSeries>& series,
                       bool log_x, bool log_y);

/// Columns k, then omega for each alpha.
void write_dispersion_csv(std::ostream& os, const std::vector<double>& alphas, double kmax, int points);

}  // namespace beamflutter::app
