#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamflutter/analysis.hpp"
#include "beamflutter/beam_config.hpp"
#include "beamflutter/initial_condition.hpp"
#include "beamflutter/integrate.hpp"

namespace beamflutter {

/// Parameters a sweep grid may vary. `AlphaK1` sets alpha and k1 together.
enum class SweepAxis { U, Alpha, K0, K1, B2, AlphaK1 };
std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);
void apply_axis(BeamConfig& cfg, SweepAxis axis, double value);

struct GridAxis {
  SweepAxis axis;
  std::vector<double> values;
};

enum class SweepMetric {
  Classify,   // T = 40 ratio rule
  EnergyMax,  // E_max(0, T) of a single run
  Lco         // limit-cycle metrics of a single run
};
std::string_view to_string(SweepMetric metric);
SweepMetric sweep_metric_from_string(std::string_view name);

struct SweepOptions {
  SweepMetric metric = SweepMetric::Classify;
  InitialCondition ic = ic::Equilibrium{};
  SimulationOptions simulation{};
  int jobs = 1;
  bool keep_energy_series = false;
};

struct SweepRow {
  std::vector<double> coordinates;
  std::optional<StabilityReport> report;
  std::optional<double> e_max_first;
  std::optional<double> e_max_second;
  std::optional<LcoMetrics> lco;
  std::optional<double> blow_up_time;
  std::vector<double> energy_series;
  std::string error;  // non-empty when the cell failed
};

struct SweepTable {
  std::vector<SweepAxis> axes;
  std::vector<SweepRow> rows;  // lexicographic in the grid coordinates
};

/// Evaluates every cell of the Cartesian product of the grid axes.
/// Cells run on `jobs` worker threads; per-cell failures are recorded, never thrown.
SweepTable sweep(const std::vector<GridAxis>& grid, const BeamConfig& cfg_base, const SweepOptions& options = {});

/// Grid columns, then r,verdict,growth_slope,E_max_0_20,E_max_20_40,lco_amplitude,lco_period.
/// An `error` column is appended; blank fields mean "not computed".
void write_sweep_csv(std::ostream& os, const SweepTable& table);

std::vector<double> linspace(double a, double b, int n);
/// 10^a .. 10^b in n points.
std::vector<double> logspace(double a, double b, int n);

}  // namespace beamflutter
