#include "beamflutter/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace beamflutter {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::U: return "U";
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::K0: return "k0";
    case SweepAxis::K1: return "k1";
    case SweepAxis::B2: return "b2";
    case SweepAxis::AlphaK1: return "alpha_k1";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
  if (name == "U" || name == "u") return SweepAxis::U;
  if (name == "alpha") return SweepAxis::Alpha;
  if (name == "k0") return SweepAxis::K0;
  if (name == "k1") return SweepAxis::K1;
  if (name == "b2") return SweepAxis::B2;
  if (name == "alpha_k1" || name == "alpha=k1") return SweepAxis::AlphaK1;
  throw std::invalid_argument("unknown sweep axis: " + std::string(name));
}

void apply_axis(BeamConfig& cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::U: cfg.U = value; break;
    case SweepAxis::Alpha: cfg.alpha = value; break;
    case SweepAxis::K0: cfg.k0 = value; break;
    case SweepAxis::K1: cfg.k1 = value; break;
    case SweepAxis::B2: cfg.b2 = value; break;
    case SweepAxis::AlphaK1:
      cfg.alpha = value;
      cfg.k1 = value;
      break;
  }
}

std::string_view to_string(SweepMetric metric) {
  switch (metric) {
    case SweepMetric::Classify: return "classify";
    case SweepMetric::EnergyMax: return "energy_max";
    case SweepMetric::Lco: return "lco";
  }
  return "?";
}

SweepMetric sweep_metric_from_string(std::string_view name) {
  if (name == "classify") return SweepMetric::Classify;
  if (name == "energy_max") return SweepMetric::EnergyMax;
  if (name == "lco") return SweepMetric::Lco;
  throw std::invalid_argument("unknown sweep metric: " + std::string(name));
}

namespace {

SweepRow evaluate_cell(const std::vector<GridAxis>& grid, const std::vector<double>& coords,
                       const BeamConfig& base, const SweepOptions& options) {
  SweepRow row;
  row.coordinates = coords;
  try {
    BeamConfig cfg = base;
    for (std::size_t a = 0; a < grid.size(); ++a) apply_axis(cfg, grid[a].axis, coords[a]);
    cfg.validate();
    SimulationOptions sim = options.simulation;
    if (options.metric == SweepMetric::Classify) sim.T = kClassifyHorizon;
    const Trajectory traj = simulate(cfg, options.ic, sim);
    row.blow_up_time = traj.blow_up_time;
    if (options.keep_energy_series) row.energy_series = traj.total_energy();
    switch (options.metric) {
      case SweepMetric::Classify: {
        const StabilityReport report = classify(traj, cfg.b2 > 0.0 ? kNonlinearThreshold : kLinearThreshold);
        row.e_max_first = report.e_max_first;
        row.e_max_second = report.e_max_second;
        row.report = report;
        break;
      }
      case SweepMetric::EnergyMax:
        row.e_max_first = energy_max(traj, 0.0, traj.t.back());
        break;
      case SweepMetric::Lco:
        row.e_max_first = energy_max(traj, 0.0, traj.t.back());
        row.lco = lco_extract(traj, FemSpace(sim.n_elements, cfg.L));
        break;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

SweepTable sweep(const std::vector<GridAxis>& grid, const BeamConfig& cfg_base, const SweepOptions& options) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  SweepTable table;
  std::vector<GridAxis> sorted = grid;
  for (auto& axis : sorted) {
    if (axis.values.empty()) throw std::invalid_argument("sweep: axis without values");
    std::sort(axis.values.begin(), axis.values.end());
    table.axes.push_back(axis.axis);
  }

  std::vector<std::vector<double>> cells;
  std::vector<std::size_t> index(sorted.size(), 0);
  while (true) {
    std::vector<double> coords(sorted.size());
    for (std::size_t a = 0; a < sorted.size(); ++a) coords[a] = sorted[a].values[index[a]];
    cells.push_back(std::move(coords));
    std::size_t a = sorted.size();
    while (a-- > 0) {
      if (++index[a] < sorted[a].values.size()) break;
      index[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }

  table.rows.resize(cells.size());
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(cells.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      table.rows[i] = evaluate_cell(sorted, cells[i], cfg_base, options);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
  }
  return table;
}

namespace {

std::string fmt(std::optional<double> v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", *v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  for (SweepAxis axis : table.axes) os << to_string(axis) << ',';
  os << "r,verdict,growth_slope,E_max_0_20,E_max_20_40,lco_amplitude,lco_period,error\n";
  for (const SweepRow& row : table.rows) {
    for (double c : row.coordinates) os << fmt(c) << ',';
    if (row.report) {
      os << fmt(row.report->r) << ',' << to_string(row.report->verdict) << ',' << fmt(row.report->growth_slope);
    } else {
      os << ",,";
    }
    os << ',' << fmt(row.e_max_first) << ',' << fmt(row.e_max_second) << ',';
    if (row.lco && row.lco->detected)
      os << fmt(row.lco->amplitude) << ',' << fmt(row.lco->period);
    else if (row.lco)
      os << "0,";
    else
      os << ',';
    os << ',' << csv_escape(row.error) << '\n';
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("linspace: n must be positive");
  if (n == 1) return {a};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> out = linspace(a, b, n);
  for (double& v : out) v = std::pow(10.0, v);
  return out;
}

}  // namespace beamflutter
