#include "beamflutter/app/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include "beamflutter/analysis.hpp"
#include "beamflutter/dispersion.hpp"

namespace beamflutter::app {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

class OutputSet {
 public:
  OutputSet(const fs::path& dir, const std::string& name) : dir_(dir), name_(name) {}

  template <typename Fn>
  void csv(const std::string& suffix, Fn&& write_body, const std::string& title, const std::string& xlabel,
           const std::string& ylabel, const std::vector<PlotSeries>& series, bool log_x, bool log_y) {
    const std::string csv_name = name_ + "_" + suffix + ".csv";
    {
      std::ofstream out = open_output(dir_ / csv_name);
      write_body(out);
    }
    files.push_back(dir_ / csv_name);
    const fs::path script = dir_ / (name_ + "_" + suffix + ".gp");
    std::ofstream gp = open_output(script);
    write_plot_script(gp, csv_name, title, xlabel, ylabel, series, log_x, log_y);
    files.push_back(script);
  }

  std::vector<fs::path> files;

 private:
  fs::path dir_;
  std::string name_;
};

void write_energies_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,kinetic,rotational,bending,quartic,prestress,E_definite,E_total\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const EnergyPair& e = traj.energy[i];
    os << fmt(traj.t[i]) << ',' << fmt(e.kinetic) << ',' << fmt(e.rotational) << ',' << fmt(e.bending) << ','
       << fmt(e.quartic) << ',' << fmt(e.prestress) << ',' << fmt(e.definite) << ',' << fmt(e.total) << '\n';
  }
}

void write_tip_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,w_tip,v_tip\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    os << fmt(traj.t[i]) << ',' << fmt(traj.w_tip[i]) << ',' << fmt(traj.v_tip[i]) << '\n';
}

std::vector<std::string> simulate_results(const ScenarioConfig& cfg, const Trajectory& traj) {
  std::vector<std::string> lines;
  lines.push_back(std::string("termination = ") +
                  (traj.termination == Termination::Completed ? "completed" : "blow_up"));
  if (traj.blow_up_time) lines.push_back("blow_up_time = " + fmt(*traj.blow_up_time));
  lines.push_back("samples = " + std::to_string(traj.size()));
  lines.push_back("E_initial = " + fmt(traj.energy.front().total));
  lines.push_back("E_max = " + fmt(energy_max(traj, 0.0, traj.t.back())));
  if (traj.size() >= 6) {
    const LogEnergyFit fit = fit_log_energy(traj, 0.5 * traj.t.back(), traj.t.back());
    lines.push_back("growth_slope = " + fmt(fit.slope));
    lines.push_back("growth_r_squared = " + fmt(fit.r_squared));
  }
  if (traj.termination == Termination::BlowUp || traj.t.back() >= kClassifyHorizon) {
    const StabilityReport report =
        classify(traj, cfg.beam.b2 > 0.0 ? kNonlinearThreshold : kLinearThreshold);
    lines.push_back("r = " + fmt(report.r));
    lines.push_back("verdict = " + std::string(to_string(report.verdict)));
  }
  return lines;
}

std::vector<std::string> run_simulate(const ScenarioConfig& cfg, OutputSet& out, bool& blew_up) {
  const Trajectory traj = simulate(cfg.beam, cfg.ic, cfg.simulation);
  blew_up = traj.termination == Termination::BlowUp;
  if (cfg.outputs.trajectory)
    out.csv("trajectory", [&](std::ostream& os) { write_trajectory_csv(os, traj, cfg.beam); }, cfg.name + " energy",
            "t", "energy", {{2, "E_total"}, {3, "E_definite"}}, false, true);
  if (cfg.outputs.energies)
    out.csv("energies", [&](std::ostream& os) { write_energies_csv(os, traj); }, cfg.name + " energy components",
            "t", "energy",
            {{2, "kinetic"}, {3, "rotational"}, {4, "bending"}, {5, "quartic"}, {8, "total"}}, false, true);
  if (cfg.outputs.tip)
    out.csv("tip", [&](std::ostream& os) { write_tip_csv(os, traj); }, cfg.name + " tip", "t", "tip",
            {{2, "w(L,t)"}, {3, "w_t(L,t)"}}, false, false);
  return simulate_results(cfg, traj);
}

std::vector<std::string> run_sweep(const ScenarioConfig& cfg, int jobs, OutputSet& out) {
  SweepOptions opts;
  opts.metric = cfg.metric;
  opts.ic = cfg.ic;
  opts.simulation = cfg.simulation;
  opts.jobs = jobs;
  const SweepTable table = sweep(cfg.grid, cfg.beam, opts);
  const int axes = static_cast<int>(table.axes.size());
  int y_column = axes + 1;  // r
  bool log_y = false;
  if (cfg.metric == SweepMetric::EnergyMax) {
    y_column = axes + 4;
    log_y = true;
  } else if (cfg.metric == SweepMetric::Lco) {
    y_column = axes + 6;
  }
  bool log_x = true;
  for (double v : cfg.grid.front().values) log_x = log_x && v > 0.0;
  if (cfg.outputs.sweep_table)
    out.csv("sweep", [&](std::ostream& os) { write_sweep_csv(os, table); }, cfg.name, std::string(to_string(table.axes.front())),
            std::string(to_string(cfg.metric)), {{y_column, std::string(to_string(cfg.metric))}}, log_x, log_y);
  int failed = 0;
  for (const auto& row : table.rows) failed += row.error.empty() ? 0 : 1;
  return {"cells = " + std::to_string(table.rows.size()), "failed_cells = " + std::to_string(failed)};
}

struct UcritRow {
  double alpha = 0.0;
  UcritResult result;
  std::string error;
};

std::vector<std::string> run_ucrit(const ScenarioConfig& cfg, int jobs, OutputSet& out) {
  std::vector<UcritRow> rows(cfg.ucrit_alphas.size());
  UcritOptions opts;
  opts.tolerance = cfg.ucrit_tolerance;
  opts.ic = cfg.ic;
  opts.classify.simulation = cfg.simulation;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i].alpha = cfg.ucrit_alphas[i];
      try {
        rows[i].result = find_ucrit(rows[i].alpha, cfg.beam, {cfg.bracket_lo, cfg.bracket_hi}, opts);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (int j = 0; j < n_threads; ++j) threads.emplace_back(worker);
  }
  bool log_x = true;
  for (double a : cfg.ucrit_alphas) log_x = log_x && a > 0.0;
  if (cfg.outputs.sweep_table)
    out.csv(
        "ucrit",
        [&](std::ostream& os) {
          os << "alpha,U_crit,lo,hi,probes,error\n";
          for (const auto& r : rows) {
            os << fmt(r.alpha) << ',';
            if (r.error.empty())
              os << fmt(r.result.estimate) << ',' << fmt(r.result.lo) << ',' << fmt(r.result.hi) << ','
                 << r.result.bisection_probes + r.result.validation_probes << ",\n";
            else
              os << ",,,," << '"' << r.error << "\"\n";
          }
        },
        cfg.name + " critical velocity", "alpha", "U_crit", {{2, "U_crit"}}, log_x, false);
  std::vector<std::string> lines;
  for (const auto& r : rows)
    lines.push_back("U_crit(" + fmt(r.alpha) + ") = " + (r.error.empty() ? fmt(r.result.estimate) : "error: " + r.error));
  return lines;
}

std::vector<std::string> run_dispersion(const ScenarioConfig& cfg, OutputSet& out) {
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < cfg.dispersion_alphas.size(); ++i)
    series.push_back({static_cast<int>(i) + 2, "alpha=" + fmt(cfg.dispersion_alphas[i])});
  out.csv("dispersion",
          [&](std::ostream& os) { write_dispersion_csv(os, cfg.dispersion_alphas, cfg.kmax, cfg.k_points); },
          cfg.name + " dispersion", "k", "omega", series, false, false);
  return {};
}

}  // namespace

fs::path resolve_output_dir(const std::optional<std::string>& from_cli, const ScenarioConfig& cfg) {
  if (from_cli && !from_cli->empty()) return *from_cli;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

void write_plot_script(std::ostream& os, const std::string& csv_name, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel, const std::vector<PlotSeries>& series,
                       bool log_x, bool log_y) {
  std::string png = csv_name;
  if (png.size() > 4 && png.ends_with(".csv")) png.resize(png.size() - 4);
  png += ".png";
  os << "set datafile separator \",\"\n"
     << "set terminal pngcairo size 1000,650\n"
     << "set output \"" << png << "\"\n"
     << "set title \"" << title << "\" noenhanced\n"
     << "set xlabel \"" << xlabel << "\" noenhanced\n"
     << "set ylabel \"" << ylabel << "\" noenhanced\n"
     << "set key outside right\n"
     << "set grid\n";
  if (log_x) os << "set logscale x\n";
  if (log_y) os << "set logscale y\n";
  os << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) os << ", \\\n     ";
    os << '"' << csv_name << "\" using 1:" << series[i].column << " skip 1 with lines title \"" << series[i].title
       << "\" noenhanced";
  }
  os << '\n';
}

void write_dispersion_csv(std::ostream& os, const std::vector<double>& alphas, double kmax, int points) {
  os << 'k';
  for (double a : alphas) os << ",omega_alpha_" << fmt(a);
  os << '\n';
  for (double k : linspace(0.0, kmax, points)) {
    os << fmt(k);
    for (double a : alphas) os << ',' << fmt(dispersion_omega(k, a));
    os << '\n';
  }
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunContext& ctx) {
  validate(cfg);
  fs::create_directories(ctx.output_dir);
  OutputSet out(ctx.output_dir, cfg.name);
  RunResult result;
  std::vector<std::string> results;
  switch (cfg.kind) {
    case ScenarioKind::Simulate:
      results = run_simulate(cfg, out, result.blew_up);
      break;
    case ScenarioKind::Sweep:
      results = run_sweep(cfg, ctx.jobs, out);
      break;
    case ScenarioKind::Ucrit:
      results = run_ucrit(cfg, ctx.jobs, out);
      break;
    case ScenarioKind::Dispersion:
      results = run_dispersion(cfg, out);
      break;
  }
  const fs::path manifest = ctx.output_dir / (cfg.name + ".manifest");
  {
    std::ofstream os = open_output(manifest);
    os << "# beamflutter scenario manifest: every setting resolved; rerun with `beamflutter run <this file>`\n";
    write_manifest(os, cfg);
    if (!results.empty()) {
      os << "\n# results\n";
      for (const auto& line : results) os << "# " << line << '\n';
    }
  }
  result.files = std::move(out.files);
  result.files.push_back(manifest);
  if (ctx.log) {
    *ctx.log << cfg.name << ':';
    for (const auto& line : results) *ctx.log << "\n  " << line;
    *ctx.log << '\n';
  }
  return result;
}

}  // namespace beamflutter::app
