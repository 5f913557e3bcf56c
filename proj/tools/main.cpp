#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beamflutter/app/presets.hpp"
#include "beamflutter/app/runner.hpp"
#include "beamflutter/app/scenario.hpp"
#include "beamflutter/dispersion.hpp"

namespace {

namespace app = beamflutter::app;

enum ExitCode { kOk = 0, kUsage = 1, kConfig = 2, kRuntime = 3 };

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& items) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw app::ConfigError("override", 0, "expected key=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Flutter simulations of a clamped-free extensible beam with rotational inertia"};
  cli.require_subcommand(1);

  std::optional<std::string> output_dir;
  int jobs = 1;
  bool quiet = false;
  cli.add_option("--output-dir", output_dir, "Directory for CSV, plot scripts and manifests");
  cli.add_option("--jobs", jobs, "Worker threads for sweeps and critical velocity searches")
      ->check(CLI::PositiveNumber);
  cli.add_flag("--quiet", quiet, "Suppress the result summary on stdout");

  std::string config_path;
  auto* simulate_cmd = cli.add_subcommand("simulate", "Run one scenario file");
  simulate_cmd->add_option("config", config_path, "Scenario file")->required();
  auto* run_cmd = cli.add_subcommand("run", "Run a scenario file or manifest of any kind");
  run_cmd->add_option("config", config_path, "Scenario file")->required();
  auto* sweep_cmd = cli.add_subcommand("sweep", "Run a parameter sweep scenario file");
  sweep_cmd->add_option("config", config_path, "Scenario file")->required();

  double alpha = 0.0;
  std::vector<double> bracket;
  double tol = 0.25;
  std::vector<std::string> ucrit_overrides;
  auto* ucrit_cmd = cli.add_subcommand("ucrit", "Bisect the critical flow velocity for one alpha");
  ucrit_cmd->add_option("--alpha", alpha, "Rotational inertia coefficient")->required();
  ucrit_cmd->add_option("--bracket", bracket, "Initial bracket LO HI")->expected(2);
  ucrit_cmd->add_option("--tol", tol, "Bracket width tolerance in U")->check(CLI::PositiveNumber);
  ucrit_cmd->add_option("settings", ucrit_overrides, "Additional key=value settings");

  std::string preset_name;
  bool emit_only = false;
  bool list_presets = false;
  std::vector<std::string> preset_overrides;
  auto* preset_cmd = cli.add_subcommand("preset", "Run or emit the scenario set of a figure protocol");
  preset_cmd->add_option("name", preset_name, "Preset name");
  preset_cmd->add_flag("--emit-only", emit_only, "Write the resolved scenario files without running");
  preset_cmd->add_flag("--list", list_presets, "List available presets");
  preset_cmd->add_option("settings", preset_overrides, "key=value overrides, e.g. c=13");

  double disp_alpha = 0.0;
  double kmax = 0.0;
  int points = 101;
  auto* disp_cmd = cli.add_subcommand("dispersion", "Print omega(k) for one alpha as CSV");
  disp_cmd->add_option("--alpha", disp_alpha, "Rotational inertia coefficient")->required()->check(CLI::NonNegativeNumber);
  disp_cmd->add_option("--kmax", kmax, "Largest wavenumber")->required()->check(CLI::PositiveNumber);
  disp_cmd->add_option("--points", points, "Number of wavenumbers")->check(CLI::Range(2, 1000000));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::ostream* log = quiet ? nullptr : &std::cout;
  try {
    auto run_one = [&](const app::ScenarioConfig& cfg) {
      app::RunContext ctx{app::resolve_output_dir(output_dir, cfg), jobs, log};
      const app::RunResult result = app::run_scenario(cfg, ctx);
      if (log)
        for (const auto& f : result.files) *log << "  wrote " << f.string() << '\n';
    };

    if (*simulate_cmd || *run_cmd) {
      run_one(app::load_scenario(config_path));
    } else if (*sweep_cmd) {
      app::ScenarioConfig cfg = app::load_scenario(config_path);
      if (cfg.kind == app::ScenarioKind::Simulate) cfg.kind = app::ScenarioKind::Sweep;
      app::validate(cfg);
      run_one(cfg);
    } else if (*ucrit_cmd) {
      app::ScenarioConfig cfg;
      cfg.name = "ucrit";
      for (const auto& [k, v] : parse_overrides(ucrit_overrides)) app::apply_setting(cfg, k, v);
      cfg.kind = app::ScenarioKind::Ucrit;
      cfg.ucrit_alphas = {alpha};
      cfg.ucrit_tolerance = tol;
      if (!bracket.empty()) {
        cfg.bracket_lo = bracket[0];
        cfg.bracket_hi = bracket[1];
      }
      run_one(cfg);
    } else if (*preset_cmd) {
      if (list_presets || preset_name.empty()) {
        for (const auto& p : app::preset_catalog()) std::cout << p.name << "\t" << p.description << '\n';
        return preset_name.empty() && !list_presets ? kUsage : kOk;
      }
      const auto set = app::make_preset(preset_name, parse_overrides(preset_overrides));
      for (const auto& cfg : set) {
        if (emit_only) {
          const std::filesystem::path dir = app::resolve_output_dir(output_dir, cfg);
          std::filesystem::create_directories(dir);
          const auto path = dir / (cfg.name + ".manifest");
          std::ofstream out(path);
          if (!out) throw std::runtime_error("cannot write " + path.string());
          app::write_manifest(out, cfg);
          if (log) *log << path.string() << '\n';
        } else {
          run_one(cfg);
        }
      }
    } else if (*disp_cmd) {
      app::write_dispersion_csv(std::cout, {disp_alpha}, kmax, points);
    }
  } catch (const app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
