#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/fem.hpp"
#include "beamflutter/initial_condition.hpp"
#include "beamflutter/integrate.hpp"

namespace beamflutter {

/// max of the total energy over samples with t_a <= t <= t_b.
/// Throws std::invalid_argument if the window holds no samples.
double energy_max(const Trajectory& traj, double t_a, double t_b);

struct LogEnergyFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (t, log E_total) for samples in [t_a, t_b].
LogEnergyFit fit_log_energy(const Trajectory& traj, double t_a, double t_b);

enum class Verdict { Stable, Unstable };
std::string_view to_string(Verdict verdict);

struct StabilityReport {
  double r = 0.0;  // E_max(20, 40) / E_max(0, 20)
  Verdict verdict = Verdict::Stable;
  double threshold = 1.0;     // Unstable iff r > threshold
  double growth_slope = 0.0;  // log-energy slope over the second half of the run
  double e_max_first = 0.0;
  double e_max_second = 0.0;
  std::optional<double> blow_up_time;
};

/// Ratio rule for linear runs; nonlinear runs (b2 > 0) use a dead-band.
inline constexpr double kLinearThreshold = 1.0;
inline constexpr double kNonlinearThreshold = 1.05;
inline constexpr double kClassifyHorizon = 40.0;
inline constexpr double kClassifySplit = 20.0;

struct ClassifyOptions {
  SimulationOptions simulation{};  // T is overridden with 40
  /// Overrides the automatic threshold choice when set.
  std::optional<double> threshold;
};

/// Simulates to t = 40 and applies  r > threshold  =>  Unstable.
/// A blow-up before t = 40 is Unstable with blow_up_time set.
StabilityReport classify(const BeamConfig& cfg, const InitialCondition& ic, const ClassifyOptions& options = {});
/// Classification of an existing T >= 40 trajectory.
StabilityReport classify(const Trajectory& traj, double threshold);

struct UcritResult {
  double estimate = 0.0;  // midpoint of the final bracket
  double lo = 0.0;        // classifies Stable
  double hi = 0.0;        // classifies Unstable
  int bisection_probes = 0;
  int validation_probes = 0;
};

struct UcritOptions {
  double tolerance = 0.25;
  int max_expansions = 6;
  ClassifyOptions classify{};
  InitialCondition ic = ic::Equilibrium{};
};

/// Bisection on U with the linear classifier (b2 is forced to 0) until the
/// bracket is narrower than the tolerance. An invalid bracket is expanded
/// geometrically (x2 up / x0.5 down) up to `max_expansions` times before
/// throwing std::runtime_error.
UcritResult find_ucrit(double alpha, const BeamConfig& cfg_base, std::pair<double, double> bracket,
                       const UcritOptions& options = {});

/// Generic bisection for the parameter where the verdict flips from `low_verdict`
/// (at lo) to the opposite (at hi). `configure` writes the parameter into a config.
struct FlipResult {
  double lo = 0.0;
  double hi = 0.0;
  double estimate = 0.0;
  int probes = 0;
};
FlipResult find_verdict_flip(const BeamConfig& cfg_base, const std::function<void(BeamConfig&, double)>& configure,
                             std::pair<double, double> bracket, Verdict low_verdict, double relative_tolerance,
                             const UcritOptions& options = {});

struct LcoMetrics {
  bool detected = false;
  double amplitude = 0.0;
  double period = 0.0;
  double transient_time = 0.0;
  double mode2_correlation = 0.0;
  int cycles = 0;  // full periods inside the non-transient window
  std::vector<std::string> warnings;
};

struct LcoOptions {
  double no_lco_amplitude = 1e-8;
  double prominence_fraction = 0.01;
  double settle_fraction = 0.05;
  int min_samples_per_period = 20;
};

/// Limit-cycle metrics from the tip displacement of a trajectory.
/// Throws std::invalid_argument when fewer than 20 samples resolve one period.
LcoMetrics lco_extract(const Trajectory& traj, const FemSpace& space, const LcoOptions& options = {});

/// Indices of local maxima whose topographic prominence is at least `min_prominence`.
std::vector<std::size_t> find_peaks(const std::vector<double>& series, double min_prominence);

/// L2 correlation of a discrete deflection with the second cantilever mode,
/// oriented so that the mode's tip value is positive.
double mode2_correlation(const Eigen::VectorXd& w, const FemSpace& space, const Eigen::MatrixXd& mass);

}  // namespace beamflutter
