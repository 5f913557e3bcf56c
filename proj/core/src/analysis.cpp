#include "beamflutter/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamflutter {

namespace {
// Sample times are k * dt * stride; accept tiny representation error at window ends.
constexpr double kTimeSlack = 1e-9;
}  // namespace

std::string_view to_string(Verdict verdict) { return verdict == Verdict::Stable ? "stable" : "unstable"; }

double energy_max(const Trajectory& traj, double t_a, double t_b) {
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.t[i] < t_a - kTimeSlack || traj.t[i] > t_b + kTimeSlack) continue;
    best = std::max(best, traj.energy[i].total);
    any = true;
  }
  if (!any) throw std::invalid_argument("energy_max: no samples in the requested window");
  return best;
}

LogEnergyFit fit_log_energy(const Trajectory& traj, double t_a, double t_b) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.t[i];
    const double e = traj.energy[i].total;
    if (t < t_a - kTimeSlack || t > t_b + kTimeSlack || !(e > 0.0)) continue;
    const double y = std::log(e);
    n += 1;
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
    syy += y * y;
  }
  if (n < 3) throw std::invalid_argument("fit_log_energy: fewer than 3 positive samples in window");
  const double cov = sxy - sx * sy / n;
  const double var_t = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  LogEnergyFit fit;
  fit.slope = cov / var_t;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = var_y > 0.0 ? (cov * cov) / (var_t * var_y) : 1.0;
  return fit;
}

StabilityReport classify(const Trajectory& traj, double threshold) {
  StabilityReport report;
  report.threshold = threshold;
  if (traj.termination == Termination::BlowUp) {
    report.verdict = Verdict::Unstable;
    report.blow_up_time = traj.blow_up_time;
    report.r = std::numeric_limits<double>::infinity();
    report.e_max_first = energy_max(traj, 0.0, std::min(kClassifySplit, traj.t.back()));
    report.e_max_second = std::numeric_limits<double>::infinity();
    if (traj.size() >= 3) report.growth_slope = fit_log_energy(traj, 0.5 * traj.t.back(), traj.t.back()).slope;
    return report;
  }
  if (traj.t.back() < kClassifyHorizon - kTimeSlack)
    throw std::invalid_argument("classify: trajectory must reach t = 40");
  report.e_max_first = energy_max(traj, 0.0, kClassifySplit);
  report.e_max_second = energy_max(traj, kClassifySplit, kClassifyHorizon);
  report.r = report.e_max_second / report.e_max_first;
  report.verdict = report.r > threshold ? Verdict::Unstable : Verdict::Stable;
  report.growth_slope = fit_log_energy(traj, 0.5 * traj.t.back(), traj.t.back()).slope;
  return report;
}

StabilityReport classify(const BeamConfig& cfg, const InitialCondition& ic, const ClassifyOptions& options) {
  SimulationOptions sim = options.simulation;
  sim.T = kClassifyHorizon;
  const double threshold = options.threshold.value_or(cfg.b2 > 0.0 ? kNonlinearThreshold : kLinearThreshold);
  return classify(simulate(cfg, ic, sim), threshold);
}

namespace {

Verdict probe(const BeamConfig& base, const std::function<void(BeamConfig&, double)>& configure, double x,
              const UcritOptions& options) {
  BeamConfig cfg = base;
  configure(cfg, x);
  return classify(cfg, options.ic, options.classify).verdict;
}

}  // namespace

FlipResult find_verdict_flip(const BeamConfig& cfg_base, const std::function<void(BeamConfig&, double)>& configure,
                             std::pair<double, double> bracket, Verdict low_verdict, double relative_tolerance,
                             const UcritOptions& options) {
  auto [lo, hi] = bracket;
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("find_verdict_flip: need 0 < lo < hi");
  const Verdict high_verdict = low_verdict == Verdict::Stable ? Verdict::Unstable : Verdict::Stable;
  FlipResult result;
  int expansions = 0;
  while (probe(cfg_base, configure, lo, options) != low_verdict) {
    ++result.probes;
    if (++expansions > options.max_expansions) throw std::runtime_error("find_verdict_flip: lower bracket invalid");
    hi = lo;
    lo *= 0.5;
  }
  ++result.probes;
  expansions = 0;
  while (probe(cfg_base, configure, hi, options) != high_verdict) {
    ++result.probes;
    if (++expansions > options.max_expansions) throw std::runtime_error("find_verdict_flip: upper bracket invalid");
    lo = hi;
    hi *= 2.0;
  }
  ++result.probes;
  while (hi - lo > relative_tolerance * lo) {
    const double mid = std::sqrt(lo * hi);
    ++result.probes;
    if (probe(cfg_base, configure, mid, options) == low_verdict)
      lo = mid;
    else
      hi = mid;
  }
  result.lo = lo;
  result.hi = hi;
  result.estimate = std::sqrt(lo * hi);
  return result;
}

UcritResult find_ucrit(double alpha, const BeamConfig& cfg_base, std::pair<double, double> bracket,
                       const UcritOptions& options) {
  auto [lo, hi] = bracket;
  if (!(lo >= 0.0 && hi > lo)) throw std::invalid_argument("find_ucrit: need 0 <= lo < hi");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("find_ucrit: tolerance must be positive");
  BeamConfig base = cfg_base;
  base.alpha = alpha;
  base.b2 = 0.0;
  UcritOptions opts = options;
  opts.classify.threshold = kLinearThreshold;

  auto verdict_at = [&](double U) {
    BeamConfig cfg = base;
    cfg.U = U;
    return classify(cfg, opts.ic, opts.classify).verdict;
  };

  UcritResult result;
  int expansions = 0;
  while (true) {
    ++result.validation_probes;
    if (verdict_at(lo) == Verdict::Stable) break;
    if (++expansions > opts.max_expansions || lo == 0.0)
      throw std::runtime_error("find_ucrit: no stable lower bracket found");
    hi = lo;
    lo *= 0.5;
  }
  expansions = 0;
  while (true) {
    ++result.validation_probes;
    if (verdict_at(hi) == Verdict::Unstable) break;
    if (++expansions > opts.max_expansions) throw std::runtime_error("find_ucrit: no unstable upper bracket found");
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > opts.tolerance) {
    const double mid = 0.5 * (lo + hi);
    ++result.bisection_probes;
    if (verdict_at(mid) == Verdict::Stable)
      lo = mid;
    else
      hi = mid;
  }
  result.lo = lo;
  result.hi = hi;
  result.estimate = 0.5 * (lo + hi);
  return result;
}

}  // namespace beamflutter
