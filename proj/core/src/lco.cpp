#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "beamflutter/analysis.hpp"
#include "beamflutter/cantilever_mode.hpp"

namespace beamflutter {

std::vector<std::size_t> find_peaks(const std::vector<double>& series, double min_prominence) {
  std::vector<std::size_t> peaks;
  const std::size_t n = series.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // Plateaus count once, at their left edge.
    if (!(series[i] > series[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < n && series[j + 1] == series[i]) ++j;
    if (j + 1 >= n || !(series[j + 1] < series[i])) continue;

    const double height = series[i];
    double left_base = height;
    for (std::size_t k = i; k-- > 0;) {
      if (series[k] > height) break;
      left_base = std::min(left_base, series[k]);
    }
    double right_base = height;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (series[k] > height) break;
      right_base = std::min(right_base, series[k]);
    }
    if (height - std::max(left_base, right_base) >= min_prominence) peaks.push_back(i);
    i = j;
  }
  return peaks;
}

double mode2_correlation(const Eigen::VectorXd& w, const FemSpace& space, const Eigen::MatrixXd& mass) {
  auto mode = std::make_shared<CantileverMode>(2, space.length());
  const Eigen::VectorXd s = space.interpolate(
      Profile{[mode](double x) { return (*mode)(x, 0); }, [mode](double x) { return (*mode)(x, 1); }});
  const double sign = (*mode)(space.length(), 0) > 0.0 ? 1.0 : -1.0;
  const double ww = w.dot(mass * w);
  const double ss = s.dot(mass * s);
  if (ww <= 0.0 || ss <= 0.0) return 0.0;
  return sign * w.dot(mass * s) / std::sqrt(ww * ss);
}

LcoMetrics lco_extract(const Trajectory& traj, const FemSpace& space, const LcoOptions& options) {
  LcoMetrics out;
  if (traj.size() < 3) throw std::invalid_argument("lco_extract: trajectory too short");
  const double t_end = traj.t.back();
  const double t_tail = 0.75 * t_end;
  const std::vector<double>& y = traj.w_tip;

  double tail_max = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (traj.t[i] >= t_tail) tail_max = std::max(tail_max, std::abs(y[i]));
  if (traj.termination == Termination::BlowUp) {
    out.warnings.push_back("trajectory blew up");
    return out;
  }
  if (tail_max < options.no_lco_amplitude) return out;

  const double prominence = options.prominence_fraction * tail_max;
  const std::vector<std::size_t> maxima = find_peaks(y, prominence);
  std::vector<double> negated(y.size());
  std::transform(y.begin(), y.end(), negated.begin(), [](double v) { return -v; });
  const std::vector<std::size_t> minima = find_peaks(negated, prominence);
  if (maxima.size() < 3 || minima.empty()) {
    out.warnings.push_back("fewer than three oscillation peaks");
    return out;
  }

  // Per-cycle half peak-to-peak amplitude, keyed to the time of each maximum.
  std::vector<double> cycle_t, cycle_a;
  std::size_t m = 0;
  for (std::size_t p : maxima) {
    while (m < minima.size() && minima[m] < p) ++m;
    if (m >= minima.size()) break;
    cycle_t.push_back(traj.t[p]);
    cycle_a.push_back(0.5 * (y[p] - y[minima[m]]));
  }
  if (cycle_a.size() < 2) {
    out.warnings.push_back("fewer than two complete cycles");
    return out;
  }

  double sum = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < cycle_a.size(); ++k)
    if (cycle_t[k] >= t_tail) {
      sum += cycle_a[k];
      ++count;
    }
  if (count == 0) {
    sum = cycle_a.back();
    count = 1;
    out.warnings.push_back("no complete cycle in the final quarter");
  }
  out.amplitude = sum / count;

  std::size_t settled = cycle_a.size();
  for (std::size_t k = cycle_a.size(); k-- > 0;) {
    if (std::abs(cycle_a[k] - out.amplitude) > options.settle_fraction * out.amplitude) break;
    settled = k;
  }
  if (settled == cycle_a.size() || cycle_t[settled] > t_tail) {
    out.transient_time = t_tail;
    out.warnings.push_back("amplitude not settled; transient set to 0.75 T");
  } else {
    out.transient_time = cycle_t[settled];
  }

  std::vector<std::size_t> steady;
  for (std::size_t p : maxima)
    if (traj.t[p] >= out.transient_time) steady.push_back(p);
  if (steady.size() < 2) {
    out.warnings.push_back("fewer than two peaks after the transient");
    steady.assign(maxima.end() - 2, maxima.end());
  }
  out.period = (traj.t[steady.back()] - traj.t[steady.front()]) / static_cast<double>(steady.size() - 1);
  out.cycles = static_cast<int>(steady.size()) - 1;

  const double sample_dt = traj.t[1] - traj.t[0];
  if (out.period < options.min_samples_per_period * sample_dt)
    throw std::invalid_argument("lco_extract: output sampling resolves fewer than 20 samples per period");

  const Eigen::MatrixXd mass = assemble_base(space).M;
  double corr = 0.0;
  int n_extrema = 0;
  auto accumulate = [&](std::size_t i) {
    if (traj.t[i] < out.transient_time) return;
    const double sign = y[i] >= 0.0 ? 1.0 : -1.0;
    corr += sign * mode2_correlation(traj.states[i].w, space, mass);
    ++n_extrema;
  };
  for (std::size_t p : maxima) accumulate(p);
  for (std::size_t p : minima) accumulate(p);
  out.mode2_correlation = n_extrema > 0 ? corr / n_extrema : 0.0;
  out.detected = true;
  return out;
}

}  // namespace beamflutter
