#include "beamflutter/cantilever_mode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace beamflutter {

namespace {

// cos K cosh K + 1 scaled by 1/cosh K; same roots, bounded for large K.
double characteristic(double K) { return std::cos(K) + 1.0 / std::cosh(K); }

}  // namespace

double cantilever_root(int n) {
  if (n < 1 || n > kMaxCantileverMode)
    throw std::invalid_argument("cantilever_root: mode index must be in [1, " +
                                std::to_string(kMaxCantileverMode) + "], got " + std::to_string(n));
  double lo = (n - 1) * std::numbers::pi;
  double hi = n * std::numbers::pi;
  double f_lo = characteristic(lo);
  if (f_lo * characteristic(hi) > 0.0) throw std::runtime_error("cantilever_root: bracket does not enclose a root");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = characteristic(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > 1e-12) throw std::runtime_error("cantilever_root: bisection did not converge");
  return 0.5 * (lo + hi);
}

CantileverMode::CantileverMode(int n, double L) : n_(n), L_(L) {
  if (!(L > 0.0)) throw std::invalid_argument("CantileverMode: L must be positive");
  const double K = cantilever_root(n);
  kappa_ = K / L;
  const double g = std::exp(-K);
  const double s = std::sin(K);
  const double c = std::cos(K);
  const double dg = g * s + 0.5 * (1.0 - g * g);  // (sin K + sinh K) e^{-K}
  one_minus_c_ = (s - c - g) * g / dg;
  growing_scale_ = 0.5 * (s - c - g) / dg;
}

double CantileverMode::operator()(double x, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("CantileverMode: derivative order must be in [0, 3]");
  const double C = 1.0 - one_minus_c_;
  const double k = kappa_;
  const double km = std::pow(k, order);
  const double phase = k * x + order * 0.5 * std::numbers::pi;
  const double trig = std::cos(phase) - C * std::sin(phase);
  const double grow = growing_scale_ * std::exp(k * (x - L_));
  const double decay = 0.5 * (2.0 - one_minus_c_) * std::exp(-k * x) * ((order % 2 == 0) ? 1.0 : -1.0);
  return km * (trig - grow - decay);
}

}  // namespace beamflutter
