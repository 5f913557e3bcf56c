#pragma once

namespace beamflutter {

inline constexpr int kMaxCantileverMode = 12;

/// n-th in vacuo mode of the clamped-free Euler-Bernoulli beam,
///   s(x) = [cos(kx) - cosh(kx)] - C [sin(kx) - sinh(kx)].
///
/// The hyperbolic part is evaluated as
///   cosh(kx) - C sinh(kx) = (1 - C) e^{kx} / 2 + (1 + C) e^{-kx} / 2
/// with (1 - C) computed without cancellation, so high modes stay accurate.
class CantileverMode {
 public:
  /// Solves cos(kL) cosh(kL) = -1 for the n-th root by bisection (1e-12 on kL).
  /// Throws std::invalid_argument for n outside [1, 12] or L <= 0.
  CantileverMode(int n, double L);

  int index() const { return n_; }
  double length() const { return L_; }
  /// Wavenumber kappa_n (root scaled by 1/L).
  double kappa() const { return kappa_; }
  /// C_n = (cos kL + cosh kL) / (sin kL + sinh kL).
  double shape_coefficient() const { return 1.0 - one_minus_c_; }

  /// Value (order 0) or derivative of order 1..3 of the unnormalized shape.
  double operator()(double x, int order = 0) const;

 private:
  int n_;
  double L_;
  double kappa_;
  double one_minus_c_;
  double growing_scale_;  // (1 - C) e^{-kL} / 2, multiplies e^{k x}
};

/// n-th positive root of cos(K) cosh(K) + 1 = 0 (dimensionless, L = 1).
double cantilever_root(int n);

}  // namespace beamflutter
