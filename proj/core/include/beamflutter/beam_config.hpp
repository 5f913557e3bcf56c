#pragma once

#include <string>
#include <string_view>

#include "beamflutter/polynomial.hpp"

namespace beamflutter {

/// How the extensible nonlinearity enters the discrete equations.
///
/// `Physical` applies the stretching term through the weak form, which
/// carries the nonlinear free-end condition
///   -alpha (w_tt + k0 w_t)_x + D w_xxx + (b1 - b2 |w_x|^2) w_x = 0  at x = L.
/// `NaiveLinear` pairs the interior term (b1 - b2 |w_x|^2) w_xx with the
/// linear free-end conditions; it does not conserve energy.
enum class BoundaryVariant { Physical, NaiveLinear };

std::string_view to_string(BoundaryVariant variant);
BoundaryVariant boundary_variant_from_string(std::string_view name);

/// Physical and model parameters of the clamped-free extensible beam
///
///   (1 - alpha d_xx) w_tt + D d_xxxx w + k0 w_t - k1 d_xx w_t
///     + (b1 - b2 |w_x|^2) w_xx = p0(x) - beta (w_t + U w_x).
struct BeamConfig {
  double D = 1.0;
  double L = 1.0;
  double alpha = 0.0;
  double k0 = 0.0;
  double k1 = 0.0;
  /// Ties the strong damping to the inertia: damping operator k0 (1 - alpha d_xx).
  /// When set, k1 is ignored.
  bool theory_damping = false;
  double b1 = 0.0;
  double b2 = 0.0;
  double beta = 1.0;
  double U = 0.0;
  Polynomial p0{};
  BoundaryVariant bc_variant = BoundaryVariant::Physical;

  /// Coefficient of the L2 Gram matrix in the damping operator.
  double damping_mass_coefficient() const { return k0; }
  /// Coefficient of the slope Gram matrix in the damping operator.
  double damping_slope_coefficient() const { return theory_damping ? alpha * k0 : k1; }

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

}  // namespace beamflutter
