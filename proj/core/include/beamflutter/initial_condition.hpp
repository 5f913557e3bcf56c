#pragma once

#include <functional>
#include <string>
#include <variant>

#include "beamflutter/polynomial.hpp"

namespace beamflutter {

/// A scalar profile on [0, L] together with its first derivative.
struct Profile {
  std::function<double(double)> value;
  std::function<double(double)> slope;

  static Profile zero();
  static Profile polynomial(const Polynomial& p);
};

namespace ic {
/// w = 0, w_t = 0.01 x. The default initial data of the numerical study.
struct Equilibrium {};
/// w = s_2(x), w_t = 0 (second cantilever mode, unnormalized).
struct SecondMode {};
/// w = -4x^5 + 15x^4 - 20x^3 + 10x^2, w_t = 0.
struct PolynomialID {};
/// w = 0, w_t = x.
struct LinearIV {};
/// w = 0, w_t = c x.
struct ScaledLinearIV {
  double c = 1.0;
};
struct Custom {
  Polynomial displacement;
  Polynomial velocity;
};
}  // namespace ic

using InitialCondition =
    std::variant<ic::Equilibrium, ic::SecondMode, ic::PolynomialID, ic::LinearIV, ic::ScaledLinearIV, ic::Custom>;

/// Displacement profile of the initial data on a beam of length L.
Profile initial_displacement(const InitialCondition& ic, double L);
/// Velocity profile of the initial data on a beam of length L.
Profile initial_velocity(const InitialCondition& ic, double L);

/// Short identifier used in config files: equilibrium, second_mode, polynomial,
/// linear_iv, scaled_linear_iv, custom.
std::string ic_name(const InitialCondition& ic);

}  // namespace beamflutter
