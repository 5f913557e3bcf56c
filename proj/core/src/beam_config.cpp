#include "beamflutter/beam_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace beamflutter {

std::string_view to_string(BoundaryVariant variant) {
  switch (variant) {
    case BoundaryVariant::Physical: return "physical";
    case BoundaryVariant::NaiveLinear: return "naive";
  }
  return "physical";
}

BoundaryVariant boundary_variant_from_string(std::string_view name) {
  if (name == "physical") return BoundaryVariant::Physical;
  if (name == "naive" || name == "naive_linear") return BoundaryVariant::NaiveLinear;
  throw std::invalid_argument("unknown boundary variant '" + std::string(name) + "'");
}

void BeamConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("BeamConfig: ") + what);
  };
  require(std::isfinite(D) && D > 0.0, "D must be positive");
  require(std::isfinite(L) && L > 0.0, "L must be positive");
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be nonnegative");
  require(std::isfinite(k0) && k0 >= 0.0, "k0 must be nonnegative");
  require(std::isfinite(k1) && k1 >= 0.0, "k1 must be nonnegative");
  require(std::isfinite(b1), "b1 must be finite");
  require(std::isfinite(b2) && b2 >= 0.0, "b2 must be nonnegative");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be nonnegative");
  require(std::isfinite(U) && U >= 0.0, "U must be nonnegative");
  for (double c : p0.coefficients()) require(std::isfinite(c), "p0 coefficients must be finite");
}

}  // namespace beamflutter
