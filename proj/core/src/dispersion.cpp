#include "beamflutter/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace beamflutter {

double dispersion_omega(double k, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("dispersion_omega: alpha must be nonnegative");
  const double k2 = k * k;
  return k2 / std::sqrt(1.0 + alpha * k2);
}

}  // namespace beamflutter
