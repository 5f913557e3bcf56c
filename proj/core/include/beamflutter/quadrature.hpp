#pragma once

#include <vector>

namespace beamflutter {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Supported point counts: 2, 3, 4, 5, 8, 10. Throws std::invalid_argument otherwise.
QuadratureRule gauss_legendre(int points);

/// Composite rule on [a, b]: `panels` equal panels with `points` nodes each.
QuadratureRule composite_gauss(double a, double b, int panels, int points);

}  // namespace beamflutter
