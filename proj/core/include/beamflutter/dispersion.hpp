#pragma once

namespace beamflutter {

/// Traveling-wave frequency of the Rayleigh beam (D = 1):
/// omega^2 = k^4 / (1 + alpha k^2). Returns the nonnegative root.
double dispersion_omega(double k, double alpha);

}  // namespace beamflutter
