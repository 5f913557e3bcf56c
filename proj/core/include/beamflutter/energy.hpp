#pragma once

#include <Eigen/Core>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/state.hpp"

namespace beamflutter {

/// The three Gram matrices that define every energy functional:
/// mass (phi_j, phi_i), slope (phi_j', phi_i') and curvature (phi_j'', phi_i'').
/// Non-owning; the referenced matrices must outlive the view.
struct EnergyForms {
  const Eigen::MatrixXd& mass;
  const Eigen::MatrixXd& slope;
  const Eigen::MatrixXd& curvature;
};

struct EnergyPair {
  double kinetic = 0.0;     // |w_t|^2 / 2
  double rotational = 0.0;  // alpha |w_tx|^2 / 2
  double bending = 0.0;     // D |w_xx|^2 / 2
  double quartic = 0.0;     // b2 |w_x|^4 / 4
  double prestress = 0.0;   // b1 |w_x|^2 / 2
  double definite = 0.0;    // kinetic + rotational + bending + quartic
  double total = 0.0;       // definite - prestress
};

/// Total and definite energy of a discrete state.
/// Throws std::invalid_argument on dimension mismatch.
EnergyPair total_energy(const StateVector& state, const EnergyForms& forms, const BeamConfig& cfg);

/// Checks the comparison bounds between the total and definite energies:
///   b1 < 0:  E/2 - b1^2/(8 b2) <= Ebar <= E
///   b1 > 0:  E <= Ebar <= 2E + b1^2 / b2
///   b1 = 0:  E == Ebar
/// `slack` is an absolute tolerance applied to each inequality.
bool check_energy_comparison(const EnergyPair& e, const BeamConfig& cfg, double slack = 0.0);

}  // namespace beamflutter
