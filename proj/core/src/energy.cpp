#include "beamflutter/energy.hpp"

#include <stdexcept>

namespace beamflutter {

EnergyPair total_energy(const StateVector& state, const EnergyForms& forms, const BeamConfig& cfg) {
  const Eigen::Index n = forms.mass.rows();
  if (state.w.size() != n || state.v.size() != n)
    throw std::invalid_argument("total_energy: state dimension does not match the discretization");

  const double v_mass = state.v.dot(forms.mass * state.v);
  const double v_slope = state.v.dot(forms.slope * state.v);
  const double w_curv = state.w.dot(forms.curvature * state.w);
  const double w_slope = state.w.dot(forms.slope * state.w);

  EnergyPair e;
  e.kinetic = 0.5 * v_mass;
  e.rotational = 0.5 * cfg.alpha * v_slope;
  e.bending = 0.5 * cfg.D * w_curv;
  e.quartic = 0.25 * cfg.b2 * w_slope * w_slope;
  e.prestress = 0.5 * cfg.b1 * w_slope;
  e.definite = e.kinetic + e.rotational + e.bending + e.quartic;
  e.total = e.definite - e.prestress;
  return e;
}

bool check_energy_comparison(const EnergyPair& e, const BeamConfig& cfg, double slack) {
  const double E = e.total;
  const double Ebar = e.definite;
  if (cfg.b1 == 0.0) return E == Ebar;
  // With b2 = 0 the additive constants are unbounded and the bound is vacuous.
  if (cfg.b1 < 0.0) {
    const bool upper = Ebar <= E + slack;
    if (cfg.b2 <= 0.0) return upper;
    return upper && 0.5 * E - cfg.b1 * cfg.b1 / (8.0 * cfg.b2) <= Ebar + slack;
  }
  const bool lower = E <= Ebar + slack;
  if (cfg.b2 <= 0.0) return lower;
  return lower && Ebar <= 2.0 * E + cfg.b1 * cfg.b1 / cfg.b2 + slack;
}

}  // namespace beamflutter
