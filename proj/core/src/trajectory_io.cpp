#include <cstdio>
#include <ostream>

#include "beamflutter/integrate.hpp"

namespace beamflutter {

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const BeamConfig& cfg) {
  const auto visc = viscous_dissipation(traj, cfg);
  const auto rot = strong_dissipation(traj, cfg);
  const auto residual = energy_identity_residual(traj, cfg);
  os << "t,E_total,E_definite,w_tip,v_tip,D_visc,D_rot,W_flow,residual\n";
  char buf[512];
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", traj.t[i],
                  traj.energy[i].total, traj.energy[i].definite, traj.w_tip[i], traj.v_tip[i], visc[i], rot[i],
                  traj.work[i], residual[i]);
    os << buf;
  }
}

}  // namespace beamflutter
