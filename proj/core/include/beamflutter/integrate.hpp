#pragma once

#include <concepts>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/energy.hpp"
#include "beamflutter/fem.hpp"
#include "beamflutter/initial_condition.hpp"
#include "beamflutter/modal.hpp"
#include "beamflutter/state.hpp"

namespace beamflutter {

/// A second-order system  w' = v,  v' = a(w, v).
template <class S>
concept SecondOrderSystem = requires(const S& sys, const Eigen::VectorXd& w, const Eigen::VectorXd& v,
                                     Eigen::VectorXd& a) {
  { sys.dof() } -> std::convertible_to<Eigen::Index>;
  sys.acceleration(w, v, a);
};

/// Classical fourth-order Runge-Kutta with preallocated stage storage.
template <SecondOrderSystem S>
class Rk4Stepper {
 public:
  explicit Rk4Stepper(const S& system) : sys_(&system) {
    const Eigen::Index n = system.dof();
    for (auto* x : {&w_, &v_, &a1_, &a2_, &a3_, &a4_, &v2_, &v3_, &v4_}) x->resize(n);
  }

  void step(StateVector& s, double dt) {
    const double h2 = 0.5 * dt;
    sys_->acceleration(s.w, s.v, a1_);
    w_.noalias() = s.w + h2 * s.v;
    v2_.noalias() = s.v + h2 * a1_;
    sys_->acceleration(w_, v2_, a2_);
    w_.noalias() = s.w + h2 * v2_;
    v3_.noalias() = s.v + h2 * a2_;
    sys_->acceleration(w_, v3_, a3_);
    w_.noalias() = s.w + dt * v3_;
    v4_.noalias() = s.v + dt * a3_;
    sys_->acceleration(w_, v4_, a4_);
    const double h6 = dt / 6.0;
    s.w.noalias() += h6 * (s.v + 2.0 * v2_ + 2.0 * v3_ + v4_);
    s.v.noalias() += h6 * (a1_ + 2.0 * a2_ + 2.0 * a3_ + a4_);
    s.t += dt;
  }

 private:
  const S* sys_;
  Eigen::VectorXd w_, v_, a1_, a2_, a3_, a4_, v2_, v3_, v4_;
};

/// One RK4 step. The returned state may be non-finite (StateVector::finite());
/// callers terminate the run in that case.
template <SecondOrderSystem S>
StateVector rk4_step(const StateVector& state, double dt, const S& system) {
  StateVector next = state;
  Rk4Stepper<S> stepper(system);
  stepper.step(next, dt);
  return next;
}

/// Finite element semidiscretization
///   M_alpha v' = -D Khat w - F_nl(w) - C v - beta (M v + U T w) + load_p0,
/// with damping C = k0 M + k1 G (or k0 M_alpha under theory damping).
/// Linear parts are premultiplied by M_alpha^{-1} once at construction.
class FemSystem {
 public:
  FemSystem(const FemSpace& space, const BeamConfig& cfg);

  Eigen::Index dof() const { return n_; }
  void acceleration(const Eigen::VectorXd& w, const Eigen::VectorXd& v, Eigen::VectorXd& out) const;

  const FemSpace& space() const { return space_; }
  const OperatorMatrices& matrices() const { return mats_; }
  const BeamConfig& config() const { return cfg_; }
  EnergyForms energy_forms() const { return mats_.energy_forms(); }
  const Eigen::MatrixXd& transport() const { return mats_.T; }
  const Eigen::VectorXd& load() const { return mats_.load_p0; }
  const Eigen::VectorXd& tip_weights() const { return tip_; }

 private:
  FemSpace space_;
  BeamConfig cfg_;
  OperatorMatrices mats_;
  Eigen::Index n_;
  Eigen::MatrixXd stiffness_;  // M_alpha^{-1} (-D Khat + b1 N - beta U T)
  Eigen::MatrixXd damping_;    // M_alpha^{-1} (-(C + beta M))
  Eigen::MatrixXd stretch_;    // M_alpha^{-1} N
  Eigen::VectorXd forcing_;    // M_alpha^{-1} load_p0
  Eigen::VectorXd tip_;
  bool has_forcing_ = false;
  mutable Eigen::VectorXd gw_;
};

/// Adapter giving ModalSystem the same observables as FemSystem.
class ModalTrajectorySystem {
 public:
  ModalTrajectorySystem(const ModalBasis& basis, const BeamConfig& cfg);

  Eigen::Index dof() const { return system_.dof(); }
  void acceleration(const Eigen::VectorXd& w, const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
    system_.acceleration(w, v, out);
  }
  const ModalBasis& basis() const { return *basis_; }
  EnergyForms energy_forms() const { return basis_->energy_forms(); }
  const Eigen::MatrixXd& transport() const { return basis_->transport; }
  const Eigen::VectorXd& load() const { return basis_->load; }
  const Eigen::VectorXd& tip_weights() const { return tip_; }

 private:
  const ModalBasis* basis_;
  ModalSystem system_;
  Eigen::VectorXd tip_;
};

/// Largest in vacuo angular frequency, sqrt of the top eigenvalue of
/// M_alpha^{-1} (D Khat), by power iteration.
double estimate_max_frequency(const OperatorMatrices& mats, const BeamConfig& cfg);
/// Largest decay rate of the damping operator M_alpha^{-1} (C + beta M), by power iteration.
double estimate_max_damping_rate(const OperatorMatrices& mats, const BeamConfig& cfg);

/// RK4 stability limit enforced on dt * omega_max and dt * damping rate.
inline constexpr double kStabilityGuard = 2.6;

/// Throws std::invalid_argument if dt is non-positive or violates the guard.
void check_time_step(double dt, const OperatorMatrices& mats, const BeamConfig& cfg);

enum class Termination { Completed, BlowUp };

struct SimulationOptions {
  int n_elements = 20;
  double dt = 1e-4;
  double T = 20.0;
  /// Target number of recorded intervals; the stride is floor(steps / samples).
  int samples = 2000;
  /// Explicit decimation stride; overrides `samples` when positive.
  int stride = 0;
  /// Terminate once the definite energy exceeds this value.
  double blow_up_energy = 1e12;
  bool enforce_guard = true;
};

/// Decimated time series of a run plus the quantities of the energy identity.
struct Trajectory {
  std::vector<double> t;
  std::vector<StateVector> states;
  std::vector<EnergyPair> energy;
  std::vector<double> w_tip;
  std::vector<double> v_tip;
  /// Running integrals int |w_t|^2, int |w_tx|^2 and int (p0 - beta U w_x, w_t),
  /// accumulated with the trapezoid rule on every time step.
  std::vector<double> int_velocity_sq;
  std::vector<double> int_velocity_slope_sq;
  std::vector<double> work;

  Termination termination = Termination::Completed;
  std::optional<double> blow_up_time;
  double dt = 0.0;
  int stride = 1;

  std::size_t size() const { return t.size(); }
  std::vector<double> total_energy() const;
  std::vector<double> definite_energy() const;
};

/// Runs the FEM model from the interpolated initial data.
Trajectory simulate(const BeamConfig& cfg, const InitialCondition& ic, const SimulationOptions& options = {});
Trajectory simulate(const FemSystem& system, const InitialCondition& ic, const SimulationOptions& options);
/// Runs from an explicit discrete initial state.
Trajectory simulate(const FemSystem& system, const StateVector& initial, const SimulationOptions& options);
/// Runs the modal Galerkin model from the L2-projected initial data.
Trajectory simulate_modal(const ModalBasis& basis, const BeamConfig& cfg, const InitialCondition& ic,
                          const SimulationOptions& options);

/// Discrete FEM initial state by Hermite interpolation of the initial profiles.
StateVector project_initial_state(const FemSpace& space, const InitialCondition& ic);

/// Dissipated energy split in the two damping channels (cumulative).
/// viscous = (k0 + beta) int |w_t|^2, strong = c_G int |w_tx|^2.
std::vector<double> viscous_dissipation(const Trajectory& traj, const BeamConfig& cfg);
std::vector<double> strong_dissipation(const Trajectory& traj, const BeamConfig& cfg);

/// r(t) = [E(t) + dissipation(0,t) - E(0) - work(0,t)] / max(1, E(0)).
std::vector<double> energy_identity_residual(const Trajectory& traj, const BeamConfig& cfg);

/// Trajectory CSV: t,E_total,E_definite,w_tip,v_tip,D_visc,D_rot,W_flow,residual (`%.12g`).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const BeamConfig& cfg);

}  // namespace beamflutter
