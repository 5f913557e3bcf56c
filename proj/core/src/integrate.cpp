#include "beamflutter/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace beamflutter {

FemSystem::FemSystem(const FemSpace& space, const BeamConfig& cfg)
    : space_(space), cfg_(cfg), mats_(assemble(space, cfg)), n_(space.n_dof()) {
  const auto& chol = mats_.M_alpha_factor;
  const Eigen::MatrixXd N = stretching_operator(mats_, cfg.bc_variant);
  const Eigen::MatrixXd C =
      (cfg.damping_mass_coefficient() + cfg.beta) * mats_.M + cfg.damping_slope_coefficient() * mats_.G;
  stiffness_ = chol.solve(Eigen::MatrixXd(-cfg.D * mats_.Khat + cfg.b1 * N - cfg.beta * cfg.U * mats_.T));
  damping_ = chol.solve(Eigen::MatrixXd(-C));
  stretch_ = chol.solve(N);
  has_forcing_ = !cfg.p0.is_zero();
  forcing_ = has_forcing_ ? Eigen::VectorXd(chol.solve(mats_.load_p0)) : Eigen::VectorXd::Zero(n_);
  tip_ = Eigen::VectorXd::Zero(n_);
  tip_[space.tip_value_dof()] = 1.0;
  gw_.resize(n_);
}

void FemSystem::acceleration(const Eigen::VectorXd& w, const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  out.noalias() = stiffness_ * w;
  out.noalias() += damping_ * v;
  if (cfg_.b2 != 0.0) {
    gw_.noalias() = mats_.G * w;
    const double s = w.dot(gw_);
    out.noalias() -= (cfg_.b2 * s) * (stretch_ * w);
  }
  if (has_forcing_) out += forcing_;
}

ModalTrajectorySystem::ModalTrajectorySystem(const ModalBasis& basis, const BeamConfig& cfg)
    : basis_(&basis), system_(basis, cfg), tip_(basis.n_modes) {
  for (int k = 0; k < basis.n_modes; ++k) tip_[k] = basis.mode(k, basis.L);
}

namespace {

// Largest eigenvalue of M_alpha^{-1} A for symmetric positive semidefinite A.
double generalized_power_iteration(const Eigen::MatrixXd& A, const OperatorMatrices& mats) {
  const Eigen::Index n = A.rows();
  if (A.isZero(0.0)) return 0.0;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * static_cast<double>(i) * ((i % 2) ? -1.0 : 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd y = mats.M_alpha_factor.solve(A * x);
    y /= y.norm();
    const double next = y.dot(A * y) / y.dot(mats.M_alpha * y);
    x = std::move(y);
    if (it > 10 && std::abs(next - lambda) <= 1e-12 * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

double estimate_max_frequency(const OperatorMatrices& mats, const BeamConfig& cfg) {
  return std::sqrt(generalized_power_iteration(cfg.D * mats.Khat, mats));
}

double estimate_max_damping_rate(const OperatorMatrices& mats, const BeamConfig& cfg) {
  const Eigen::MatrixXd C =
      (cfg.damping_mass_coefficient() + cfg.beta) * mats.M + cfg.damping_slope_coefficient() * mats.G;
  return generalized_power_iteration(C, mats);
}

void check_time_step(double dt, const OperatorMatrices& mats, const BeamConfig& cfg) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  const double omega = estimate_max_frequency(mats, cfg);
  if (dt * omega > kStabilityGuard) {
    std::ostringstream msg;
    msg << "time step " << dt << " violates the RK4 stability guard: dt * omega_max = " << dt * omega << " > "
        << kStabilityGuard << " (omega_max = " << omega << ")";
    throw std::invalid_argument(msg.str());
  }
  const double rate = estimate_max_damping_rate(mats, cfg);
  if (dt * rate > kStabilityGuard) {
    std::ostringstream msg;
    msg << "time step " << dt << " violates the RK4 stability guard: dt * damping rate = " << dt * rate << " > "
        << kStabilityGuard;
    throw std::invalid_argument(msg.str());
  }
}

std::vector<double> Trajectory::total_energy() const {
  std::vector<double> out(energy.size());
  std::transform(energy.begin(), energy.end(), out.begin(), [](const EnergyPair& e) { return e.total; });
  return out;
}

std::vector<double> Trajectory::definite_energy() const {
  std::vector<double> out(energy.size());
  std::transform(energy.begin(), energy.end(), out.begin(), [](const EnergyPair& e) { return e.definite; });
  return out;
}

namespace {

template <class System>
Trajectory run(const System& sys, const BeamConfig& cfg, StateVector state, const SimulationOptions& opt) {
  if (!(opt.dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
  if (!(opt.T > 0.0)) throw std::invalid_argument("simulate: T must be positive");
  if (state.size() != sys.dof()) throw std::invalid_argument("simulate: initial state dimension mismatch");
  const auto steps = static_cast<long long>(std::llround(opt.T / opt.dt));
  if (steps < 1) throw std::invalid_argument("simulate: T / dt must be at least one step");
  const int samples = std::max(1, opt.samples);
  const long long stride = opt.stride > 0 ? opt.stride : std::max<long long>(1, steps / samples);

  const EnergyForms forms = sys.energy_forms();
  const Eigen::MatrixXd& T = sys.transport();
  const Eigen::VectorXd& load = sys.load();
  const Eigen::VectorXd& tip = sys.tip_weights();
  const double flow = cfg.beta * cfg.U;

  Trajectory traj;
  traj.dt = opt.dt;
  traj.stride = static_cast<int>(stride);
  const auto expected = static_cast<std::size_t>(steps / stride + 2);
  traj.t.reserve(expected);
  traj.states.reserve(expected);
  traj.energy.reserve(expected);

  double int_m = 0.0, int_g = 0.0, work = 0.0;
  auto rates = [&](const StateVector& s, double& m, double& g, double& p) {
    m = s.v.dot(forms.mass * s.v);
    g = s.v.dot(forms.slope * s.v);
    p = load.dot(s.v) - flow * s.v.dot(T * s.w);
  };
  auto record = [&](const StateVector& s) {
    traj.t.push_back(s.t);
    traj.states.push_back(s);
    traj.energy.push_back(total_energy(s, forms, cfg));
    traj.w_tip.push_back(tip.dot(s.w));
    traj.v_tip.push_back(tip.dot(s.v));
    traj.int_velocity_sq.push_back(int_m);
    traj.int_velocity_slope_sq.push_back(int_g);
    traj.work.push_back(work);
    return traj.energy.back().definite;
  };

  state.t = 0.0;
  record(state);
  double m0, g0, p0;
  rates(state, m0, g0, p0);

  Rk4Stepper<System> stepper(sys);
  for (long long k = 1; k <= steps; ++k) {
    stepper.step(state, opt.dt);
    state.t = static_cast<double>(k) * opt.dt;
    if (!state.finite()) {
      traj.termination = Termination::BlowUp;
      traj.blow_up_time = state.t;
      break;
    }
    double m1, g1, p1;
    rates(state, m1, g1, p1);
    const double h2 = 0.5 * opt.dt;
    int_m += h2 * (m0 + m1);
    int_g += h2 * (g0 + g1);
    work += h2 * (p0 + p1);
    m0 = m1;
    g0 = g1;
    p0 = p1;
    if (k % stride == 0 || k == steps) {
      const double definite = record(state);
      if (!(definite <= opt.blow_up_energy)) {
        traj.termination = Termination::BlowUp;
        traj.blow_up_time = state.t;
        break;
      }
    }
  }
  return traj;
}

}  // namespace

StateVector project_initial_state(const FemSpace& space, const InitialCondition& ic) {
  return StateVector(space.interpolate(initial_displacement(ic, space.length())),
                     space.interpolate(initial_velocity(ic, space.length())));
}

Trajectory simulate(const FemSystem& system, const StateVector& initial, const SimulationOptions& options) {
  if (options.enforce_guard) check_time_step(options.dt, system.matrices(), system.config());
  return run(system, system.config(), initial, options);
}

Trajectory simulate(const FemSystem& system, const InitialCondition& ic, const SimulationOptions& options) {
  return simulate(system, project_initial_state(system.space(), ic), options);
}

Trajectory simulate(const BeamConfig& cfg, const InitialCondition& ic, const SimulationOptions& options) {
  cfg.validate();
  const FemSpace space(options.n_elements, cfg.L);
  const FemSystem system(space, cfg);
  return simulate(system, ic, options);
}

Trajectory simulate_modal(const ModalBasis& basis, const BeamConfig& cfg, const InitialCondition& ic,
                          const SimulationOptions& options) {
  const ModalTrajectorySystem system(basis, cfg);
  StateVector initial(basis.project(initial_displacement(ic, cfg.L)), basis.project(initial_velocity(ic, cfg.L)));
  return run(system, cfg, std::move(initial), options);
}

std::vector<double> viscous_dissipation(const Trajectory& traj, const BeamConfig& cfg) {
  const double c = cfg.damping_mass_coefficient() + cfg.beta;
  std::vector<double> out(traj.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * traj.int_velocity_sq[i];
  return out;
}

std::vector<double> strong_dissipation(const Trajectory& traj, const BeamConfig& cfg) {
  const double c = cfg.damping_slope_coefficient();
  std::vector<double> out(traj.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * traj.int_velocity_slope_sq[i];
  return out;
}

std::vector<double> energy_identity_residual(const Trajectory& traj, const BeamConfig& cfg) {
  std::vector<double> r(traj.size());
  if (traj.size() == 0) return r;
  const auto visc = viscous_dissipation(traj, cfg);
  const auto rot = strong_dissipation(traj, cfg);
  const double e0 = traj.energy.front().total;
  const double scale = std::max(1.0, e0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = (traj.energy[i].total + visc[i] + rot[i] - e0 - traj.work[i]) / scale;
  return r;
}

}  // namespace beamflutter
