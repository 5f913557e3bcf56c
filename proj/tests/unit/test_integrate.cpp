#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "beamflutter/analysis.hpp"
#include "beamflutter/integrate.hpp"

using namespace beamflutter;

namespace {

struct Oscillator {
  double omega2;
  Eigen::Index dof() const { return 1; }
  void acceleration(const Eigen::VectorXd& w, const Eigen::VectorXd&, Eigen::VectorXd& a) const {
    a.resize(1);
    a[0] = -omega2 * w[0];
  }
};

BeamConfig conservative(double b2) {
  BeamConfig cfg;
  cfg.b2 = b2;
  cfg.beta = 0.0;
  return cfg;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(Rk4, ScalarOscillatorIsFourthOrder) {
  const Oscillator osc{4.0};
  auto error_at_one = [&](int steps) {
    StateVector s(1);
    s.w[0] = 1.0;
    Rk4Stepper<Oscillator> stepper(osc);
    for (int i = 0; i < steps; ++i) stepper.step(s, 1.0 / steps);
    return std::abs(s.w[0] - std::cos(2.0));
  };
  const double e1 = error_at_one(50), e2 = error_at_one(100);
  EXPECT_NEAR(e1 / e2, 16.0, 1.0);
  // single-step helper agrees with the stepper
  StateVector s(1);
  s.w[0] = 1.0;
  const auto next = rk4_step(s, 0.1, osc);
  EXPECT_NEAR(next.t, 0.1, 1e-15);
  EXPECT_NEAR(next.w[0], std::cos(0.2), 1e-5);
}

TEST(Simulate, EquilibriumIsFixedPoint) {
  BeamConfig cfg;
  cfg.b2 = 1.0;
  cfg.U = 150.0;
  SimulationOptions o;
  o.T = 1.0;
  const auto tr = simulate(cfg, ic::Custom{}, o);
  EXPECT_EQ(max_abs(tr.w_tip), 0.0);
  EXPECT_EQ(max_abs(tr.total_energy()), 0.0);
}

TEST(Simulate, DefaultRunRecords2001Samples) {
  BeamConfig cfg;
  cfg.U = 100.0;
  const auto tr = simulate(cfg, ic::Equilibrium{});
  ASSERT_EQ(tr.size(), 2001u);
  EXPECT_EQ(tr.t.front(), 0.0);
  EXPECT_NEAR(tr.t.back(), 20.0, 1e-9);
  EXPECT_EQ(tr.termination, Termination::Completed);
  EXPECT_EQ(tr.stride, 100);
  // |w_t|^2 / 2 = 1e-4 / 6, up to the interpolation error next to the clamp
  EXPECT_NEAR(tr.energy.front().total / (1e-4 / 6.0), 1.0, 1e-4);
}

TEST(Simulate, SubcriticalFlowDecays) {
  BeamConfig cfg;
  cfg.U = 100.0;
  const auto tr = simulate(cfg, ic::Equilibrium{});
  EXPECT_LT(energy_max(tr, 10.0, 20.0), 1e-3 * energy_max(tr, 0.0, 10.0));
}

TEST(Simulate, SupercriticalFlowGrows) {
  BeamConfig cfg;
  cfg.U = 150.0;
  SimulationOptions o;
  o.blow_up_energy = 1e250;
  const auto tr = simulate(cfg, ic::Equilibrium{}, o);
  EXPECT_EQ(tr.termination, Termination::Completed);
  EXPECT_GT(energy_max(tr, 10.0, 20.0), 10.0 * energy_max(tr, 0.0, 10.0));
}

TEST(Simulate, StretchingKeepsSupercriticalRunBounded) {
  BeamConfig cfg;
  cfg.U = 150.0;
  cfg.b2 = 1.0;
  const auto tr = simulate(cfg, ic::Equilibrium{});
  EXPECT_EQ(tr.termination, Termination::Completed);
  EXPECT_LT(max_abs(tr.total_energy()), 1e6);
  EXPECT_LT(max_abs(tr.w_tip), 2.0);
}

TEST(Simulate, Deterministic) {
  BeamConfig cfg;
  cfg.U = 140.0;
  cfg.b2 = 1.0;
  cfg.alpha = 1e-3;
  SimulationOptions o;
  o.T = 2.0;
  const auto a = simulate(cfg, ic::PolynomialID{}, o);
  const auto b = simulate(cfg, ic::PolynomialID{}, o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.w_tip[i], b.w_tip[i]);
    EXPECT_EQ(a.energy[i].total, b.energy[i].total);
  }
}

TEST(IntegrateProperty, OddSymmetryUnderDataNegation) {
  BeamConfig cfg;
  cfg.U = 150.0;
  cfg.b2 = 1.0;
  cfg.b1 = 0.5;
  cfg.k1 = 0.2;
  SimulationOptions o;
  o.T = 3.0;
  const Polynomial d{0.0, 0.0, 0.3, -0.1}, v{0.0, 0.02};
  const auto a = simulate(cfg, ic::Custom{d, v}, o);
  const auto b = simulate(cfg, ic::Custom{-1.0 * d, -1.0 * v}, o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a.w_tip[i], -b.w_tip[i], 1e-14 * (1.0 + std::abs(a.w_tip[i])));
    EXPECT_NEAR(a.energy[i].total, b.energy[i].total, 1e-13 * std::abs(a.energy[i].total));
  }
}

TEST(IntegrateProperty, ObservedOrderOfConvergence) {
  // coarse mesh so that every step size is well inside the asymptotic range
  const BeamConfig cfg = conservative(1.0);
  std::vector<double> tip;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    SimulationOptions o;
    o.n_elements = 4;
    o.dt = dt;
    o.T = 1.0;
    tip.push_back(simulate(cfg, ic::SecondMode{}, o).w_tip.back());
  }
  const double order = std::log2((tip[0] - tip[1]) / (tip[1] - tip[2]));
  EXPECT_GE(order, 3.8);
}

TEST(IntegrateProperty, EnergyComparisonOnEveryState) {
  for (double b1 : {-2.0, 2.0}) {
    BeamConfig cfg;
    cfg.b1 = b1;
    cfg.b2 = 1.0;
    cfg.U = 150.0;
    cfg.alpha = 1e-3;
    SimulationOptions o;
    o.T = 5.0;
    const auto tr = simulate(cfg, ic::PolynomialID{}, o);
    for (const auto& e : tr.energy) ASSERT_TRUE(check_energy_comparison(e, cfg, 1e-12 * (1.0 + e.definite))) << b1;
  }
}

TEST(EnergyIdentity, ConservativeRun) {
  const BeamConfig cfg = conservative(1.0);
  const auto tr = simulate(cfg, ic::Equilibrium{});
  EXPECT_LT(max_abs(energy_identity_residual(tr, cfg)), 1e-6);
}

TEST(EnergyIdentity, DampedFlowRun) {
  BeamConfig cfg;
  cfg.alpha = 1e-3;
  cfg.k0 = 1.0;
  cfg.k1 = 0.5;
  cfg.U = 50.0;
  cfg.b2 = 1.0;
  cfg.b1 = -1.0;
  const auto tr = simulate(cfg, ic::PolynomialID{});
  EXPECT_LT(max_abs(energy_identity_residual(tr, cfg)), 1e-4);
  // dissipation is cumulative and nonnegative
  const auto visc = viscous_dissipation(tr, cfg);
  const auto strong = strong_dissipation(tr, cfg);
  for (std::size_t i = 1; i < tr.size(); ++i) {
    EXPECT_GE(visc[i], visc[i - 1]);
    EXPECT_GE(strong[i], strong[i - 1]);
  }
}

TEST(EnergyIdentity, NaiveBoundaryBreaksBalance) {
  BeamConfig cfg = conservative(1.0);
  cfg.bc_variant = BoundaryVariant::NaiveLinear;
  SimulationOptions o;
  o.T = 10.0;
  const auto tr = simulate(cfg, ic::ScaledLinearIV{13.0}, o);
  EXPECT_GT(max_abs(energy_identity_residual(tr, cfg)), 1e-2);
}

TEST(TimeStepGuard, RejectsUnstableStep) {
  BeamConfig cfg;
  SimulationOptions o;
  o.dt = 2e-4;
  o.T = 0.01;
  EXPECT_THROW(simulate(cfg, ic::Equilibrium{}, o), std::invalid_argument);
  o.enforce_guard = false;
  EXPECT_NO_THROW(simulate(cfg, ic::Equilibrium{}, o));
  o.dt = 0.0;
  EXPECT_THROW(simulate(cfg, ic::Equilibrium{}, o), std::invalid_argument);
}

TEST(TimeStepGuard, MaxFrequencyEstimate) {
  const FemSpace space(20, 1.0);
  BeamConfig cfg;
  const auto mats = assemble(space, cfg);
  const double omega = estimate_max_frequency(mats, cfg);
  EXPECT_GT(omega, 2e4);
  EXPECT_LT(omega, 3e4);
  EXPECT_NO_THROW(check_time_step(1e-4, mats, cfg));
  EXPECT_THROW(check_time_step(1.2e-4, mats, cfg), std::invalid_argument);
  // rotational inertia lowers the top frequency
  cfg.alpha = 1.0;
  EXPECT_LT(estimate_max_frequency(assemble(space, cfg), cfg), 0.1 * omega);
}

TEST(Simulate, BlowUpStopsTheRun) {
  BeamConfig cfg;
  cfg.U = 300.0;
  SimulationOptions o;
  o.blow_up_energy = 1.0;
  const auto tr = simulate(cfg, ic::Equilibrium{}, o);
  EXPECT_EQ(tr.termination, Termination::BlowUp);
  ASSERT_TRUE(tr.blow_up_time.has_value());
  EXPECT_LT(*tr.blow_up_time, 20.0);
  EXPECT_LT(tr.t.back(), 20.0);
}

TEST(TrajectoryCsv, HeaderAndRows) {
  BeamConfig cfg;
  cfg.U = 50.0;
  SimulationOptions o;
  o.T = 0.1;
  o.samples = 10;
  const auto tr = simulate(cfg, ic::Equilibrium{}, o);
  std::ostringstream os;
  write_trajectory_csv(os, tr, cfg);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,E_total,E_definite,w_tip,v_tip,D_visc,D_rot,W_flow,residual");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 11);
}
