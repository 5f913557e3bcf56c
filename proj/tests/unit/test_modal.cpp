#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "beamflutter/analysis.hpp"
#include "beamflutter/cantilever_mode.hpp"
#include "beamflutter/fem.hpp"
#include "beamflutter/integrate.hpp"
#include "beamflutter/modal.hpp"
#include "oracles.hpp"

using namespace beamflutter;

namespace {

BeamConfig conservative(double b2) {
  BeamConfig cfg;
  cfg.b2 = b2;
  cfg.beta = 0.0;
  return cfg;
}

double max_relative_drift(const Trajectory& tr) {
  const double e0 = tr.energy.front().total;
  double d = 0.0;
  for (const auto& e : tr.energy) d = std::max(d, std::abs(e.total - e0) / e0);
  return d;
}

}  // namespace

TEST(ModalBasis, Orthonormal) {
  const auto basis = build_modal_basis(12, BeamConfig{});
  for (int j = 0; j < 12; ++j) {
    for (int k = j; k < 12; ++k) {
      const double ip =
          oracle::integrate([&](double x) { return basis.mode(j, x) * basis.mode(k, x); }, 0.0, 1.0, 400);
      EXPECT_NEAR(ip, j == k ? 1.0 : 0.0, 1e-10) << j << "," << k;
    }
  }
  EXPECT_LT((basis.identity - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ModalBasis, EigenvaluesAreKappaToTheFourth) {
  BeamConfig cfg;
  cfg.D = 2.0;
  const auto basis = build_modal_basis(4, cfg);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(basis.eigenvalues[k] / (2.0 * std::pow(cantilever_root(k + 1), 4)), 1.0, 1e-12);
}

TEST(ModalBasis, SlopeGramMatchesQuadratureAndIsSpd) {
  const auto basis = build_modal_basis(6, BeamConfig{});
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      const double ref =
          oracle::integrate([&](double x) { return basis.mode(j, x, 1) * basis.mode(k, x, 1); }, 0.0, 1.0, 400);
      EXPECT_NEAR(basis.gram_x(j, k), ref, 1e-9 * std::max(1.0, std::abs(ref)));
    }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.gram_x, Eigen::EigenvaluesOnly);
  EXPECT_GT(es.eigenvalues()(0), 0.0);
  EXPECT_LT((basis.gram_x - basis.gram_x.transpose()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ModalBasis, ProjectionRecoversModes) {
  const auto basis = build_modal_basis(5, BeamConfig{});
  const CantileverMode m2(2, 1.0);
  const Profile p{[&](double x) { return m2(x); }, [&](double x) { return m2(x, 1); }};
  const auto eta = basis.project(p);
  EXPECT_NEAR(eta[1], 1.0 / basis.normalization[1], 1e-9);
  for (int k : {0, 2, 3, 4}) EXPECT_NEAR(eta[k], 0.0, 1e-9);
}

TEST(ModalBasis, RejectsModeCountOutOfRange) {
  EXPECT_THROW(build_modal_basis(0, BeamConfig{}), std::invalid_argument);
  EXPECT_THROW(build_modal_basis(13, BeamConfig{}), std::invalid_argument);
}

TEST(ModalSystem, EquilibriumIsFixedPoint) {
  BeamConfig cfg;
  cfg.b2 = 1.0;
  cfg.U = 120.0;
  cfg.alpha = 0.01;
  const auto basis = build_modal_basis(6, cfg);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(6);
  EXPECT_EQ(modal_rhs(zero, zero, basis, cfg).norm(), 0.0);
}

TEST(ModalSystem, SingleModeIsDuffing) {
  // eta'' = -kappa^4 eta - b2 P11^2 eta^3 - k0 eta'
  BeamConfig cfg;
  cfg.b2 = 3.0;
  cfg.k0 = 0.4;
  cfg.beta = 0.0;
  const auto basis = build_modal_basis(1, cfg);
  const double p11 = basis.gram_x(0, 0);
  const double k4 = std::pow(cantilever_root(1), 4);
  for (double eta : {-0.7, 0.1, 1.3}) {
    Eigen::VectorXd e(1), v(1);
    e << eta;
    v << 0.25;
    const double expected = -k4 * eta - cfg.b2 * p11 * p11 * eta * eta * eta - cfg.k0 * 0.25;
    EXPECT_NEAR(modal_rhs(e, v, basis, cfg)[0], expected, 1e-10 * std::abs(expected));
  }
}

TEST(ModalSystem, RotationalInertiaEntersTheMass) {
  BeamConfig cfg;
  cfg.alpha = 0.05;
  cfg.beta = 0.0;
  const auto basis = build_modal_basis(4, cfg);
  Eigen::VectorXd eta(4);
  eta << 0.3, -0.2, 0.1, 0.05;
  const Eigen::VectorXd a = modal_rhs(eta, Eigen::VectorXd::Zero(4), basis, cfg);
  const Eigen::MatrixXd mass = Eigen::MatrixXd::Identity(4, 4) + cfg.alpha * basis.gram_x;
  EXPECT_LT((mass * a + basis.eigenvalues.cwiseProduct(eta)).norm(), 1e-12 * basis.eigenvalues.cwiseProduct(eta).norm());
}

TEST(ModalSystem, FirstModePeriod) {
  BeamConfig cfg = conservative(0.0);
  const auto basis = build_modal_basis(1, cfg);
  SimulationOptions o;
  o.T = 10.0;
  o.samples = 100000;
  const auto tr = simulate_modal(basis, cfg, ic::PolynomialID{}, o);
  std::vector<double> up;
  for (std::size_t i = 1; i < tr.size(); ++i)
    if (tr.w_tip[i - 1] < 0.0 && tr.w_tip[i] >= 0.0) {
      const double f = tr.w_tip[i - 1] / (tr.w_tip[i - 1] - tr.w_tip[i]);
      up.push_back(tr.t[i - 1] + f * (tr.t[i] - tr.t[i - 1]));
    }
  ASSERT_GE(up.size(), 3u);
  const double period = (up.back() - up.front()) / static_cast<double>(up.size() - 1);
  EXPECT_NEAR(period, 1.787, 1e-3);
  EXPECT_NEAR(period, 2 * std::numbers::pi / std::pow(cantilever_root(1), 2), 1e-6);
}

TEST(ModalOracle, FemFrequenciesMatchCantilever) {
  const FemSpace space(20, 1.0);
  const auto base = assemble_base(space);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(base.Khat, base.M, Eigen::EigenvaluesOnly);
  for (int k = 0; k < 2; ++k) {
    const double omega = std::sqrt(es.eigenvalues()(k));
    const double kappa2 = std::pow(cantilever_root(k + 1), 2);
    EXPECT_LT(std::abs(omega / kappa2 - 1.0), 1e-3) << k;
  }
}

TEST(ModalProperty, ConservativeDriftScalesAtFourthOrder) {
  const BeamConfig cfg = conservative(1.0);
  const auto basis = build_modal_basis(8, cfg);
  SimulationOptions o;
  o.T = 20.0;
  o.dt = 2e-4;
  const double coarse = max_relative_drift(simulate_modal(basis, cfg, ic::SecondMode{}, o));
  o.dt = 1e-4;
  const double fine = max_relative_drift(simulate_modal(basis, cfg, ic::SecondMode{}, o));
  EXPECT_LT(fine, 1e-6);
  EXPECT_GE(coarse / fine, 13.9);
}
