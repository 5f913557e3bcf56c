#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "beamflutter/cantilever_mode.hpp"
#include "beamflutter/fem.hpp"
#include "beamflutter/initial_condition.hpp"
#include "beamflutter/static_solve.hpp"
#include "oracles.hpp"

using namespace beamflutter;

namespace {

constexpr double kPi = std::numbers::pi;

Profile one_minus_cos() {
  return {[](double x) { return 1.0 - std::cos(kPi * x); }, [](double x) { return kPi * std::sin(kPi * x); }};
}

Eigen::VectorXd unit(Eigen::Index n, Eigen::Index i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e[i] = 1.0;
  return e;
}

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST(FemSpace, DofLayout) {
  const FemSpace space(20, 1.0);
  EXPECT_EQ(space.n_dof(), 40);
  EXPECT_EQ(space.dof(0, 0), -1);
  EXPECT_EQ(space.tip_value_dof(), 38);
  EXPECT_EQ(space.tip_slope_dof(), 39);
  EXPECT_EQ(space.element_of(1.0), 19);
  EXPECT_THROW(FemSpace(1, 1.0), std::invalid_argument);
  EXPECT_THROW(FemSpace(4, 0.0), std::invalid_argument);
}

TEST(FemSpace, InterpolationReproducesCubics) {
  const FemSpace space(20, 1.0);
  const auto c = space.interpolate(Profile::polynomial(Polynomial{0.0, 0.0, 1.0}));
  EXPECT_NEAR(space.evaluate(c, 0.37), 0.1369, 1e-14);
  EXPECT_NEAR(space.evaluate(c, 0.37, 1), 0.74, 1e-13);
  EXPECT_NEAR(space.evaluate(c, 0.37, 2), 2.0, 1e-10);
  const auto d = space.interpolate(Profile::polynomial(Polynomial{0.0, 0.0, 0.5, -1.0}));
  for (double x : {0.013, 0.5, 0.999}) EXPECT_NEAR(space.evaluate(d, x), 0.5 * x * x - x * x * x, 1e-14);
}

TEST(FemSpace, InterpolationOfSmoothProfile) {
  const FemSpace space(20, 1.0);
  const auto c = space.interpolate(one_minus_cos());
  double err = 0.0;
  for (double x = 0.0; x <= 1.0; x += 1e-3) err = std::max(err, std::abs(space.evaluate(c, x) - (1 - std::cos(kPi * x))));
  EXPECT_LT(err, 1e-5);
}

TEST(FemSpace, InterpolationConvergesAtFourthOrder) {
  std::vector<double> errors;
  const std::vector<int> meshes{5, 10, 20, 40};
  for (int n : meshes) {
    const FemSpace space(n, 1.0);
    const auto c = space.interpolate(one_minus_cos());
    double err = 0.0;
    for (double x = 0.0; x <= 1.0; x += 1e-4)
      err = std::max(err, std::abs(space.evaluate(c, x) - (1 - std::cos(kPi * x))));
    errors.push_back(err);
  }
  for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_GE(std::log2(errors[i - 1] / errors[i]), 3.7) << meshes[i];
}

TEST(ElementMatrices, StandardHermiteForms) {
  const double h = 0.3;
  const auto el = element_matrices(h);
  Eigen::Matrix4d mass, slope, stiff;
  mass << 156, 22 * h, 54, -13 * h, 22 * h, 4 * h * h, 13 * h, -3 * h * h, 54, 13 * h, 156, -22 * h, -13 * h,
      -3 * h * h, -22 * h, 4 * h * h;
  mass *= h / 420.0;
  slope << 36, 3 * h, -36, 3 * h, 3 * h, 4 * h * h, -3 * h, -h * h, -36, -3 * h, 36, -3 * h, 3 * h, -h * h, -3 * h,
      4 * h * h;
  slope /= 30.0 * h;
  stiff << 12, 6 * h, -12, 6 * h, 6 * h, 4 * h * h, -6 * h, 2 * h * h, -12, -6 * h, 12, -6 * h, 6 * h, 2 * h * h,
      -6 * h, 4 * h * h;
  stiff /= h * h * h;
  EXPECT_LT((el.M - mass).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((el.G - slope).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((el.Khat - stiff).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Assembly, MatricesMatchExactIntegrals) {
  // bilinear forms of two functions in the space against direct quadrature
  const FemSpace space(7, 1.0);
  const auto base = assemble_base(space);
  const Polynomial p{0.0, 0.0, 1.0, -0.4, 0.1};  // quartic, not in the space: use its interpolant
  const auto a = space.interpolate(Profile::polynomial(p));
  const auto b = space.interpolate(one_minus_cos());
  auto form = [&](int da, int db) {
    return oracle::integrate([&](double x) { return space.evaluate(a, x, da) * space.evaluate(b, x, db); }, 0.0, 1.0,
                             7);
  };
  EXPECT_NEAR(a.dot(base.M * b), form(0, 0), 1e-13);
  EXPECT_NEAR(a.dot(base.G * b), form(1, 1), 1e-12);
  EXPECT_NEAR(a.dot(base.Khat * b), form(2, 2), 1e-10);
  // row index is the test function
  EXPECT_NEAR(a.dot(base.T * b), form(0, 1), 1e-12);
  EXPECT_NEAR(a.dot(base.Bint * b), form(0, 2), 1e-11);
}

TEST(Assembly, RotationalMassReducesToMass) {
  const FemSpace space(10, 1.0);
  BeamConfig cfg;
  const auto m0 = assemble(space, cfg);
  EXPECT_EQ((m0.M_alpha - m0.M).cwiseAbs().maxCoeff(), 0.0);
  cfg.alpha = 0.25;
  const auto m1 = assemble(space, cfg);
  EXPECT_LT((m1.M_alpha - m1.M - 0.25 * m1.G).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Assembly, LengthMismatchThrows) {
  BeamConfig cfg;
  cfg.L = 2.0;
  EXPECT_THROW(assemble(FemSpace(10, 1.0), cfg), std::invalid_argument);
}

TEST(FemProperty, GramMatricesAreSpd) {
  for (int n : {5, 10, 20, 40}) {
    const FemSpace space(n, 1.0);
    BeamConfig cfg;
    cfg.alpha = 1e-3;
    const auto mats = assemble(space, cfg);
    for (const Eigen::MatrixXd* m : {&mats.M, &mats.G, &mats.Khat, &mats.M_alpha}) {
      EXPECT_LT((*m - m->transpose()).cwiseAbs().maxCoeff(), 1e-10 * m->cwiseAbs().maxCoeff()) << n;
      EXPECT_GT(min_eigenvalue(*m), 0.0) << n;
      EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(*m).info(), Eigen::Success) << n;
    }
  }
}

TEST(FemProperty, EigenvaluesConvergeToCantileverAtFourthOrder) {
  std::vector<double> err1, err2;
  for (int n : {5, 10, 20}) {
    const auto base = assemble_base(FemSpace(n, 1.0));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(base.Khat, base.M, Eigen::EigenvaluesOnly);
    err1.push_back(std::abs(es.eigenvalues()(0) / std::pow(cantilever_root(1), 4) - 1.0));
    err2.push_back(std::abs(es.eigenvalues()(1) / std::pow(cantilever_root(2), 4) - 1.0));
  }
  for (std::size_t i = 1; i < err2.size(); ++i) EXPECT_GE(std::log2(err2[i - 1] / err2[i]), 3.7);
  EXPECT_LT(err1.back(), 1e-6);
  EXPECT_LT(err2.back(), 1e-4);
}

TEST(NonlinearForce, QuadraticProfile) {
  const FemSpace space(10, 1.0);
  BeamConfig cfg;
  cfg.b2 = 1.0;
  const auto mats = assemble(space, cfg);
  const auto w = space.interpolate(Profile::polynomial(Polynomial{0.0, 0.0, 1.0}));
  EXPECT_NEAR(w.dot(mats.G * w), 4.0 / 3.0, 1e-13);
  // F . w = (b2 |w_x|^2 - b1) |w_x|^2
  EXPECT_NEAR(nonlinear_force(w, mats, cfg).dot(w), 16.0 / 9.0, 1e-12);
  cfg.b1 = 0.5;
  EXPECT_NEAR(nonlinear_force(w, mats, cfg).dot(w), (4.0 / 3.0 - 0.5) * 4.0 / 3.0, 1e-12);
  // naive form pairs with -(w'', phi): -(2, x^2) = -2/3
  cfg.bc_variant = BoundaryVariant::NaiveLinear;
  EXPECT_NEAR(nonlinear_force(w, mats, cfg).dot(w), (4.0 / 3.0 - 0.5) * (-2.0 / 3.0), 1e-12);
  cfg.b1 = 0.0;
  cfg.b2 = 0.0;
  EXPECT_EQ(nonlinear_force(w, mats, cfg).norm(), 0.0);
}

TEST(NonlinearForce, VariantsAgreeWhenTipSlopeVanishes) {
  const FemSpace space(16, 1.0);
  BeamConfig cfg;
  cfg.b2 = 2.0;
  cfg.b1 = 0.3;
  const auto mats = assemble(space, cfg);
  const auto w = space.interpolate(initial_displacement(ic::PolynomialID{}, 1.0));
  ASSERT_EQ(w[space.tip_slope_dof()], 0.0);
  const auto phys = nonlinear_force(w, mats, cfg);
  cfg.bc_variant = BoundaryVariant::NaiveLinear;
  const auto naive = nonlinear_force(w, mats, cfg);
  EXPECT_LT((phys - naive).norm(), 1e-10 * phys.norm());
  // and differ otherwise
  const auto w2 = space.interpolate(Profile::polynomial(Polynomial{0.0, 0.0, 1.0}));
  EXPECT_GT((nonlinear_force(w2, mats, cfg) - [&] {
              BeamConfig c = cfg;
              c.bc_variant = BoundaryVariant::Physical;
              return nonlinear_force(w2, mats, c);
            }()).norm(),
            1e-3);
}

TEST(FemProperty, NonlinearForceIsGradientOfStretchingEnergy) {
  const FemSpace space(12, 1.0);
  BeamConfig cfg;
  cfg.b2 = 1.5;
  cfg.b1 = -0.7;
  const auto mats = assemble(space, cfg);
  auto potential = [&](const Eigen::VectorXd& w) {
    const double s = w.dot(mats.G * w);
    return 0.25 * cfg.b2 * s * s - 0.5 * cfg.b1 * s;
  };
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd w = random_vector(space.n_dof(), rng, 0.3);
    const Eigen::VectorXd f = nonlinear_force(w, mats, cfg);
    Eigen::VectorXd fd(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(w[i]));
      fd[i] = (potential(w + h * unit(w.size(), i)) - potential(w - h * unit(w.size(), i))) / (2 * h);
    }
    EXPECT_LT((f - fd).norm(), 1e-6 * f.norm());
  }
}

TEST(LoadVector, ExactForPolynomialPressure) {
  const FemSpace space(6, 2.0);
  const Polynomial p{1.0, -0.5, 0.25, 0.0, 0.0, 0.0, 0.1};
  const auto f = load_vector(space, p);
  for (Eigen::Index i = 0; i < space.n_dof(); ++i) {
    const auto e = unit(space.n_dof(), i);
    const double ref = oracle::integrate([&](double x) { return p(x) * space.evaluate(e, x); }, 0.0, 2.0, 6);
    EXPECT_NEAR(f[i], ref, 1e-13) << i;
  }
  EXPECT_EQ(load_vector(space, Polynomial{}).norm(), 0.0);
}

TEST(StaticSolve, UniformLoadOnCantilever) {
  // D w'''' = 1: w = x^2 (x^2 - 4x + 6) / 24, tip deflection 1/8
  const FemSpace space(8, 1.0);
  BeamConfig cfg;
  const auto mats = assemble(space, cfg);
  const auto F = load_vector(space, Polynomial{1.0});
  const auto sol = static_solve(F, 0.0, 0.0, cfg, mats);
  EXPECT_NEAR(sol.v[space.tip_value_dof()], 0.125, 1e-12);
  EXPECT_NEAR(space.evaluate(sol.v, 0.5), 0.25 * (0.25 - 2.0 + 6.0) / 24.0, 1e-12);
  EXPECT_LE(sol.residual_norm, 1e-10);
  // (1 + lambda) scales the stiffness
  const auto stiffer = static_solve(F, 1.0, 0.0, cfg, mats);
  EXPECT_NEAR(stiffer.v[space.tip_value_dof()], 0.0625, 1e-12);
}

TEST(StaticSolve, NonlinearSolutionIsStationary) {
  const FemSpace space(10, 1.0);
  BeamConfig cfg;
  cfg.b2 = 5.0;
  cfg.b1 = 2.0;
  const auto mats = assemble(space, cfg);
  const auto F = load_vector(space, Polynomial{20.0, -5.0});
  const auto sol = static_solve(F, 0.5, 0.2, cfg, mats);
  EXPECT_LE(static_gradient(sol.v, F, 0.5, 0.2, mats, cfg).norm(), 1e-10);
  // a minimizer: random perturbations do not lower the functional
  const double phi = static_functional(sol.v, F, 0.5, 0.2, mats, cfg);
  std::mt19937 rng(3);
  for (int k = 0; k < 20; ++k)
    EXPECT_GE(static_functional(sol.v + random_vector(F.size(), rng, 1e-3), F, 0.5, 0.2, mats, cfg), phi - 1e-14);
  // stretching stiffens: smaller tip than the linear solution
  BeamConfig lin = cfg;
  lin.b1 = 0.0;
  lin.b2 = 0.0;
  EXPECT_LT(std::abs(sol.v[space.tip_value_dof()]),
            std::abs(static_solve(F, 0.5, 0.2, lin, mats).v[space.tip_value_dof()]));
}

TEST(StaticSolve, GradientMatchesFiniteDifferences) {
  const FemSpace space(6, 1.0);
  BeamConfig cfg;
  cfg.b2 = 1.0;
  cfg.b1 = 0.4;
  const auto mats = assemble(space, cfg);
  std::mt19937 rng(11);
  const Eigen::VectorXd F = random_vector(space.n_dof(), rng);
  const Eigen::VectorXd v = random_vector(space.n_dof(), rng, 0.1);
  const auto g = static_gradient(v, F, 0.3, 0.1, mats, cfg);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double h = 1e-6;
    const double fd = (static_functional(v + h * unit(v.size(), i), F, 0.3, 0.1, mats, cfg) -
                       static_functional(v - h * unit(v.size(), i), F, 0.3, 0.1, mats, cfg)) /
                      (2 * h);
    EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(g[i])));
  }
}

TEST(StaticSolve, NonConvergenceCarriesBestIterate) {
  const FemSpace space(10, 1.0);
  BeamConfig cfg;
  cfg.b2 = 1.0;
  const auto mats = assemble(space, cfg);
  const auto F = load_vector(space, Polynomial{1000.0});
  StaticSolveOptions opts;
  opts.max_iterations = 1;
  try {
    static_solve(F, 0.0, 0.0, cfg, mats, opts);
    FAIL() << "expected NewtonDivergence";
  } catch (const NewtonDivergence& e) {
    EXPECT_EQ(e.best_iterate.size(), F.size());
    EXPECT_GT(e.best_residual, opts.tolerance);
  }
}

TEST(StaticSolve, WarnsWhenNonCoercive) {
  const FemSpace space(6, 1.0);
  BeamConfig cfg;
  cfg.b1 = 1.0;
  const auto mats = assemble(space, cfg);
  const auto sol = static_solve(load_vector(space, Polynomial{1.0}), 0.0, 0.0, cfg, mats);
  EXPECT_FALSE(sol.warnings.empty());
}

TEST(DumpMatrix, FullPrecisionRows) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.1, -2.0, 0.25;
  std::ostringstream os;
  dump_matrix(os, m);
  EXPECT_EQ(os.str(), "1 0.10000000000000001\n-2 0.25\n");
  std::istringstream is(os.str());
  double a, b, c, d;
  is >> a >> b >> c >> d;
  EXPECT_EQ(b, 0.1);
  EXPECT_EQ(d, 0.25);
}
