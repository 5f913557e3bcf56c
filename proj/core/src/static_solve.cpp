#include "beamflutter/static_solve.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace beamflutter {

namespace {

void require_size(const Eigen::VectorXd& v, const OperatorMatrices& mats, const char* what) {
  if (v.size() != mats.n_dof()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

double static_functional(const Eigen::VectorXd& v, const Eigen::VectorXd& F, double lambda, double mu,
                         const OperatorMatrices& mats, const BeamConfig& cfg) {
  const double s = v.dot(mats.G * v);
  return 0.5 * (1.0 + lambda) * cfg.D * v.dot(mats.Khat * v) + 0.5 * mu * s + 0.25 * cfg.b2 * s * s -
         0.5 * cfg.b1 * s - F.dot(v);
}

Eigen::VectorXd static_gradient(const Eigen::VectorXd& v, const Eigen::VectorXd& F, double lambda, double mu,
                                const OperatorMatrices& mats, const BeamConfig& cfg) {
  const Eigen::VectorXd gv = mats.G * v;
  const double s = v.dot(gv);
  return (1.0 + lambda) * cfg.D * (mats.Khat * v) + (mu + cfg.b2 * s - cfg.b1) * gv - F;
}

StaticSolution static_solve(const Eigen::VectorXd& F, double lambda, double mu, const BeamConfig& cfg,
                            const OperatorMatrices& mats, const StaticSolveOptions& options) {
  require_size(F, mats, "static_solve");
  if (lambda < 0.0) throw std::invalid_argument("static_solve: lambda must be nonnegative");

  StaticSolution sol;
  if (cfg.b1 > 0.0 && cfg.b2 == 0.0)
    sol.warnings.push_back("b1 > 0 with b2 = 0: the functional may be non-coercive");

  Eigen::VectorXd v = Eigen::VectorXd::Zero(F.size());
  Eigen::VectorXd best = v;
  double best_residual = std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd linear = (1.0 + lambda) * cfg.D * mats.Khat + mu * mats.G;

  for (int it = 0; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd grad = static_gradient(v, F, lambda, mu, mats, cfg);
    const double residual = grad.norm();
    if (residual < best_residual) {
      best_residual = residual;
      best = v;
    }
    if (residual <= options.tolerance) {
      sol.v = v;
      sol.residual_norm = residual;
      sol.iterations = it;
      return sol;
    }
    if (it == options.max_iterations) break;

    const Eigen::VectorXd gv = mats.G * v;
    const double s = v.dot(gv);
    Eigen::MatrixXd hessian = linear + (cfg.b2 * s - cfg.b1) * mats.G;
    hessian.noalias() += 2.0 * cfg.b2 * gv * gv.transpose();

    Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
    Eigen::VectorXd step = -ldlt.solve(grad);
    // Indefinite Hessian (b1 > 0): fall back to steepest descent.
    if (ldlt.info() != Eigen::Success || !step.allFinite() || step.dot(grad) >= 0.0) step = -grad;

    // Backtracking on the functional; Newton steps are accepted in full near the minimizer.
    const double phi0 = static_functional(v, F, lambda, mu, mats, cfg);
    const double slope = step.dot(grad);
    double t = 1.0;
    Eigen::VectorXd trial = v + step;
    for (int ls = 0; ls < 60; ++ls) {
      const double phi = static_functional(trial, F, lambda, mu, mats, cfg);
      if (phi <= phi0 + 1e-4 * t * slope || std::abs(phi - phi0) <= 1e-14 * std::abs(phi0)) break;
      t *= 0.5;
      trial = v + t * step;
    }
    v = trial;
  }
  throw NewtonDivergence(best, best_residual);
}

StaticSolution static_solve(const Eigen::VectorXd& F, double lambda, double mu, const BeamConfig& cfg,
                            const FemSpace& space, const StaticSolveOptions& options) {
  return static_solve(F, lambda, mu, cfg, assemble(space, cfg), options);
}

}  // namespace beamflutter
