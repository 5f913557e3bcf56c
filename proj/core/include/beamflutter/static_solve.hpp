#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/fem.hpp"

namespace beamflutter {

struct StaticSolveOptions {
  double tolerance = 1e-10;  // on the Euclidean norm of the discrete gradient
  int max_iterations = 100;
};

struct StaticSolution {
  Eigen::VectorXd v;
  double residual_norm = 0.0;
  int iterations = 0;
  std::vector<std::string> warnings;
};

/// Thrown when Newton fails to reach the tolerance; carries the best iterate.
class NewtonDivergence : public std::runtime_error {
 public:
  NewtonDivergence(Eigen::VectorXd best, double residual)
      : std::runtime_error("static_solve: Newton iteration did not converge (residual " +
                           std::to_string(residual) + ")"),
        best_iterate(std::move(best)),
        best_residual(residual) {}

  Eigen::VectorXd best_iterate;
  double best_residual;
};

/// Discrete functional
///   Phi(v) = (1 + lambda) D/2 v'Khat v + mu/2 v'Gv + b2/4 (v'Gv)^2 - b1/2 v'Gv - F'v
/// whose stationary points solve (lambda R + mu C + A)(v) = F.
double static_functional(const Eigen::VectorXd& v, const Eigen::VectorXd& F, double lambda, double mu,
                         const OperatorMatrices& mats, const BeamConfig& cfg);
Eigen::VectorXd static_gradient(const Eigen::VectorXd& v, const Eigen::VectorXd& F, double lambda, double mu,
                                const OperatorMatrices& mats, const BeamConfig& cfg);

/// Damped Newton iteration on Phi. Uses the Physical stretching form.
StaticSolution static_solve(const Eigen::VectorXd& F, double lambda, double mu, const BeamConfig& cfg,
                            const OperatorMatrices& mats, const StaticSolveOptions& options = {});
StaticSolution static_solve(const Eigen::VectorXd& F, double lambda, double mu, const BeamConfig& cfg,
                            const FemSpace& space, const StaticSolveOptions& options = {});

}  // namespace beamflutter
