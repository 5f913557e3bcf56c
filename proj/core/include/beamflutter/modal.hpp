#pragma once

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/cantilever_mode.hpp"
#include "beamflutter/energy.hpp"
#include "beamflutter/initial_condition.hpp"
#include "beamflutter/state.hpp"

namespace beamflutter {

/// L2-orthonormal cantilever eigenfunctions e_k of D d_xxxx with
/// clamped-free conditions, plus the Galerkin integrals of the weak form.
/// Integrals use composite Gauss quadrature (64 panels x 8 points).
struct ModalBasis {
  int n_modes = 0;
  double L = 1.0;
  std::vector<double> kappas;
  Eigen::VectorXd eigenvalues;     // D kappa_k^4
  std::vector<CantileverMode> shapes;
  std::vector<double> normalization;  // e_k = s_k * normalization[k]
  Eigen::MatrixXd identity;        // L2 Gram (identity by construction)
  Eigen::MatrixXd curvature;       // diag(kappa^4): (e_j'', e_k'')
  Eigen::MatrixXd gram_x;          // P_jk = (e_j', e_k')
  Eigen::MatrixXd transport;       // (e_j', e_k), row k
  Eigen::MatrixXd interior_xx;     // (e_j'', e_k), row k
  Eigen::VectorXd load;            // (p0, e_k)

  /// Value / derivative of mode k (0-based) at x.
  double mode(int k, double x, int order = 0) const;
  double evaluate(const Eigen::VectorXd& eta, double x, int order = 0) const;
  EnergyForms energy_forms() const { return {identity, gram_x, curvature}; }

  /// L2 projection (w, e_k) of a profile.
  Eigen::VectorXd project(const Profile& profile) const;
};

/// Throws std::invalid_argument if n_modes is outside [1, 12].
ModalBasis build_modal_basis(int n_modes, const BeamConfig& cfg);

/// Modal equations of motion
///   (I + alpha P) eta'' = -Lambda eta - (b2 eta'P eta - b1) N eta - (k0 I + k1 P) eta'
///                         - beta (eta' + U T eta) + (p0, e)
/// with N = P (Physical) or -B (NaiveLinear).
class ModalSystem {
 public:
  ModalSystem(const ModalBasis& basis, const BeamConfig& cfg);

  Eigen::Index dof() const { return n_; }
  void acceleration(const Eigen::VectorXd& eta, const Eigen::VectorXd& eta_dot, Eigen::VectorXd& out) const;
  EnergyForms energy_forms() const { return basis_->energy_forms(); }

 private:
  const ModalBasis* basis_;
  BeamConfig cfg_;
  Eigen::Index n_;
  Eigen::MatrixXd stretch_;
  Eigen::MatrixXd mass_;
  Eigen::LLT<Eigen::MatrixXd> mass_factor_;
  Eigen::MatrixXd stiffness_;  // Lambda - b1 N + beta U T
  Eigen::MatrixXd damping_;    // k0 I + k1 P + beta I
  bool identity_mass_;
};

/// Convenience form of ModalSystem::acceleration.
Eigen::VectorXd modal_rhs(const Eigen::VectorXd& eta, const Eigen::VectorXd& eta_dot, const ModalBasis& basis,
                          const BeamConfig& cfg);

}  // namespace beamflutter
