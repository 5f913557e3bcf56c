#include "beamflutter/modal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "beamflutter/quadrature.hpp"

namespace beamflutter {

namespace {
constexpr int kPanels = 64;
constexpr int kPointsPerPanel = 8;
}  // namespace

double ModalBasis::mode(int k, double x, int order) const {
  return normalization.at(static_cast<std::size_t>(k)) * shapes[static_cast<std::size_t>(k)](x, order);
}

double ModalBasis::evaluate(const Eigen::VectorXd& eta, double x, int order) const {
  if (eta.size() != n_modes) throw std::invalid_argument("ModalBasis::evaluate: dimension mismatch");
  double acc = 0.0;
  for (int k = 0; k < n_modes; ++k) acc += eta[k] * mode(k, x, order);
  return acc;
}

Eigen::VectorXd ModalBasis::project(const Profile& profile) const {
  const QuadratureRule rule = composite_gauss(0.0, L, kPanels, kPointsPerPanel);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_modes);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double f = rule.weights[q] * profile.value(rule.nodes[q]);
    for (int k = 0; k < n_modes; ++k) c[k] += f * mode(k, rule.nodes[q]);
  }
  return c;
}

ModalBasis build_modal_basis(int n_modes, const BeamConfig& cfg) {
  cfg.validate();
  if (n_modes < 1 || n_modes > kMaxCantileverMode)
    throw std::invalid_argument("build_modal_basis: n_modes must be in [1, " + std::to_string(kMaxCantileverMode) +
                                "]");
  ModalBasis b;
  b.n_modes = n_modes;
  b.L = cfg.L;
  b.eigenvalues.resize(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    b.shapes.emplace_back(k + 1, cfg.L);
    b.kappas.push_back(b.shapes.back().kappa());
    b.eigenvalues[k] = cfg.D * std::pow(b.kappas.back(), 4);
  }

  const QuadratureRule rule = composite_gauss(0.0, cfg.L, kPanels, kPointsPerPanel);
  const auto nq = static_cast<Eigen::Index>(rule.nodes.size());
  Eigen::MatrixXd s0(nq, n_modes), s1(nq, n_modes), s2(nq, n_modes);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const double x = rule.nodes[static_cast<std::size_t>(q)];
    for (int k = 0; k < n_modes; ++k) {
      const auto& shape = b.shapes[static_cast<std::size_t>(k)];
      s0(q, k) = shape(x, 0);
      s1(q, k) = shape(x, 1);
      s2(q, k) = shape(x, 2);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), nq);
  for (int k = 0; k < n_modes; ++k) {
    const double norm = std::sqrt((w.array() * s0.col(k).array().square()).sum());
    b.normalization.push_back(1.0 / norm);
    s0.col(k) /= norm;
    s1.col(k) /= norm;
    s2.col(k) /= norm;
  }
  const auto W = w.asDiagonal();
  b.identity = Eigen::MatrixXd::Identity(n_modes, n_modes);
  b.curvature = s2.transpose() * W * s2;
  b.gram_x = s1.transpose() * W * s1;
  b.transport = s0.transpose() * W * s1;  // row k: test e_k, column j: e_j'
  b.interior_xx = s0.transpose() * W * s2;

  b.load = Eigen::VectorXd::Zero(n_modes);
  if (!cfg.p0.is_zero()) {
    for (Eigen::Index q = 0; q < nq; ++q)
      b.load += (w[q] * cfg.p0(rule.nodes[static_cast<std::size_t>(q)])) * s0.row(q).transpose();
  }
  return b;
}

ModalSystem::ModalSystem(const ModalBasis& basis, const BeamConfig& cfg)
    : basis_(&basis), cfg_(cfg), n_(basis.n_modes) {
  cfg.validate();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n_, n_);
  stretch_ = cfg.bc_variant == BoundaryVariant::Physical ? basis.gram_x : Eigen::MatrixXd(-basis.interior_xx);
  mass_ = I + cfg.alpha * basis.gram_x;
  identity_mass_ = cfg.alpha == 0.0;
  if (!identity_mass_) {
    mass_factor_.compute(mass_);
    if (mass_factor_.info() != Eigen::Success) throw std::runtime_error("ModalSystem: modal mass factorization failed");
  }
  stiffness_ = cfg.D * basis.curvature - cfg.b1 * stretch_ + cfg.beta * cfg.U * basis.transport;
  damping_ = (cfg.damping_mass_coefficient() + cfg.beta) * I + cfg.damping_slope_coefficient() * basis.gram_x;
}

void ModalSystem::acceleration(const Eigen::VectorXd& eta, const Eigen::VectorXd& eta_dot,
                               Eigen::VectorXd& out) const {
  if (eta.size() != n_ || eta_dot.size() != n_) throw std::invalid_argument("ModalSystem: dimension mismatch");
  out.noalias() = -stiffness_ * eta;
  out.noalias() -= damping_ * eta_dot;
  if (cfg_.b2 != 0.0) {
    const double s = eta.dot(basis_->gram_x * eta);
    out.noalias() -= (cfg_.b2 * s) * (stretch_ * eta);
  }
  out += basis_->load;
  if (!identity_mass_) out = mass_factor_.solve(out);
}

Eigen::VectorXd modal_rhs(const Eigen::VectorXd& eta, const Eigen::VectorXd& eta_dot, const ModalBasis& basis,
                          const BeamConfig& cfg) {
  const ModalSystem sys(basis, cfg);
  Eigen::VectorXd out(basis.n_modes);
  sys.acceleration(eta, eta_dot, out);
  return out;
}

}  // namespace beamflutter
