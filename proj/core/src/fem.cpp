#include "beamflutter/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "beamflutter/quadrature.hpp"

namespace beamflutter {

FemSpace::FemSpace(int n_elements, double L) : n_elements_(n_elements), L_(L), h_(0.0) {
  if (n_elements < 2) throw std::invalid_argument("FemSpace: need at least 2 elements, got " + std::to_string(n_elements));
  if (!(L > 0.0)) throw std::invalid_argument("FemSpace: L must be positive");
  h_ = L / n_elements;
}

int FemSpace::element_of(double x) const {
  const int e = static_cast<int>(std::floor(x / h_));
  return std::clamp(e, 0, n_elements_ - 1);
}

std::array<double, 4> FemSpace::shape(int e, double x, int order) const {
  const double h = h_;
  const double s = (x - e * h) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  switch (order) {
    case 0: return {1.0 - 3.0 * s2 + 2.0 * s3, h * (s - 2.0 * s2 + s3), 3.0 * s2 - 2.0 * s3, h * (s3 - s2)};
    case 1: return {(6.0 * s2 - 6.0 * s) / h, 1.0 - 4.0 * s + 3.0 * s2, (6.0 * s - 6.0 * s2) / h, 3.0 * s2 - 2.0 * s};
    case 2: return {(12.0 * s - 6.0) / (h * h), (6.0 * s - 4.0) / h, (6.0 - 12.0 * s) / (h * h), (6.0 * s - 2.0) / h};
    case 3: return {12.0 / (h * h * h), 6.0 / (h * h), -12.0 / (h * h * h), 6.0 / (h * h)};
    default: throw std::invalid_argument("FemSpace::shape: derivative order must be in [0, 3]");
  }
}

double FemSpace::evaluate(const Eigen::VectorXd& coeffs, double x, int order) const {
  if (coeffs.size() != n_dof()) throw std::invalid_argument("FemSpace::evaluate: coefficient dimension mismatch");
  const int e = element_of(x);
  const auto N = shape(e, x, order);
  const Eigen::Index idx[4] = {dof(e, 0), dof(e, 1), dof(e + 1, 0), dof(e + 1, 1)};
  double acc = 0.0;
  for (int a = 0; a < 4; ++a)
    if (idx[a] >= 0) acc += N[a] * coeffs[idx[a]];
  return acc;
}

Eigen::VectorXd FemSpace::interpolate(const Profile& profile) const {
  Eigen::VectorXd c(n_dof());
  for (int i = 1; i <= n_elements_; ++i) {
    c[dof(i, 0)] = profile.value(node(i));
    c[dof(i, 1)] = profile.slope(node(i));
  }
  return c;
}

BaseMatrices element_matrices(double h) {
  const FemSpace unit(2, 2.0 * h);  // element 0 of this space has length h
  const QuadratureRule rule = gauss_legendre(4);
  BaseMatrices m;
  for (auto* x : {&m.M, &m.G, &m.Khat, &m.T, &m.Bint}) x->setZero(4, 4);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = 0.5 * h * (rule.nodes[q] + 1.0);
    const double wq = 0.5 * h * rule.weights[q];
    const auto N0 = unit.shape(0, x, 0);
    const auto N1 = unit.shape(0, x, 1);
    const auto N2 = unit.shape(0, x, 2);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        m.M(i, j) += wq * N0[i] * N0[j];
        m.G(i, j) += wq * N1[i] * N1[j];
        m.Khat(i, j) += wq * N2[i] * N2[j];
        m.T(i, j) += wq * N0[i] * N1[j];
        m.Bint(i, j) += wq * N0[i] * N2[j];
      }
    }
  }
  return m;
}

BaseMatrices assemble_base(const FemSpace& space) {
  const Eigen::Index n = space.n_dof();
  BaseMatrices global;
  for (auto* x : {&global.M, &global.G, &global.Khat, &global.T, &global.Bint}) x->setZero(n, n);
  const BaseMatrices local = element_matrices(space.element_size());
  for (int e = 0; e < space.n_elements(); ++e) {
    const Eigen::Index idx[4] = {space.dof(e, 0), space.dof(e, 1), space.dof(e + 1, 0), space.dof(e + 1, 1)};
    for (int a = 0; a < 4; ++a) {
      if (idx[a] < 0) continue;
      for (int b = 0; b < 4; ++b) {
        if (idx[b] < 0) continue;
        global.M(idx[a], idx[b]) += local.M(a, b);
        global.G(idx[a], idx[b]) += local.G(a, b);
        global.Khat(idx[a], idx[b]) += local.Khat(a, b);
        global.T(idx[a], idx[b]) += local.T(a, b);
        global.Bint(idx[a], idx[b]) += local.Bint(a, b);
      }
    }
  }
  return global;
}

Eigen::VectorXd load_vector(const FemSpace& space, const Polynomial& p) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(space.n_dof());
  if (p.is_zero()) return f;
  // Integrand degree is deg(p) + 3; an n-point rule is exact to degree 2n - 1.
  const int needed = (p.degree() + 3) / 2 + 1;
  int points = 0;
  for (int candidate : {4, 5, 8, 10}) {
    if (candidate >= needed) {
      points = candidate;
      break;
    }
  }
  if (points == 0) throw std::invalid_argument("load_vector: pressure polynomial degree above 16 is not supported");
  const QuadratureRule rule = gauss_legendre(points);
  const double h = space.element_size();
  for (int e = 0; e < space.n_elements(); ++e) {
    const Eigen::Index idx[4] = {space.dof(e, 0), space.dof(e, 1), space.dof(e + 1, 0), space.dof(e + 1, 1)};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = e * h + 0.5 * h * (rule.nodes[q] + 1.0);
      const double wq = 0.5 * h * rule.weights[q] * p(x);
      const auto N = space.shape(e, x, 0);
      for (int a = 0; a < 4; ++a)
        if (idx[a] >= 0) f[idx[a]] += wq * N[a];
    }
  }
  return f;
}

OperatorMatrices assemble(const FemSpace& space, const BeamConfig& cfg) {
  cfg.validate();
  if (std::abs(space.length() - cfg.L) > 1e-12 * cfg.L)
    throw std::invalid_argument("assemble: FemSpace length does not match BeamConfig::L");
  BaseMatrices base = assemble_base(space);
  OperatorMatrices mats;
  mats.M = std::move(base.M);
  mats.G = std::move(base.G);
  mats.Khat = std::move(base.Khat);
  mats.T = std::move(base.T);
  mats.Bint = std::move(base.Bint);
  mats.load_p0 = load_vector(space, cfg.p0);
  mats.M_alpha = mats.M + cfg.alpha * mats.G;
  mats.M_alpha_factor.compute(mats.M_alpha);
  if (mats.M_alpha_factor.info() != Eigen::Success)
    throw std::runtime_error("assemble: Cholesky factorization of M + alpha G failed");
  return mats;
}

Eigen::MatrixXd stretching_operator(const OperatorMatrices& mats, BoundaryVariant variant) {
  return variant == BoundaryVariant::Physical ? mats.G : Eigen::MatrixXd(-mats.Bint);
}

Eigen::VectorXd nonlinear_force(const Eigen::VectorXd& w, const OperatorMatrices& mats, const BeamConfig& cfg) {
  if (w.size() != mats.n_dof()) throw std::invalid_argument("nonlinear_force: dimension mismatch");
  const Eigen::VectorXd gw = mats.G * w;
  const double coupling = cfg.b2 * w.dot(gw) - cfg.b1;
  if (cfg.bc_variant == BoundaryVariant::Physical) return coupling * gw;
  return -coupling * (mats.Bint * w);
}

void dump_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      if (j > 0) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

void dump_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("dump_matrix: cannot open " + path);
  dump_matrix(out, m);
}

}  // namespace beamflutter
