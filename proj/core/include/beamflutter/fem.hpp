#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "beamflutter/beam_config.hpp"
#include "beamflutter/energy.hpp"
#include "beamflutter/initial_condition.hpp"

namespace beamflutter {

/// Hermite-cubic discretization of H^2_* = { w in H^2 : w(0) = w'(0) = 0 }
/// on a uniform mesh of [0, L].
///
/// Node i (1..n_elements) carries DOFs 2(i-1) (value) and 2(i-1)+1 (slope);
/// the clamped node 0 has no DOFs. All assembled matrices have half-bandwidth 3
/// but are stored dense.
class FemSpace {
 public:
  /// Throws std::invalid_argument if n_elements < 2 or L <= 0.
  FemSpace(int n_elements, double L);

  int n_elements() const { return n_elements_; }
  double length() const { return L_; }
  double element_size() const { return h_; }
  Eigen::Index n_dof() const { return 2 * n_elements_; }
  double node(int i) const { return i * h_; }

  /// Global DOF of (node, local 0 = value / 1 = slope); -1 on the clamped node.
  Eigen::Index dof(int node, int component) const {
    return node == 0 ? -1 : 2 * (node - 1) + component;
  }
  Eigen::Index tip_value_dof() const { return dof(n_elements_, 0); }
  Eigen::Index tip_slope_dof() const { return dof(n_elements_, 1); }

  /// Element index containing x (the last element owns x = L).
  int element_of(double x) const;

  /// Derivative `order` (0..3) of the four local shape functions
  /// (value_left, slope_left, value_right, slope_right) of element e at x.
  std::array<double, 4> shape(int e, double x, int order) const;

  /// Evaluates derivative `order` of the discrete function with coefficients c at x.
  double evaluate(const Eigen::VectorXd& coeffs, double x, int order = 0) const;

  /// Hermite interpolation: nodal values and slopes of the profile.
  Eigen::VectorXd interpolate(const Profile& profile) const;

 private:
  int n_elements_;
  double L_;
  double h_;
};

/// Configuration-independent integrals of the basis.
struct BaseMatrices {
  Eigen::MatrixXd M;     // (phi_j, phi_i)
  Eigen::MatrixXd G;     // (phi_j', phi_i')
  Eigen::MatrixXd Khat;  // (phi_j'', phi_i'')
  Eigen::MatrixXd T;     // (phi_j', phi_i)   row i = test function
  Eigen::MatrixXd Bint;  // (phi_j'', phi_i)  row i = test function
};

/// Assembles the five Gram-type matrices with 4-point Gauss per element.
BaseMatrices assemble_base(const FemSpace& space);

/// Single-element matrices for an element of length h (local DOF order
/// value_left, slope_left, value_right, slope_right).
BaseMatrices element_matrices(double h);

struct OperatorMatrices {
  Eigen::MatrixXd M;
  Eigen::MatrixXd G;
  Eigen::MatrixXd Khat;
  Eigen::MatrixXd T;
  Eigen::MatrixXd Bint;
  Eigen::VectorXd load_p0;  // (p0, phi_i)
  Eigen::MatrixXd M_alpha;  // M + alpha G
  Eigen::LLT<Eigen::MatrixXd> M_alpha_factor;

  Eigen::Index n_dof() const { return M.rows(); }
  EnergyForms energy_forms() const { return {M, G, Khat}; }
};

/// Assembles all operator matrices for `cfg` and factorizes M_alpha.
/// Throws std::runtime_error if the factorization fails.
OperatorMatrices assemble(const FemSpace& space, const BeamConfig& cfg);

/// Load vector (p, phi_i) of a polynomial pressure, integrated exactly.
Eigen::VectorXd load_vector(const FemSpace& space, const Polynomial& p);

/// Nonlinear stretching force F_nl(w):
///   Physical:    (b2 w'Gw - b1) G w
///   NaiveLinear: (b2 w'Gw - b1) (-Bint) w
/// so that M_alpha v' = -D Khat w - F_nl(w) - C v - beta (M v + U T w) + load_p0.
Eigen::VectorXd nonlinear_force(const Eigen::VectorXd& w, const OperatorMatrices& mats, const BeamConfig& cfg);

/// Matrix N with F_nl(w) = (b2 w'Gw - b1) N w: G (Physical) or -Bint (NaiveLinear).
Eigen::MatrixXd stretching_operator(const OperatorMatrices& mats, BoundaryVariant variant);

/// Writes a dense matrix as rows of space-separated `%.17g` values.
void dump_matrix(std::ostream& os, const Eigen::MatrixXd& m);
void dump_matrix(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace beamflutter
