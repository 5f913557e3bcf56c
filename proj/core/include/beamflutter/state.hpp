#pragma once

#include <Eigen/Core>

namespace beamflutter {

/// Semidiscrete state (w, w_t) as coefficient vectors over a discrete basis.
struct StateVector {
  Eigen::VectorXd w;
  Eigen::VectorXd v;
  double t = 0.0;

  StateVector() = default;
  explicit StateVector(Eigen::Index n) : w(Eigen::VectorXd::Zero(n)), v(Eigen::VectorXd::Zero(n)) {}
  StateVector(Eigen::VectorXd w_, Eigen::VectorXd v_, double t_ = 0.0)
      : w(std::move(w_)), v(std::move(v_)), t(t_) {}

  Eigen::Index size() const { return w.size(); }
  bool finite() const { return w.allFinite() && v.allFinite(); }
};

}  // namespace beamflutter
