#pragma once

#include <initializer_list>
#include <vector>

namespace beamflutter {

/// Real polynomial with coefficients in ascending powers of x.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coefficients) : coeffs_(coefficients) {}
  explicit Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
  }

  /// Degree of the highest nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
      if (coeffs_[static_cast<std::size_t>(k)] != 0.0) return k;
    return -1;
  }

  bool is_zero() const { return degree() < 0; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> c = p.coeffs_;
    for (double& x : c) x *= s;
    return Polynomial(std::move(c));
  }

 private:
  std::vector<double> coeffs_;
};

}  // namespace beamflutter
