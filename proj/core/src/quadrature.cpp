#include "beamflutter/quadrature.hpp"

#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace beamflutter {

namespace {

// boost stores the nonnegative half of the symmetric rule.
template <unsigned N>
QuadratureRule expand() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  QuadratureRule rule;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    rule.nodes.push_back(-x[i]);
    rule.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(x[i]);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int points) {
  switch (points) {
    case 2: return expand<2>();
    case 3: return expand<3>();
    case 4: return expand<4>();
    case 5: return expand<5>();
    case 8: return expand<8>();
    case 10: return expand<10>();
    default: throw std::invalid_argument("gauss_legendre: unsupported point count " + std::to_string(points));
  }
}

QuadratureRule composite_gauss(double a, double b, int panels, int points) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels must be positive");
  const QuadratureRule ref = gauss_legendre(points);
  const double h = (b - a) / panels;
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * ref.nodes.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t q = 0; q < ref.nodes.size(); ++q) {
      rule.nodes.push_back(mid + 0.5 * h * ref.nodes[q]);
      rule.weights.push_back(0.5 * h * ref.weights[q]);
    }
  }
  return rule;
}

}  // namespace beamflutter
