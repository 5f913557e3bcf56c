#include "beamflutter/initial_condition.hpp"

#include <memory>

#include "beamflutter/cantilever_mode.hpp"

namespace beamflutter {

Profile Profile::zero() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

Profile Profile::polynomial(const Polynomial& p) {
  return {[p](double x) { return p(x); }, [d = p.derivative()](double x) { return d(x); }};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Polynomial& polynomial_id() {
  static const Polynomial p{0.0, 0.0, 10.0, -20.0, 15.0, -4.0};
  return p;
}

}  // namespace

Profile initial_displacement(const InitialCondition& ic, double L) {
  return std::visit(Overloaded{
                        [L](const ic::SecondMode&) {
                          auto mode = std::make_shared<CantileverMode>(2, L);
                          return Profile{[mode](double x) { return (*mode)(x, 0); },
                                         [mode](double x) { return (*mode)(x, 1); }};
                        },
                        [](const ic::PolynomialID&) { return Profile::polynomial(polynomial_id()); },
                        [](const ic::Custom& c) { return Profile::polynomial(c.displacement); },
                        [](const auto&) { return Profile::zero(); },
                    },
                    ic);
}

Profile initial_velocity(const InitialCondition& ic, double /*L*/) {
  return std::visit(Overloaded{
                        [](const ic::Equilibrium&) { return Profile::polynomial({0.0, 0.01}); },
                        [](const ic::LinearIV&) { return Profile::polynomial({0.0, 1.0}); },
                        [](const ic::ScaledLinearIV& s) { return Profile::polynomial({0.0, s.c}); },
                        [](const ic::Custom& c) { return Profile::polynomial(c.velocity); },
                        [](const auto&) { return Profile::zero(); },
                    },
                    ic);
}

std::string ic_name(const InitialCondition& ic) {
  return std::visit(Overloaded{
                        [](const ic::Equilibrium&) { return std::string("equilibrium"); },
                        [](const ic::SecondMode&) { return std::string("second_mode"); },
                        [](const ic::PolynomialID&) { return std::string("polynomial"); },
                        [](const ic::LinearIV&) { return std::string("linear_iv"); },
                        [](const ic::ScaledLinearIV&) { return std::string("scaled_linear_iv"); },
                        [](const ic::Custom&) { return std::string("custom"); },
                    },
                    ic);
}

}  // namespace beamflutter
