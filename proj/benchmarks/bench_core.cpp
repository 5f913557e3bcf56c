#include <benchmark/benchmark.h>

#include "beamflutter/analysis.hpp"
#include "beamflutter/fem.hpp"
#include "beamflutter/integrate.hpp"
#include "beamflutter/modal.hpp"

using namespace beamflutter;

namespace {

BeamConfig flutter_config() {
  BeamConfig cfg;
  cfg.alpha = 1e-3;
  cfg.b2 = 1.0;
  cfg.U = 150.0;
  cfg.k1 = 0.5;
  return cfg;
}

void BM_Assemble(benchmark::State& state) {
  const FemSpace space(static_cast<int>(state.range(0)), 1.0);
  const BeamConfig cfg = flutter_config();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(space, cfg));
}
BENCHMARK(BM_Assemble)->Arg(10)->Arg(20)->Arg(40);

void BM_FemAcceleration(benchmark::State& state) {
  const FemSystem sys(FemSpace(static_cast<int>(state.range(0)), 1.0), flutter_config());
  const StateVector s = project_initial_state(sys.space(), ic::PolynomialID{});
  Eigen::VectorXd a(sys.dof());
  for (auto _ : state) {
    sys.acceleration(s.w, s.v, a);
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_FemAcceleration)->Arg(10)->Arg(20)->Arg(40);

void BM_FemRk4Step(benchmark::State& state) {
  const FemSystem sys(FemSpace(static_cast<int>(state.range(0)), 1.0), flutter_config());
  StateVector s = project_initial_state(sys.space(), ic::PolynomialID{});
  Rk4Stepper<FemSystem> stepper(sys);
  for (auto _ : state) {
    stepper.step(s, 1e-5);
    benchmark::DoNotOptimize(s.w.data());
  }
}
BENCHMARK(BM_FemRk4Step)->Arg(10)->Arg(20)->Arg(40);

void BM_ModalRk4Step(benchmark::State& state) {
  const BeamConfig cfg = flutter_config();
  const auto basis = build_modal_basis(static_cast<int>(state.range(0)), cfg);
  const ModalSystem sys(basis, cfg);
  StateVector s(sys.dof());
  s.v.setConstant(0.01);
  Rk4Stepper<ModalSystem> stepper(sys);
  for (auto _ : state) {
    stepper.step(s, 1e-5);
    benchmark::DoNotOptimize(s.w.data());
  }
}
BENCHMARK(BM_ModalRk4Step)->Arg(4)->Arg(8)->Arg(12);

void BM_SimulateOneSecond(benchmark::State& state) {
  const BeamConfig cfg = flutter_config();
  SimulationOptions o;
  o.T = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, ic::Equilibrium{}, o));
}
BENCHMARK(BM_SimulateOneSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
