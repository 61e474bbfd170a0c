#include <vector>

#include <benchmark/benchmark.h>

#include "dyad/optimizer.hpp"
#include "dyad/phi.hpp"
#include "dyad/qdyn.hpp"
#include "dyad/qiit.hpp"
#include "dyad/qshape.hpp"

namespace {

using namespace dyad;

const CollapseOperator kOp({2, 0, 4, 6});

void BM_BigPhi(benchmark::State& state) {
  Tpm2 swap = Tpm2::swap();
  for (auto _ : state) {
    for (DyadState s : kAllStates) benchmark::DoNotOptimize(big_phi(swap, s));
  }
}
BENCHMARK(BM_BigPhi);

void BM_DistanceTable(benchmark::State& state) {
  auto metric = static_cast<Metric>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distance_table(Tpm2::swap(), metric));
  state.SetLabel(metric_name(metric));
}
BENCHMARK(BM_DistanceTable)->Arg(static_cast<int>(Metric::kTotalVariation))->Arg(static_cast<int>(Metric::kEarthMovers));

void BM_Solve(benchmark::State& state) {
  DistanceTable t = distance_table(Tpm2::swap());
  for (auto _ : state) benchmark::DoNotOptimize(solve(t));
}
BENCHMARK(BM_Solve);

void BM_GridOracle(benchmark::State& state) {
  DistanceTable t = distance_table(Tpm2::swap());
  double g = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle(t, g, 12.0));
}
BENCHMARK(BM_GridOracle)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Lindblad(benchmark::State& state) {
  DensityMatrix4 rho0 = DensityMatrix4::from_pure(PureState4(Vector4c::Constant(Complex(0.5, 0.0))));
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_evolve(rho0, swap_hamiltonian(), kOp, 1.0, 1.0, 1e-4));
}
BENCHMARK(BM_Lindblad)->Unit(benchmark::kMillisecond);

void BM_SdeTrajectory(benchmark::State& state) {
  SdeOptions opt;
  PureState4 psi0 = pair_superposition({0, 0}, {0, 1});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sde_trajectory(psi0, Matrix4c::Zero(), kOp, opt, seed++));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opt.horizon / opt.dt));
}
BENCHMARK(BM_SdeTrajectory)->Unit(benchmark::kMillisecond);

void BM_QuantumBigPhi(benchmark::State& state) {
  DensityMatrix4 rho = DensityMatrix4::from_pure(prepare_dyad_superposition());
  for (auto _ : state) benchmark::DoNotOptimize(quantum_big_phi(rho));
}
BENCHMARK(BM_QuantumBigPhi);

}  // namespace

BENCHMARK_MAIN();
