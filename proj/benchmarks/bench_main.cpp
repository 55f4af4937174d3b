#include <benchmark/benchmark.h>

#include "geodisc/integrator.hpp"
#include "geodisc/jets.hpp"
#include "geodisc/lifts.hpp"
#include "geodisc/optimal_control.hpp"

namespace {

using namespace geodisc;

Vector state(int n) {
  Vector z = Vector::LinSpaced(4 * n, 0.1, 1.0);
  z[0] = 2.0;
  return z;
}

void BM_SymplecticStepFree(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(n));
  const HamiltonianSystem H = second_order_hamiltonian(n, Potential::zero(n));
  const Vector z = state(n);
  for (auto _ : st) benchmark::DoNotOptimize(symplectic_step(C, H, 0.01, z));
}
BENCHMARK(BM_SymplecticStepFree)->Arg(1)->Arg(3);

void BM_SymplecticStepObstacle(benchmark::State& st) {
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(3));
  const HamiltonianSystem H = second_order_hamiltonian(3, obstacle_potential(3, Obstacle{1e-20, 1.0, Vector::Zero(2)}));
  const Vector z = state(3);
  for (auto _ : st) benchmark::DoNotOptimize(symplectic_step(C, H, 0.01, z));
}
BENCHMARK(BM_SymplecticStepObstacle);

void BM_Se2Experiment(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(run_se2_experiment(SE2ExperimentConfig{}));
}
BENCHMARK(BM_Se2Experiment)->Unit(benchmark::kMillisecond);

void BM_FreeSplineShooting(benchmark::State& st) {
  const Boundary b{Vector::Zero(1), Vector::Zero(1), Vector::Ones(1), Vector::Zero(1)};
  const OCProblem prob = make_free_spline(1, b, 1.0, 0.01);
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(1));
  for (auto _ : st) benchmark::DoNotOptimize(shoot(prob, C, Vector::Zero(1), Vector::Zero(1)));
}
BENCHMARK(BM_FreeSplineShooting)->Unit(benchmark::kMillisecond);

void BM_JetPushforward(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto method = static_cast<JetMethod>(st.range(1));
  const SmoothMap F = SmoothMap::from_kernel(3, 3, [](const auto& x) {
    using std::sin;
    std::decay_t<decltype(x)> y(3);
    y[0] = sin(x[0]) * x[1];
    y[1] = x[1] * x[2] + x[0];
    y[2] = x[2] / (2.0 + x[0] * x[0]);
    return y;
  });
  std::vector<Vector> slots;
  for (int r = 0; r <= k; ++r) slots.push_back(Vector::Constant(3, 0.1 * (r + 1)));
  const Jet j(slots);
  for (auto _ : st) benchmark::DoNotOptimize(jet_pushforward(F, j, method));
}
BENCHMARK(BM_JetPushforward)
    ->Args({2, static_cast<int>(JetMethod::kTaylor)})
    ->Args({2, static_cast<int>(JetMethod::kFaaDiBruno)})
    ->Args({2, static_cast<int>(JetMethod::kFiniteDifference)})
    ->Args({4, static_cast<int>(JetMethod::kTaylor)});

void BM_CotangentLiftForward(benchmark::State& st) {
  const CotangentLiftedMap C = lifted_cotangent_map(midpoint_map(3));
  const Vector x = Vector::LinSpaced(24, -1.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(C.forward_flat(x));
}
BENCHMARK(BM_CotangentLiftForward);

}  // namespace

BENCHMARK_MAIN();
