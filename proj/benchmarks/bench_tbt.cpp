#include <benchmark/benchmark.h>

#include "specest/field_sim.hpp"
#include "specest/spectral_dual.hpp"
#include "specest/tbt_linalg.hpp"

namespace {

using namespace specest;

void BM_TbtInvert(benchmark::State& state) {
  const int p = 2 * static_cast<int>(state.range(0)) + 1;
  const TbtGenerators gen = random_pd_generators(p, p, 1);
  for (auto _ : state) benchmark::DoNotOptimize(tbt_invert(gen));
  state.SetComplexityN(state.range(0));
}

void BM_DenseInvert(benchmark::State& state) {
  const int p = 2 * static_cast<int>(state.range(0)) + 1;
  const Eigen::MatrixXcd h = assemble_dense_hessian(random_pd_generators(p, p, 1));
  for (auto _ : state) benchmark::DoNotOptimize(dense_oracle_invert(h));
  state.SetComplexityN(state.range(0));
}

void BM_TbtSolve(benchmark::State& state) {
  const int p = 2 * static_cast<int>(state.range(0)) + 1;
  const TbtGenerators gen = random_pd_generators(p, p, 2);
  const BlockVector rhs = unstack(Eigen::MatrixXcd::Random(gen.dim(), 1), p);
  for (auto _ : state) benchmark::DoNotOptimize(tbt_solve(gen, rhs));
}

void BM_DenseSolve(benchmark::State& state) {
  const int p = 2 * static_cast<int>(state.range(0)) + 1;
  const Eigen::MatrixXcd h = assemble_dense_hessian(random_pd_generators(p, p, 2));
  const Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Random(h.rows(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dense_oracle_solve(h, rhs));
}

void BM_HessianGenerators(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FieldSamples y = synth_field(FieldModel::with_ratio(1.9, 1.3, 0.7, 3), 30, 30);
  const SymmetricMultisequence sigma = biased_covariances(y, IndexSet(n, n));
  const FrequencyGrid grid(8 * n + 2, 8 * n + 2);
  const ConstantPrior prior = constant_prior(sigma, grid);
  const SymmetricMultisequence q(IndexSet(n, n));
  for (auto _ : state) benchmark::DoNotOptimize(hessian_generators(q, prior.psi_inv));
}

}  // namespace

BENCHMARK(BM_TbtInvert)->DenseRange(4, 28, 8)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_DenseInvert)->DenseRange(4, 28, 8)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_TbtSolve)->DenseRange(4, 28, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseSolve)->DenseRange(4, 28, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HessianGenerators)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
