// Serial dense reference against the slot-local OpenMP kernels.
#include <benchmark/benchmark.h>

#include "wickfock/kernels.hpp"
#include "wickfock/model.hpp"
#include "wickfock/tensorops.hpp"

using namespace wickfock;

namespace {

constexpr std::size_t kDim = 2;

Matrix coefficients() { return preset_q_ccr(kDim, 0.5).coefficient_matrix(); }

Matrix operand(std::size_t level) {
  const auto size = static_cast<Index>(TensorOperator::identity(kDim, level).size());
  return Matrix::Random(size, size);
}

void set_threads(const benchmark::State& state) { kernels::set_num_threads(static_cast<int>(state.range(1))); }

void BM_AmplifyReference(benchmark::State& state) {
  const auto t = coefficients();
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::amplify(t, kDim, 1, level));
}

void BM_AmplifyParallel(benchmark::State& state) {
  set_threads(state);
  const auto t = coefficients();
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::amplify(t, kDim, 1, level));
  kernels::set_num_threads(0);
}

void BM_LeftApplyReference(benchmark::State& state) {
  const auto t = coefficients();
  const auto level = static_cast<std::size_t>(state.range(0));
  const auto a = operand(level);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::left_apply(t, kDim, 2, level, a));
}

void BM_LeftApplyParallel(benchmark::State& state) {
  set_threads(state);
  const auto t = coefficients();
  const auto level = static_cast<std::size_t>(state.range(0));
  const auto a = operand(level);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::left_apply(t, kDim, 2, level, a));
  kernels::set_num_threads(0);
}

void BM_RightApplyReference(benchmark::State& state) {
  const auto t = coefficients();
  const auto level = static_cast<std::size_t>(state.range(0));
  const auto a = operand(level);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::right_apply(a, t, kDim, 2, level));
}

void BM_RightApplyParallel(benchmark::State& state) {
  set_threads(state);
  const auto t = coefficients();
  const auto level = static_cast<std::size_t>(state.range(0));
  const auto a = operand(level);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::right_apply(a, t, kDim, 2, level));
  kernels::set_num_threads(0);
}

void BM_BuildP(benchmark::State& state) {
  set_threads(state);
  const auto t = build_T(preset_q_ccr(kDim, 0.5));
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_P(t, level));
  kernels::set_num_threads(0);
}

void reference_args(benchmark::internal::Benchmark* b) {
  for (int level : {4, 6, 8}) b->Args({level});
}

void parallel_args(benchmark::internal::Benchmark* b) {
  for (int level : {4, 6, 8})
    for (int threads : {1, 2, 4}) b->Args({level, threads});
}

}  // namespace

BENCHMARK(BM_AmplifyReference)->Apply(reference_args);
BENCHMARK(BM_AmplifyParallel)->Apply(parallel_args)->UseRealTime();
BENCHMARK(BM_LeftApplyReference)->Apply(reference_args);
BENCHMARK(BM_LeftApplyParallel)->Apply(parallel_args)->UseRealTime();
BENCHMARK(BM_RightApplyReference)->Apply(reference_args);
BENCHMARK(BM_RightApplyParallel)->Apply(parallel_args)->UseRealTime();
BENCHMARK(BM_BuildP)->Args({5, 1})->Args({5, 4})->Args({7, 1})->Args({7, 4})->UseRealTime();

BENCHMARK_MAIN();
