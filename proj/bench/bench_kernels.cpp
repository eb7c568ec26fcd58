// Serial reference kernels against their OpenMP counterparts. Thread count
// comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "adlab/estimator.hpp"
#include "adlab/gevp.hpp"
#include "adlab/groups.hpp"
#include "adlab/transforms.hpp"
#include "adlab/wavelet.hpp"

using namespace adlab;

namespace {

Signal noise(Index M) { return white_noise(M, 1.0, 42); }

CMatrix random_hermitian(Index M) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CMatrix A(M, M);
  for (Index i = 0; i < M; ++i) {
    for (Index j = 0; j < M; ++j) A(i, j) = Complex(g(rng), g(rng));
  }
  return (A + A.adjoint()) / 2.0;
}

template <bool Parallel>
void BM_GroupAverage(benchmark::State& state) {
  const Index M = state.range(0);
  const GroupRep G = tf_lattice_group(M);
  const CVector x = noise(M).samples();
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(accumulate_group_average(x, G));
    } else {
      benchmark::DoNotOptimize(serial::accumulate_group_average(x, G));
    }
  }
  state.SetComplexityN(M);
}

template <bool Parallel>
void BM_DoubleCommutator(benchmark::State& state) {
  const Index M = state.range(0);
  const HermitianOperator R(random_hermitian(M));
  const GeneratorBasis B = circulant_hermitian_basis(M);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(assemble_double_commutator(R, B));
    } else {
      benchmark::DoNotOptimize(serial::assemble_double_commutator(R, B));
    }
  }
}

void BM_DoubleCommutatorNested(benchmark::State& state) {
  const Index M = state.range(0);
  const HermitianOperator R(random_hermitian(M));
  const GeneratorBasis B = circulant_hermitian_basis(M);
  for (auto _ : state) benchmark::DoNotOptimize(serial::assemble_double_commutator_nested(R, B));
}

template <bool Parallel>
void BM_WaveletCoefficients(benchmark::State& state) {
  const Index M = state.range(0);
  const Signal x = noise(M);
  const auto scales = log_scales(2.0, 4, 8);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(wavelet_coefficients(x, Wavelet::mexican_hat(), scales));
    } else {
      benchmark::DoNotOptimize(serial::wavelet_coefficients(x, Wavelet::mexican_hat(), scales));
    }
  }
}

template <bool Parallel>
void BM_Ambiguity(benchmark::State& state) {
  const Signal x = noise(state.range(0));
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(ambiguity(x));
    } else {
      benchmark::DoNotOptimize(serial::ambiguity(x));
    }
  }
}

}  // namespace

BENCHMARK(BM_GroupAverage<false>)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GroupAverage<true>)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DoubleCommutator<false>)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DoubleCommutator<true>)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DoubleCommutatorNested)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WaveletCoefficients<false>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WaveletCoefficients<true>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ambiguity<false>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ambiguity<true>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
