#include <gtest/gtest.h>

#include "adlab/estimator.hpp"
#include "adlab/gevp.hpp"
#include "adlab/parallel.hpp"
#include "adlab/studies.hpp"
#include "adlab/transforms.hpp"
#include "adlab/wavelet.hpp"
#include "test_util.hpp"

using namespace adlab;

// Every OpenMP kernel is run at several thread counts; results must be
// bit-identical, and match the serial reference to roundoff.

namespace {

const int kThreadCounts[] = {1, 2, 3, 8};

template <typename F>
auto at_threads(int n, F&& f) {
  parallel::ThreadCountGuard guard(n);
  return f();
}

}  // namespace

TEST(Parallel, GroupAverageBitIdentical) {
  std::mt19937_64 rng(1);
  for (const char* name : {"cyclic", "dihedral", "tf-lattice"}) {
    const Index M = 12;
    const GroupRep G = group_by_name(name, M);
    const CVector x = adlab::testing::random_vector(M, rng);
    const CMatrix ref = at_threads(1, [&] { return accumulate_group_average(x, G); });
    for (const int n : kThreadCounts) {
      const CMatrix F = at_threads(n, [&] { return accumulate_group_average(x, G); });
      EXPECT_EQ(F, ref) << name << " threads=" << n;
    }
    for (const std::size_t chunk : {1u, 5u, 64u}) {
      const CMatrix a = at_threads(1, [&] { return accumulate_group_average(x, G, chunk); });
      const CMatrix b = at_threads(4, [&] { return accumulate_group_average(x, G, chunk); });
      EXPECT_EQ(a, b);
    }
    EXPECT_LT((ref - serial::accumulate_group_average(x, G)).norm() / ref.norm(), 1e-14);
  }
}

TEST(Parallel, DoubleCommutatorBitIdentical) {
  std::mt19937_64 rng(2);
  const HermitianOperator R(adlab::testing::random_hermitian(16, rng));
  const GeneratorBasis B = circulant_hermitian_basis(16);
  const RMatrix ref = at_threads(1, [&] { return assemble_double_commutator(R, B).M; });
  for (const int n : kThreadCounts) {
    EXPECT_EQ(at_threads(n, [&] { return assemble_double_commutator(R, B).M; }), ref);
  }
  EXPECT_LT((ref - serial::assemble_double_commutator(R, B).M).norm(), 1e-13 * ref.norm());
}

TEST(Parallel, ScalogramAndAmbiguityBitIdentical) {
  const Signal x = white_noise(64, 1.0, 3);
  const auto scales = log_scales(2.0, 3, 4);
  const CMatrix w1 = at_threads(1, [&] { return wavelet_coefficients(x, Wavelet::morlet(), scales); });
  const CMatrix a1 = at_threads(1, [&] { return ambiguity(x).values; });
  for (const int n : kThreadCounts) {
    EXPECT_EQ(at_threads(n, [&] { return wavelet_coefficients(x, Wavelet::morlet(), scales); }), w1);
    EXPECT_EQ(at_threads(n, [&] { return ambiguity(x).values; }), a1);
  }
}

TEST(Parallel, MonteCarloDriversDeterministic) {
  const Signal s = grid_exponential(32, 4);
  const auto r1 = at_threads(1, [&] { return replacement_snr_sweep(s, {-5, 5}, 50, 17); });
  const auto c1 = at_threads(1, [&] { return cross_term_decay(s, 0.0, {8, 32}, 17); });
  const auto n1 = at_threads(1, [&] { return affine_noise_floor_experiment(64, {2.0, 4.0}, 100, 17); });
  for (const int n : kThreadCounts) {
    const auto r = at_threads(n, [&] { return replacement_snr_sweep(s, {-5, 5}, 50, 17); });
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      EXPECT_EQ(r.points[i].mean_alignment, r1.points[i].mean_alignment);
      EXPECT_EQ(r.points[i].std_alignment, r1.points[i].std_alignment);
    }
    EXPECT_EQ(at_threads(n, [&] { return cross_term_decay(s, 0.0, {8, 32}, 17); }).norms, c1.norms);
    const auto nf = at_threads(n, [&] { return affine_noise_floor_experiment(64, {2.0, 4.0}, 100, 17); });
    EXPECT_EQ(nf.cyclic_diagonal, n1.cyclic_diagonal);
    EXPECT_EQ(nf.affine_diagonal, n1.affine_diagonal);
    EXPECT_EQ(nf.coefficient_mean, n1.coefficient_mean);
  }
}
