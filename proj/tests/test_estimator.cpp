#include <gtest/gtest.h>

#include "adlab/dft.hpp"
#include "adlab/errors.hpp"
#include "adlab/estimator.hpp"
#include "test_util.hpp"

using namespace adlab;
using adlab::testing::random_vector;

TEST(Estimator, TrivialGroupIsOuterProduct) {
  std::mt19937_64 rng(1);
  const CVector x = random_vector(6, rng);
  const auto est = group_averaged_estimate(Signal(x, 1.0), trivial_group(6));
  EXPECT_LT((est.op.matrix() - x * x.adjoint()).norm(), 1e-13);
  EXPECT_EQ(rank_of_signal_estimate(est), 1);
}

TEST(Estimator, CyclicImpulseIsScaledIdentity) {
  CVector e0 = CVector::Zero(8);
  e0[0] = 1.0;
  const auto est = group_averaged_estimate(Signal(e0, 1.0), cyclic_group(8));
  EXPECT_LT((est.op.matrix() - CMatrix::Identity(8, 8) / 8.0).norm(), 1e-15);
}

TEST(Estimator, CyclicAllOnes) {
  const auto est = group_averaged_estimate(Signal(CVector::Ones(4), 1.0), cyclic_group(4));
  EXPECT_LT((est.op.matrix() - CMatrix::Ones(4, 4)).norm(), 1e-14);
  EXPECT_NEAR(est.eigenvalues[0], 4.0, 1e-13);
  for (Index i = 1; i < 4; ++i) EXPECT_NEAR(est.eigenvalues[i], 0.0, 1e-13);
}

TEST(Estimator, ReversalGroupForm) {
  std::mt19937_64 rng(2);
  const CVector x = random_vector(7, rng);
  const CVector Jx = x.reverse();
  const auto est = group_averaged_estimate(Signal(x, 1.0), reversal_group(7));
  EXPECT_LT((est.op.matrix() - 0.5 * (x * x.adjoint() + Jx * Jx.adjoint())).norm(), 1e-13);
}

TEST(Estimator, ReversalEigenvectorsAreEvenOddForRealX) {
  std::mt19937_64 rng(3);
  const CVector x = random_vector(7, rng).real().cast<Complex>();
  const auto est = group_averaged_estimate(Signal(x, 1.0), reversal_group(7));
  for (Index c = 0; c < 2; ++c) {
    const CVector v = est.eigenvectors.col(c);
    const double even = (v - v.reverse()).norm(), odd = (v + v.reverse()).norm();
    EXPECT_LT(std::min(even, odd), 1e-10);
  }
  CVector sym(5);
  sym << 1.0, 2.0, 3.0, 2.0, 1.0;
  EXPECT_EQ(rank_of_signal_estimate(group_averaged_estimate(Signal(sym, 1.0), reversal_group(5))), 1);
}

TEST(Estimator, DimensionMismatch) {
  EXPECT_THROW(group_averaged_estimate(Signal(CVector::Ones(5), 1.0), cyclic_group(4)), DimError);
}

TEST(Estimator, InvariantsAcrossGroups) {
  std::mt19937_64 rng(4);
  for (const char* name : {"trivial", "cyclic", "dihedral", "reversal", "tf-lattice"}) {
    const Index M = 9;
    const GroupRep G = group_by_name(name, M);
    const CVector x = random_vector(M, rng);
    const CMatrix F = accumulate_group_average(x, G);
    EXPECT_LT(std::abs(F.trace().real() - x.squaredNorm()) / x.squaredNorm(), 1e-12) << name;
    EXPECT_LT((F - F.adjoint()).norm(), 1e-13 * F.norm());
    EXPECT_GE(HermitianOperator(F).eigenvalues().minCoeff(), -1e-12 * F.trace().real());
    for (std::size_t h = 0; h < G.order(); h += 3) {
      const CMatrix Fh = accumulate_group_average(G.monomial(h).apply(x), G);
      EXPECT_LT((Fh - F).norm() / F.norm(), 1e-12) << name;
    }
    EXPECT_LT((F - serial::accumulate_group_average(x, G)).norm() / F.norm(), 1e-13);
  }
}

TEST(Estimator, CyclicIsCirculant) {
  std::mt19937_64 rng(5);
  const Index M = 12;
  const CMatrix F = accumulate_group_average(random_vector(M, rng), cyclic_group(M));
  for (Index i = 0; i < M; ++i) {
    for (Index j = 0; j < M; ++j) EXPECT_LT(std::abs(F(i, j) - F((i + 1) % M, (j + 1) % M)), 1e-12);
  }
}

TEST(Estimator, EigenPhaseConvention) {
  std::mt19937_64 rng(6);
  const auto est = group_averaged_estimate(Signal(random_vector(6, rng), 1.0), dihedral_group(6));
  for (Index c = 0; c < 6; ++c) {
    const RVector mag = est.eigenvectors.col(c).cwiseAbs();
    Index k = 0;
    while (mag[k] < (1.0 - 1e-9) * mag.maxCoeff()) ++k;
    EXPECT_GT(est.eigenvectors(k, c).real(), 0.0);
    EXPECT_EQ(est.eigenvectors(k, c).imag(), 0.0);
    if (c > 0) EXPECT_GE(est.eigenvalues[c - 1], est.eigenvalues[c]);
  }
}

TEST(CyclicSpectrum, ImpulseExponentialAndParseval) {
  CVector e0 = CVector::Zero(8);
  e0[0] = 1.0;
  const RVector flat = cyclic_estimate_spectrum(Signal(e0, 1.0));
  for (Index k = 0; k < 8; ++k) EXPECT_NEAR(flat[k], 1.0 / 8, 1e-15);

  CVector ex(8);
  for (Index n = 0; n < 8; ++n) ex[n] = std::polar(1.0, 2 * kPi * 3 * n / 8.0);
  const RVector s = cyclic_estimate_spectrum(Signal(ex, 1.0));
  for (Index k = 0; k < 8; ++k) EXPECT_NEAR(s[k], k == 3 ? 8.0 : 0.0, 1e-12);

  std::mt19937_64 rng(7);
  const CVector r = random_vector(16, rng);
  EXPECT_NEAR(cyclic_estimate_spectrum(Signal(r, 1.0)).sum(), r.squaredNorm(), 1e-12 * r.squaredNorm());
}

TEST(Alignment, ContainmentAndSelf) {
  const Index M = 16;
  CVector ex(M);
  for (Index n = 0; n < M; ++n) ex[n] = std::polar(1.0, 2 * kPi * 5 * n / static_cast<double>(M));
  const auto est = group_averaged_estimate(Signal(ex, 1.0), cyclic_group(M));
  const CMatrix S = ex / ex.norm();
  EXPECT_GE(subspace_alignment(est, S, 1), 1.0 - 1e-8);
  EXPECT_NEAR(subspace_alignment(est, est.eigenvectors.leftCols(3), 3), 1.0, 1e-14);
  EXPECT_THROW(subspace_alignment(est, 2.0 * S, 1), InvalidBasis);
}

TEST(Rank, ExponentialsAndZero) {
  const Index M = 8;
  CVector one(M), two(M);
  for (Index n = 0; n < M; ++n) {
    one[n] = std::polar(1.0, 2 * kPi * n / M);
    two[n] = one[n] + 0.5 * std::polar(1.0, 2 * kPi * 3 * n / M);
  }
  EXPECT_EQ(rank_of_signal_estimate(group_averaged_estimate(Signal(one, 1.0), cyclic_group(M))), 1);
  EXPECT_EQ(rank_of_signal_estimate(group_averaged_estimate(Signal(two, 1.0), cyclic_group(M))), 2);
  EXPECT_EQ(rank_of_signal_estimate(group_averaged_estimate(Signal(CVector::Zero(M), 1.0), cyclic_group(M))), 0);
}
