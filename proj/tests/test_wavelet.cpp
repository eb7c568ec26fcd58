#include <gtest/gtest.h>

#include "adlab/errors.hpp"
#include "adlab/wavelet.hpp"
#include "test_util.hpp"

using namespace adlab;

namespace {

Signal gabor(Index M, double center, double width, double omega) {
  CVector x(M);
  for (Index n = 0; n < M; ++n) {
    const double u = static_cast<double>(n) - center;
    x[n] = std::exp(-u * u / (2 * width * width)) * std::polar(1.0, omega * static_cast<double>(n));
  }
  return Signal(x, 1.0);
}

}  // namespace

TEST(Wavelet, ClosedFormsAgree) {
  // psi_hat from a direct quadrature of psi.
  for (const Wavelet& psi : {Wavelet::mexican_hat(), Wavelet::morlet(), Wavelet::gaussian()}) {
    for (const double w : {0.0, 0.7, 2.0, 6.0}) {
      Complex s = 0.0;
      const double h = 1e-3;
      for (double t = -20; t <= 20; t += h) s += psi.time(t) * std::polar(1.0, -w * t) * h;
      EXPECT_LT(std::abs(s - psi.freq(w)), 1e-8) << psi.name() << " w=" << w;
    }
  }
  EXPECT_NEAR(Wavelet::mexican_hat().norm2(), 1.0, 1e-10);
  EXPECT_EQ(std::abs(Wavelet::morlet().freq(0.0)), 0.0);
}

TEST(Calderon, GaussianIsNotAdmissible) {
  EXPECT_THROW(calderon_constant(Wavelet::gaussian(), 40.0, 1024), NotAdmissible);
}

TEST(Calderon, MexicanHatValueAndDoubling) {
  const auto c = calderon_constant(Wavelet::mexican_hat(), 40.0, 4096);
  EXPECT_NEAR(c.value, 4.0 * std::sqrt(kPi) / 3.0, 1e-8);
  const auto c2 = calderon_constant(Wavelet::mexican_hat(), 40.0, 8192);
  EXPECT_LT(std::abs(c2.value - c.value) / c.value, 1e-3);
  EXPECT_LT(c.error_estimate / c.value, 1e-3);
}

TEST(Calderon, QuadraticInAmplitude) {
  Wavelet psi = Wavelet::mexican_hat();
  const double c1 = calderon_constant(psi, 40.0, 2048).value;
  psi.amplitude = 2.0;
  EXPECT_NEAR(calderon_constant(psi, 40.0, 2048).value, 4.0 * c1, 1e-12 * c1);
}

TEST(Calderon, Preconditions) {
  EXPECT_THROW(calderon_constant(Wavelet::mexican_hat(), 40.0, 32), InvalidInput);
  EXPECT_THROW(calderon_constant(Wavelet::mexican_hat(), 1.0, 1024), InvalidInput);
}

TEST(Scales, GridAndRange) {
  const auto s = log_scales(2.0, 5, 8);
  ASSERT_EQ(s.size(), 41u);
  EXPECT_DOUBLE_EQ(s.back(), 64.0);
  const Signal x(CVector::Ones(64), 1.0);
  EXPECT_THROW(wavelet_coefficients(x, Wavelet::mexican_hat(), {1.5}), ScaleOutOfRange);
  EXPECT_THROW(wavelet_coefficients(x, Wavelet::mexican_hat(), {17.0}), ScaleOutOfRange);
  EXPECT_THROW(wavelet_coefficients(x, Wavelet::mexican_hat(), {4.0, 3.0}), InvalidInput);
}

TEST(Scalogram, ZeroAndNonnegative) {
  const auto S0 = scalogram(Signal(CVector::Zero(64), 1.0), Wavelet::mexican_hat(), log_scales(2, 3, 4));
  EXPECT_EQ(S0.values.maxCoeff(), 0.0);
  const auto S = scalogram(white_noise(64, 1.0, 3), Wavelet::morlet(), log_scales(2, 3, 4));
  EXPECT_GE(S.values.minCoeff(), 0.0);
  EXPECT_TRUE(S.norms_within_tolerance);
}

TEST(Scalogram, MatchingAtomIsArgmax) {
  const Index M = 128;
  const auto scales = log_scales(2.0, 4, 4);
  const std::size_t jstar = 7;
  const Index bstar = 50;
  const CMatrix atoms = periodized_atoms(Wavelet::mexican_hat(), scales, M, 1.0);
  CVector x(M);
  for (Index m = 0; m < M; ++m) x[m] = atoms(static_cast<Index>(jstar), (m - bstar + M) % M);
  const auto S = scalogram(Signal(x, 1.0), Wavelet::mexican_hat(), scales);
  Index j = 0, b = 0;
  S.values.maxCoeff(&j, &b);
  EXPECT_EQ(b, bstar);
  EXPECT_EQ(static_cast<std::size_t>(j), jstar);
}

TEST(Scalogram, ShiftCovarianceIsExact) {
  const Index M = 64;
  const Signal x = white_noise(M, 1.0, 11);
  const auto scales = log_scales(2.0, 3, 4);
  const RMatrix S = scalogram(x, Wavelet::morlet(), scales).values;
  for (const Index s : {1, 5, 33}) {
    CVector y(M);
    for (Index n = 0; n < M; ++n) y[(n + s) % M] = x[n];
    const RMatrix Sy = scalogram(Signal(y, 1.0), Wavelet::morlet(), scales).values;
    for (Index j = 0; j < S.rows(); ++j) {
      for (Index n = 0; n < M; ++n) EXPECT_EQ(Sy(j, (n + s) % M), S(j, n));
    }
  }
}

TEST(Scalogram, ParallelMatchesSerial) {
  const Signal x = white_noise(48, 1.0, 12, 0.5);
  const auto scales = log_scales(1.0, 2, 3);
  const CMatrix a = wavelet_coefficients(x, Wavelet::mexican_hat(), scales);
  const CMatrix b = serial::wavelet_coefficients(x, Wavelet::mexican_hat(), scales);
  EXPECT_LT((a - b).norm() / b.norm(), 1e-12);
}

TEST(Reconstruction, GaborAtomInBand) {
  const Signal x = gabor(256, 128, 20, 0.12);
  const auto r8 = calderon_reconstruct(x, Wavelet::mexican_hat(), 2.0, 5, 8);
  EXPECT_LE(r8.relative_error, 0.05);
  EXPECT_TRUE(r8.in_band);
  const auto r4 = calderon_reconstruct(x, Wavelet::mexican_hat(), 2.0, 5, 4);
  const auto r16 = calderon_reconstruct(x, Wavelet::mexican_hat(), 2.0, 5, 16);
  // The residual is the truncated scale range, not the voice quadrature: the
  // error settles once voices reach 8.
  EXPECT_LE(r4.relative_error, 0.05);
  EXPECT_LT(std::abs(r16.relative_error - r8.relative_error), 0.005);
}

TEST(Reconstruction, DcIsOutOfBand) {
  const auto r = calderon_reconstruct(Signal(CVector::Ones(256), 1.0), Wavelet::mexican_hat(), 2.0, 5, 8);
  EXPECT_LT(r.signal.samples().norm(), 1e-6 * std::sqrt(256.0));
  EXPECT_FALSE(r.in_band);
}

TEST(Wavelet, ByName) {
  EXPECT_EQ(wavelet_by_name("morlet").kind, Wavelet::Kind::morlet);
  EXPECT_THROW(wavelet_by_name("haar"), InvalidInput);
}
