#include "adlab/model.hpp"

#include <cmath>
#include <random>

#include "adlab/dft.hpp"
#include "adlab/errors.hpp"

namespace adlab {

Signal::Signal(CVector samples, double dt, double origin)
    : samples_(std::move(samples)), dt_(dt), origin_(origin) {
  if (samples_.size() < 2) throw InvalidInput("a signal needs at least 2 samples");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw InvalidInput("sample spacing dt must be > 0");
  if (!samples_.allFinite()) throw InvalidInput("signal samples must be finite");
}

HermitianOperator::HermitianOperator(const CMatrix& entries) {
  if (entries.rows() != entries.cols()) throw DimError("Hermitian operator must be square");
  const double scale = std::max(entries.norm(), 1e-300);
  const double asym = (entries - entries.adjoint()).norm();
  if (asym > 1e-10 * scale) {
    throw InvalidInput("matrix is not Hermitian (relative asymmetry " + std::to_string(asym / scale) +
                       ")");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

RVector HermitianOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool HermitianOperator::is_psd(double tol_rel) const {
  if (dim() == 0) return true;
  const RVector ev = eigenvalues();
  return ev.minCoeff() >= -tol_rel * std::abs(trace());
}

std::string to_string(CovarianceKind kind) {
  switch (kind) {
    case CovarianceKind::stationary:
      return "stationary";
    case CovarianceKind::self_similar:
      return "self-similar";
    case CovarianceKind::chirp:
      return "chirp";
  }
  return "unknown";
}

CovarianceKind CovarianceModel::kind() const {
  return std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StationaryParams>) return CovarianceKind::stationary;
        else if constexpr (std::is_same_v<T, SelfSimilarParams>) return CovarianceKind::self_similar;
        else return CovarianceKind::chirp;
      },
      params);
}

HermitianOperator CovarianceModel::realize() const {
  return std::visit(
      [](const auto& p) -> HermitianOperator {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StationaryParams>) {
          return make_circulant_covariance(p.psd);
        } else if constexpr (std::is_same_v<T, SelfSimilarParams>) {
          return make_fbm_covariance(p.M, p.dt, p.hurst, p.sigma2, p.origin);
        } else {
          return make_chirp_covariance(p.M, p.dt, p.beta, p.width, p.sigma2, p.origin);
        }
      },
      params);
}

namespace {

void require_psd(const HermitianOperator& R, const char* what) {
  if (!R.is_psd(1e-10)) throw InvalidModel(std::string(what) + " covariance is not PSD");
}

}  // namespace

HermitianOperator make_circulant_covariance(const RVector& psd) {
  const Index M = psd.size();
  if (M < 2) throw InvalidModel("psd needs at least 2 entries");
  for (Index k = 0; k < M; ++k) {
    if (!(psd[k] >= 0.0) || !std::isfinite(psd[k])) {
      throw InvalidModel("psd entry " + std::to_string(k) + " is negative or not finite");
    }
  }
  // First column c[d] = (1/M) sum_k psd[k] exp(+i 2 pi k d / M); R[i][j] = c[(i-j) mod M].
  const CVector column = idft(psd.cast<Complex>()) / static_cast<double>(M);
  CMatrix R(M, M);
  for (Index i = 0; i < M; ++i) {
    for (Index j = 0; j < M; ++j) R(i, j) = column[(i - j + M) % M];
  }
  HermitianOperator op(R);
  require_psd(op, "circulant");
  return op;
}

HermitianOperator make_fbm_covariance(Index M, double dt, double hurst, double sigma2,
                                      double origin) {
  if (M < 2) throw InvalidModel("fBm covariance needs M >= 2");
  if (!(hurst > 0.0 && hurst < 1.0)) throw InvalidModel("Hurst exponent must lie in (0, 1)");
  if (!(sigma2 > 0.0)) throw InvalidModel("sigma2 must be > 0");
  if (!(dt > 0.0)) throw InvalidModel("dt must be > 0");
  if (origin < 0.0) throw InvalidModel("fBm grid origin must be >= 0");
  const double two_h = 2.0 * hurst;
  CMatrix R(M, M);
  for (Index i = 0; i < M; ++i) {
    const double ti = origin + static_cast<double>(i) * dt;
    for (Index j = 0; j < M; ++j) {
      const double tj = origin + static_cast<double>(j) * dt;
      R(i, j) = 0.5 * sigma2 *
                (std::pow(std::abs(ti), two_h) + std::pow(std::abs(tj), two_h) -
                 std::pow(std::abs(ti - tj), two_h));
    }
  }
  HermitianOperator op(R);
  require_psd(op, "fBm");
  return op;
}

HermitianOperator make_fbm_covariance(Index M, double dt, double hurst, double sigma2) {
  return make_fbm_covariance(M, dt, hurst, sigma2, dt);
}

RVector wrapped_gaussian_envelope(Index M, double dt, double width) {
  if (!(width > 0.0)) throw InvalidModel("envelope width must be > 0");
  RVector g(M);
  const double period = static_cast<double>(M) * dt;
  // Enough images that the neglected tail is below double precision.
  const int images = 2 + static_cast<int>(std::ceil(10.0 * width / period));
  for (Index k = 0; k < M; ++k) {
    double sum = 0.0;
    for (int p = -images; p <= images; ++p) {
      const double lag = static_cast<double>(k) * dt + p * period;
      sum += std::exp(-lag * lag / (2.0 * width * width));
    }
    g[k] = sum;
  }
  return g;
}

CVector chirp_phase(Index M, double dt, double beta, double origin) {
  CVector u(M);
  for (Index n = 0; n < M; ++n) {
    const double t = origin + static_cast<double>(n) * dt;
    u[n] = std::polar(1.0, kPi * beta * t * t);
  }
  return u;
}

HermitianOperator make_chirp_covariance(Index M, double dt, double beta, double width,
                                        double sigma2, double origin) {
  if (M < 2) throw InvalidModel("chirp covariance needs M >= 2");
  if (!(width > 0.0)) throw InvalidModel("envelope width must be > 0");
  if (!(sigma2 > 0.0)) throw InvalidModel("sigma2 must be > 0");
  const RVector g = wrapped_gaussian_envelope(M, dt, width);
  const CVector u = chirp_phase(M, dt, beta, origin);
  CMatrix R(M, M);
  for (Index i = 0; i < M; ++i) {
    for (Index j = 0; j < M; ++j) {
      R(i, j) = sigma2 * g[(i - j + M) % M] * u[i] * std::conj(u[j]);
    }
  }
  HermitianOperator op(R);
  require_psd(op, "chirp");
  return op;
}

HermitianOperator make_chirp_covariance(Index M, double dt, double beta, double width,
                                        double sigma2) {
  return make_chirp_covariance(M, dt, beta, width, sigma2, dt);
}

Signal white_noise(Index M, double sigma2, std::uint64_t seed, double dt) {
  if (!(sigma2 > 0.0)) throw InvalidInput("noise variance must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * sigma2));
  CVector samples(M);
  for (Index n = 0; n < M; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    samples[n] = Complex(re, im);
  }
  return Signal(std::move(samples), dt);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace adlab
