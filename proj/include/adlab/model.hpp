#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "adlab/types.hpp"

namespace adlab {

// A uniformly sampled complex waveform: x[n] observed at t_n = origin + n*dt.
class Signal {
 public:
  Signal(CVector samples, double dt, double origin = 0.0);

  const CVector& samples() const { return samples_; }
  Index size() const { return samples_.size(); }
  double dt() const { return dt_; }
  double origin() const { return origin_; }
  double time(Index n) const { return origin_ + static_cast<double>(n) * dt_; }

  // Plain squared Euclidean norm sum |x[n]|^2.
  double norm2() const { return samples_.squaredNorm(); }
  // dt-weighted squared L2 norm sum |x[n]|^2 dt.
  double energy() const { return samples_.squaredNorm() * dt_; }

  Complex operator[](Index n) const { return samples_[n]; }

 private:
  CVector samples_;
  double dt_;
  double origin_;
};

// M x M Hermitian matrix. Construction symmetrizes exactly, (A + A^H)/2, after
// rejecting inputs that are not Hermitian to 1e-10 relative.
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& entries);

  Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }
  double frobenius_norm() const { return entries_.norm(); }
  double trace() const { return entries_.trace().real(); }

  // Ascending eigenvalues (dense Hermitian solver).
  RVector eigenvalues() const;
  // PSD up to -tol_rel * |trace| floating-point slack.
  bool is_psd(double tol_rel = 1e-10) const;

 private:
  CMatrix entries_;
};

enum class CovarianceKind { stationary, self_similar, chirp };

std::string to_string(CovarianceKind kind);

struct StationaryParams {
  RVector psd;
};

struct SelfSimilarParams {
  Index M = 64;
  double dt = 1.0;
  double hurst = 0.7;
  double sigma2 = 1.0;
  // Time of the first grid point; the default grid starts at dt.
  double origin = 1.0;
};

struct ChirpParams {
  Index M = 64;
  double dt = 1.0;
  double beta = 0.0;
  double width = 1.0;
  double sigma2 = 1.0;
  double origin = 1.0;
};

struct CovarianceModel {
  std::variant<StationaryParams, SelfSimilarParams, ChirpParams> params;

  CovarianceKind kind() const;
  HermitianOperator realize() const;
};

// R = F^H diag(psd) F with F the unitary DFT matrix. Throws InvalidModel on a
// negative entry.
HermitianOperator make_circulant_covariance(const RVector& psd);

// Fractional Brownian motion kernel (sigma2/2)(|t|^2H + |s|^2H - |t-s|^2H) on
// t_i = origin + i*dt. The three-argument form uses origin = dt.
HermitianOperator make_fbm_covariance(Index M, double dt, double hurst, double sigma2,
                                      double origin);
HermitianOperator make_fbm_covariance(Index M, double dt, double hurst, double sigma2);

// Wrapped Gaussian envelope, g[k] = sum_p exp(-((k + pM) dt)^2 / (2 w^2)).
// The periodization makes the envelope circulant and positive definite.
RVector wrapped_gaussian_envelope(Index M, double dt, double width);

// Diagonal chirp phase U_psi = diag(exp(i pi beta t_n^2)) as a vector.
CVector chirp_phase(Index M, double dt, double beta, double origin);

// R[i][j] = sigma2 * g[(i - j) mod M] * exp(i pi beta (t_i^2 - t_j^2)), i.e.
// R = U_psi C U_psi^H with C the circulant built from the wrapped envelope.
HermitianOperator make_chirp_covariance(Index M, double dt, double beta, double width,
                                        double sigma2, double origin);
HermitianOperator make_chirp_covariance(Index M, double dt, double beta, double width,
                                        double sigma2);

// Circular complex Gaussian noise with E|n[k]|^2 = sigma2, deterministic in seed.
Signal white_noise(Index M, double sigma2, std::uint64_t seed, double dt = 1.0);

// Stream seed for trial `index` derived from a master seed; serial and
// parallel drivers use it so they draw identical noise.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace adlab
