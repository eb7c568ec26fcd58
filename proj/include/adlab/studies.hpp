#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adlab/model.hpp"
#include "adlab/types.hpp"

namespace adlab {

// ---------------------------------------------------------------------------
// Discretization convergence
// ---------------------------------------------------------------------------

struct Tone {
  Complex amplitude;
  double frequency = 0.0;  // Hz
};

// x(t) = sum_k a_k exp(i 2 pi f_k t) observed on [0, duration). All |f_k| must
// stay below band_edge.
struct ToneSignal {
  std::vector<Tone> tones;
  double duration = 1.0;
  double band_edge = 16.0;

  Signal sample(Index M) const;
  // int_0^T x~(t + tau) conj(x(t)) dt with x~ the T-periodic extension,
  // in closed form.
  Complex continuous_autocorrelation(double tau) const;
};

struct ConvergenceResult {
  std::vector<Index> sizes;
  // ||F_{Z_M}(x_M) - K_M||_F / ||K_M||_F with K_M the sampled continuous kernel.
  std::vector<double> errors;
  std::vector<double> sup_errors;
  double slope = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0;
  bool fit_valid = false;  // false when an error is exactly 0
};

// Least-squares line through (log x, log y).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS in log space
};
LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

// M_list ascending with >= 4 entries. Aliasing when band_edge reaches the
// Nyquist frequency of min(M_list); InvalidInput when a tone exceeds band_edge.
ConvergenceResult discretization_study(const ToneSignal& signal, const std::vector<Index>& M_list);

// ---------------------------------------------------------------------------
// Uncertainty
// ---------------------------------------------------------------------------

struct UncertaintyResult {
  double delta_t = 0.0;
  double delta_omega = 0.0;
  double product = 0.0;
  double edge_energy_time = 0.0;
  double edge_energy_freq = 0.0;
  bool grid_artifact = false;  // product < 0.48
};

inline constexpr double kUncertaintyEdgeTolerance = 1e-6;
inline constexpr double kUncertaintyArtifactThreshold = 0.48;

// Centered second moments of |x(t)|^2 / ||x||^2 on the time grid and of
// |X(w)|^2 / ||X||^2 on the centered angular DFT grid. EdgeEnergy when the outer
// 10% of either grid carries >= 1e-6 of the energy.
UncertaintyResult uncertainty_check(const Signal& x);

Signal gaussian_pulse(Index M, double dt, double center, double width, double chirp_rate = 0.0);

// ---------------------------------------------------------------------------
// Generator commutator [A1, A2] = -iI on a grid
// ---------------------------------------------------------------------------

enum class DerivativeStencil { central, spectral };

std::string to_string(DerivativeStencil stencil);

// central: (v[n+1] - v[n-1]) / (2 dt), first and last rows zero.
// spectral: periodic Fourier derivative, Nyquist mode dropped.
CMatrix derivative_matrix(Index M, double dt, DerivativeStencil stencil);

// ||([A1, A2] + iI) v|| / ||v|| with A1 = -i D, A2 = diag(n dt).
double commutator_deviation(const CMatrix& derivative, double dt, const CVector& v);

struct CommutatorCheck {
  DerivativeStencil stencil = DerivativeStencil::spectral;
  double interior_deviation = 0.0;  // max over interior-supported Gaussians
  double boundary_deviation = 0.0;  // Gaussian centred on the first sample
};

// M >= 32. Test vectors have their outer 10% of indices set to zero.
CommutatorCheck commutator_generator_check(Index M, double dt,
                                           DerivativeStencil stencil = DerivativeStencil::spectral);

// ---------------------------------------------------------------------------
// Replacement SNR sweep
// ---------------------------------------------------------------------------

struct ReplacementPoint {
  double snr_db = 0.0;
  double mean_alignment = 0.0;
  double std_alignment = 0.0;
};

struct ReplacementSweep {
  Index M = 0;
  Index bin = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double noiseless_alignment = 0.0;
  double random_baseline = 0.0;  // 1 / sqrt(M)
  std::vector<ReplacementPoint> points;
};

// Complex exponential exp(i 2 pi k n / M) with unit amplitude.
Signal grid_exponential(Index M, Index bin, double dt = 1.0);

// s must be a single complex exponential at a grid frequency; trials >= 50.
// SNR is per-sample signal power over noise variance. Trials run in parallel
// with seeds derive_seed(seed, trial); the same noise draws are reused across
// SNR levels.
ReplacementSweep replacement_snr_sweep(const Signal& s, const std::vector<double>& snr_db, int trials,
                                       std::uint64_t seed);

struct CrossTermDecay {
  std::vector<int> trial_counts;
  int replicates = 0;
  // RMS over independent replicates of ||mean_t (F(s+n_t) - F(s) - F(n_t))||_F.
  std::vector<double> norms;
  double slope = 0.0;
  double fit_residual = 0.0;
};

// A single replicate gives one draw of a chi-like norm per count, far too
// noisy to fit a rate from; replicates >= 8.
CrossTermDecay cross_term_decay(const Signal& s, double snr_db, const std::vector<int>& trial_counts,
                                std::uint64_t seed, int replicates = 32);

// ---------------------------------------------------------------------------
// Affine noise-floor exploration (reported, never gated)
// ---------------------------------------------------------------------------

struct NoiseFloorReport {
  Index M = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double sigma2 = 1.0;

  // (a) L2-normalized wavelet coefficients of white noise, per scale.
  std::vector<double> scales;
  std::vector<double> coefficient_mean;
  std::vector<double> coefficient_expected;  // sigma2 dt ||psi_a||^2, exact
  double coefficient_max_z = 0.0;
  bool coefficient_flat = false;

  // (b) truncated affine average, Fourier diagonal under da db / a^2.
  std::vector<double> dilations;
  std::vector<double> omega;  // angular frequency of each positive bin
  std::vector<double> affine_diagonal;
  double affine_slope = 0.0;
  double affine_fit_residual = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool omega_scaling_observed = false;

  // (c) cyclic estimator of white noise, Fourier diagonal (flat reference).
  std::vector<double> cyclic_diagonal;
  double cyclic_max_z = 0.0;
  bool cyclic_flat = false;

  std::string note;
};

// trials >= 100. `scales` feeds part (a) and must be resolvable on the grid.
// Part (b) uses dilations 2^{j/8}, 1 <= a <= max(scales).
NoiseFloorReport affine_noise_floor_experiment(Index M, const std::vector<double>& scales, int trials,
                                               std::uint64_t seed);

}  // namespace adlab
