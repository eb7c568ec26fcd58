#pragma once

#include <string>
#include <vector>

#include "adlab/model.hpp"
#include "adlab/parallel.hpp"
#include "adlab/types.hpp"

namespace adlab {

// Closed-form analyzing functions. Fourier convention psi_hat(w) = int psi(t) e^{-iwt} dt.
//
//   mexican-hat  psi(t) = K (1 - t^2) e^{-t^2/2},        K = 2 / (sqrt(3) pi^{1/4})
//   morlet       psi(t) = pi^{-1/4} (e^{i w0 t} - e^{-w0^2/2}) e^{-t^2/2}
//   gaussian     psi(t) = pi^{-1/4} e^{-t^2/2}   (nonzero mean; not admissible)
//
// All three have unit L2 norm up to the Morlet correction term; `amplitude`
// scales psi.
struct Wavelet {
  enum class Kind { mexican_hat, morlet, gaussian };

  Kind kind = Kind::mexican_hat;
  double omega0 = 6.0;
  double amplitude = 1.0;

  static Wavelet mexican_hat() { return Wavelet{Kind::mexican_hat, 6.0, 1.0}; }
  static Wavelet morlet(double omega0 = 6.0) { return Wavelet{Kind::morlet, omega0, 1.0}; }
  static Wavelet gaussian() { return Wavelet{Kind::gaussian, 6.0, 1.0}; }

  Complex time(double t) const;
  Complex freq(double omega) const;
  bool is_real() const { return kind != Kind::morlet; }
  std::string name() const;
  // ||psi||_2^2 by quadrature in time.
  double norm2() const;
};

Wavelet wavelet_by_name(const std::string& name);

struct CalderonConstant {
  double value = 0.0;
  // |c(n) - c(2n)| from grid doubling.
  double error_estimate = 0.0;
  double omega_max = 0.0;
  int n_quad = 0;
};

// c_psi = int_0^inf |psi_hat(w)|^2 / w dw by the midpoint rule on (0, omega_max].
// NotAdmissible when |psi_hat(0)| exceeds 1e-8 of the peak; InvalidInput when
// n_quad < 64 or (0, omega_max] holds less than 99.99% of the energy on (0, inf).
CalderonConstant calderon_constant(const Wavelet& psi, double omega_max, int n_quad);

// a_j = a0 * 2^{j / voices}, j = 0 .. octaves * voices.
std::vector<double> log_scales(double a0, int octaves, int voices);

struct Scalogram {
  RMatrix values;  // J x M, |W(a_j, b_n)|^2
  std::vector<double> scales;
  int voices = 0;
  double dt = 1.0;
  // max_j | ||psi_{a_j,b}||^2 / ||psi||^2 - 1 |
  double max_norm_deviation = 0.0;
  bool norms_within_tolerance = true;  // deviation <= 2%
};

// Periodized atom samples f_j[m] = a^{-1/2} sum_p psi((m + p M) dt / a), so that
// psi_{a, b_n}[m] = f_j[(m - n) mod M]. Rows are scales.
CMatrix periodized_atoms(const Wavelet& psi, const std::vector<double>& scales, Index M, double dt);

// W[j][n] = dt * sum_m x[m] conj(psi_{a_j, b_n}[m]), positions b_n = n dt on the
// cyclic grid. ScaleOutOfRange outside [2 dt, M dt / 4]; scales must ascend.
CMatrix wavelet_coefficients(const Signal& x, const Wavelet& psi, const std::vector<double>& scales);

namespace serial {
CMatrix wavelet_coefficients(const Signal& x, const Wavelet& psi, const std::vector<double>& scales);
}  // namespace serial

Scalogram scalogram(const Signal& x, const Wavelet& psi, const std::vector<double>& scales,
                    int voices = 0);

struct Reconstruction {
  Signal signal;
  double relative_error = 0.0;
  bool in_band = false;  // relative_error <= in-band tolerance
  CalderonConstant constant;
};

inline constexpr double kReconstructionInBandTolerance = 0.05;

// Discrete resolution of identity
//   x_hat = c_psi^{-1} sum_j sum_n W[j][n] psi_{a_j,b_n} (da_j db / a_j^2),
// with log-spaced midpoint weights da_j = a_j ln 2 / voices and db = dt.
Reconstruction calderon_reconstruct(const Signal& x, const Wavelet& psi, double a0, int octaves,
                                    int voices);

}  // namespace adlab
