#pragma once

#include "adlab/model.hpp"
#include "adlab/types.hpp"

namespace adlab {

// Cyclic autocorrelation R[k] = dt * sum_n x[(n+k) mod M] conj(x[n]).
// Computed from the definition (O(M^2)); R[0] equals the dt-weighted energy.
CVector autocorrelation(const Signal& x);

// |DFT_k(x)|^2 * dt / M. Equals cyclic_estimate_spectrum(x) * dt, and
// dft(autocorrelation(x)) == M * periodogram(x).
RVector periodogram(const Signal& x);

// Eigen-spectrum of the dihedral estimator of the half-sample symmetric
// extension [x; Jx], restricted to the reflection-even subspace. Entry k is
// 2 C_k^2 / M with C_k = sum_n x[n] cos(pi k (n + 1/2) / M), in DCT index order.
// For M <= 16 the dense operator is built and its eigenvectors are checked
// against the DCT-II basis (NumericalFailure on mismatch). Complex input ->
// InvalidInput.
RVector dct_spectrum(const Signal& x);

// The M x M operator whose spectrum dct_spectrum returns.
CMatrix dct_estimator(const Signal& x);

// Orthonormal DCT-II basis vectors as columns.
RMatrix dct2_basis(Index M);

// Self-windowed time-frequency correlation on the (delay k, doppler l) grid:
// A[k][l] = dt * sum_n x[n] conj(x[(n-k) mod M]) exp(-i 2 pi l n / M).
struct AmbiguitySurface {
  CMatrix values;
  double dt = 1.0;
  double df = 1.0;  // 1 / (M dt)
};

// OpenMP over delay rows, one FFT per row.
AmbiguitySurface ambiguity(const Signal& x);

namespace serial {
// Direct triple loop.
AmbiguitySurface ambiguity(const Signal& x);
}  // namespace serial

// sum_{k,l} |A[k][l]|^2 = M * energy(x)^2 for every x (discrete Moyal).
double discrete_moyal_constant(Index M);

}  // namespace adlab
