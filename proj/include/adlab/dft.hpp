#pragma once

#include "adlab/types.hpp"

namespace adlab {

// Unnormalized forward DFT: X[k] = sum_n x[n] exp(-i 2 pi k n / M).
// This is the single convention used by every spectral identity in adlab.
CVector dft(const CVector& x);

// Unnormalized backward DFT: x[n] = sum_k X[k] exp(+i 2 pi k n / M).
// idft(dft(x)) == M * x.
CVector idft(const CVector& spectrum);

// Unitary DFT matrix F with F[k][n] = exp(-i 2 pi k n / M) / sqrt(M).
CMatrix unitary_dft_matrix(Index M);

}  // namespace adlab
