#pragma once

#include <cstddef>
#include <string>

#include "adlab/groups.hpp"
#include "adlab/model.hpp"
#include "adlab/parallel.hpp"
#include "adlab/types.hpp"

namespace adlab {

// Eigenpairs of a Hermitian matrix, eigenvalues descending. Each eigenvector is
// rotated so its largest-magnitude component (the first one, up to 1e-9
// relative) is real and positive.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

HermitianEigen hermitian_eigen(const CMatrix& hermitian);

// F_G(x) with its eigendecomposition.
struct AveragedEstimate {
  HermitianOperator op;
  RVector eigenvalues;
  CMatrix eigenvectors;
  std::string group_name;
};

// F = sum_g mu(g) (rho(g) x)(rho(g) x)^H.
//
// OpenMP kernel: elements are split into chunks of `chunk`, each chunk is summed
// with compensated (Kahan) summation, and chunk partials are combined in chunk
// order. The result is bit-identical for every thread count.
CMatrix accumulate_group_average(const CVector& x, const GroupRep& group,
                                 std::size_t chunk = parallel::kDefaultChunk);

namespace serial {
// Reference path: plain running sum in element order, dense matrices.
CMatrix accumulate_group_average(const CVector& x, const GroupRep& group);
}  // namespace serial

AveragedEstimate group_averaged_estimate(const Signal& x, const GroupRep& group);

// Eigenvalues of F_{Z_M}(x) in DFT-bin order, |X[k]|^2 / M. Cross-checked
// against the dense eigendecomposition (1e-9 relative), NumericalFailure if not.
RVector cyclic_estimate_spectrum(const Signal& x);

// Smallest principal-angle cosine between the top-r eigenvectors of `est` and
// span(S). S must have r orthonormal columns (InvalidBasis otherwise).
double subspace_alignment(const AveragedEstimate& est, const CMatrix& S, Index r);

// Number of eigenvalues above tol * lambda_max; 0 for the zero operator.
Index rank_of_signal_estimate(const AveragedEstimate& est, double tol = 1e-8);

}  // namespace adlab
