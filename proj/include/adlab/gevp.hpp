#pragma once

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "adlab/groups.hpp"
#include "adlab/model.hpp"
#include "adlab/types.hpp"

namespace adlab {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

// Ordered Hermitian basis B_1..B_d of a Lie-algebra subspace. Elements are kept
// sparse; every built-in basis has O(M) nonzeros per element, which keeps the
// commutators [R, B_i] at O(M^2) each.
class GeneratorBasis {
 public:
  // Validates Hermiticity (1e-12) and linear independence: the Gram matrix must
  // satisfy min eig > 1e-10 max eig, SingularGram otherwise.
  GeneratorBasis(std::string name, std::vector<SparseCMatrix> elements);
  GeneratorBasis(std::string name, const std::vector<CMatrix>& elements);

  const std::string& name() const { return name_; }
  std::size_t size() const { return elements_.size(); }
  Index dim() const { return dim_; }
  const SparseCMatrix& element(std::size_t i) const { return elements_[i]; }
  CMatrix dense(std::size_t i) const { return CMatrix(elements_[i]); }
  // Real symmetric Gram matrix N_ij = Re Tr(B_i^H B_j), computed once.
  const RMatrix& gram() const { return gram_; }

 private:
  std::string name_;
  Index dim_ = 0;
  std::vector<SparseCMatrix> elements_;
  RMatrix gram_;
};

// Removes the identity direction from each element, then Gram-Schmidt
// orthonormalizes under Re Tr(A^H B), dropping directions whose residual norm
// falls below 1e-10 of the original.
std::vector<CMatrix> project_out_identity(const std::vector<CMatrix>& elements);

// Built-in bases (identity removed).
GeneratorBasis circulant_hermitian_basis(Index M);
GeneratorBasis diagonal_real_basis(Index M);
GeneratorBasis chirp_circulant_basis(Index M, double beta, double dt, double origin);
GeneratorBasis full_hermitian_basis(Index M);

inline constexpr Index kFullHermitianMaxDim = 24;

struct BasisOptions {
  double beta = 0.02;
  double dt = 1.0;
  double origin = 1.0;
};

// Names: circulant-hermitian, diagonal-real, chirp-circulant, full-hermitian.
GeneratorBasis basis_by_name(const std::string& name, Index M, const BasisOptions& opts);

struct DoubleCommutator {
  RMatrix M;  // M_ij = Tr(B_i^H [R, [R, B_j]])
  RMatrix N;  // N_ij = Tr(B_i^H B_j)
  double max_imag = 0.0;
  double max_asymmetry = 0.0;
};

// Gram-of-commutators form M_ij = Re Tr([R,B_i]^H [R,B_j]), OpenMP over the
// upper triangle. Imaginary parts and asymmetry are checked at 1e-10 relative
// (NumericalFailure beyond) and then discarded by symmetrization.
DoubleCommutator assemble_double_commutator(const HermitianOperator& R, const GeneratorBasis& basis);

namespace serial {
// Same Gram-of-commutators form, single thread.
DoubleCommutator assemble_double_commutator(const HermitianOperator& R, const GeneratorBasis& basis);
// Literal nested form Tr(B_i^H [R, [R, B_j]]) with dense products. O(d^2 M^3).
DoubleCommutator assemble_double_commutator_nested(const HermitianOperator& R,
                                                   const GeneratorBasis& basis);
}  // namespace serial

struct GevpSolution {
  double lambda_min = 0.0;
  RVector coeffs;  // c*, c^T N c = 1, first nonzero entry positive
  // Orthonormal (in N) basis of the lambda_min eigenspace, one column per vector.
  RMatrix eigenspace;
  bool degenerate = false;
  RVector eigenvalues;  // all generalized eigenvalues, ascending
};

// Symmetric-definite reduction: N = L L^T, S = L^{-1} M L^{-T}, eigen(S).
// SingularGram if N is not PD; NumericalFailure if lambda_min < -1e-10 ||M||.
// lambda_min in [-1e-12, 0) is clipped to 0. Eigenvalues within 1e-10 of
// max(lambda_max, scale) above lambda_min count as degenerate; pass an a-priori
// scale (match_group uses 4 ||R||^2) so an all-roundoff spectrum is recognised.
GevpSolution solve_gevp(const RMatrix& M, const RMatrix& N, double scale = 0.0);

struct MatchResult {
  GevpSolution solution;
  CMatrix generator;  // A* = sum_k c*_k B_k
  double delta = 0.0;  // sqrt(max(lambda_min, 0)) / ||R||_F
  std::string interpretation;  // nearest named generator or "unnamed"
  double interpretation_distance = 0.0;
  std::string basis;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

// Generators that match_group can name: shift (both Hermitian parts), logdiag,
// chirpshift (when beta is given via opts).
std::vector<GeneratorBundle> named_generators(Index M, const BasisOptions& opts);

// Builds the named basis, assembles, solves and interprets A*. full-hermitian
// is refused above M = 24 (InvalidInput).
MatchResult match_group(const HermitianOperator& R, const std::string& basis_name,
                        const BasisOptions& opts = {});
MatchResult match_group(const HermitianOperator& R, const GeneratorBasis& basis,
                        const BasisOptions& opts = {});

}  // namespace adlab
