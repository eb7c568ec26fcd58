#include "adlab/gevp.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "adlab/errors.hpp"

namespace adlab {
namespace {

SparseCMatrix to_sparse(const CMatrix& dense) {
  const double cutoff = 1e-300;
  return dense.sparseView(1.0, cutoff);
}

double real_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

}  // namespace

GeneratorBasis::GeneratorBasis(std::string name, std::vector<SparseCMatrix> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidBasis("generator basis is empty");
  dim_ = elements_.front().rows();
  for (auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_) throw DimError("basis elements have mixed dimensions");
    const SparseCMatrix adj = e.adjoint();
    const double scale = std::max(e.norm(), 1e-300);
    if ((e - adj).norm() > 1e-12 * scale) throw InvalidBasis("basis element is not Hermitian");
    e.makeCompressed();
  }
  const auto d = static_cast<Index>(elements_.size());
  gram_.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      const SparseCMatrix prod = elements_[static_cast<std::size_t>(i)].adjoint() *
                                 elements_[static_cast<std::size_t>(j)];
      Complex tr = 0.0;
      for (Index k = 0; k < prod.outerSize(); ++k) tr += prod.coeff(k, k);
      gram_(i, j) = gram_(j, i) = tr.real();
    }
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(gram_, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  if (!(eig.eigenvalues().minCoeff() > 1e-10 * top)) {
    throw SingularGram("basis '" + name_ + "' is linearly dependent");
  }
}

GeneratorBasis::GeneratorBasis(std::string name, const std::vector<CMatrix>& elements)
    : GeneratorBasis(std::move(name), [&] {
        std::vector<SparseCMatrix> sparse;
        sparse.reserve(elements.size());
        for (const auto& e : elements) sparse.push_back(to_sparse(e));
        return sparse;
      }()) {}

std::vector<CMatrix> project_out_identity(const std::vector<CMatrix>& elements) {
  std::vector<CMatrix> out;
  for (const auto& e : elements) {
    const Index M = e.rows();
    CMatrix v = e - (e.trace() / static_cast<double>(M)) * CMatrix::Identity(M, M);
    const double original = std::max(e.norm(), 1e-300);
    // Two Gram-Schmidt passes for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) v -= real_inner(q, v) * q;
    }
    const double n = v.norm();
    if (n <= 1e-10 * original) continue;
    out.push_back(v / n);
  }
  return out;
}

GeneratorBasis circulant_hermitian_basis(Index M) {
  if (M < 3) throw InvalidInput("circulant-hermitian basis needs M >= 3");
  std::vector<CMatrix> raw;
  const double root2 = std::sqrt(2.0);
  for (Index k = 1; k <= M / 2; ++k) {
    const CMatrix Pk = shift_element(M, k).dense();
    const CMatrix Pmk = shift_element(M, M - k).dense();
    raw.push_back((Pk + Pmk) / root2);
    if (2 * k != M) raw.push_back((Pk - Pmk) / Complex(0.0, root2));
  }
  return GeneratorBasis("circulant-hermitian", project_out_identity(raw));
}

GeneratorBasis diagonal_real_basis(Index M) {
  if (M < 2) throw InvalidInput("diagonal-real basis needs M >= 2");
  std::vector<CMatrix> raw;
  for (Index k = 0; k < M; ++k) {
    CMatrix E = CMatrix::Zero(M, M);
    E(k, k) = 1.0;
    raw.push_back(E);
  }
  return GeneratorBasis("diagonal-real", project_out_identity(raw));
}

GeneratorBasis chirp_circulant_basis(Index M, double beta, double dt, double origin) {
  const GeneratorBasis base = circulant_hermitian_basis(M);
  const CVector u = chirp_phase(M, dt, beta, origin);
  std::vector<CMatrix> conj;
  for (std::size_t i = 0; i < base.size(); ++i) {
    conj.push_back(u.asDiagonal() * base.dense(i) * u.conjugate().asDiagonal());
  }
  return GeneratorBasis("chirp-circulant", conj);
}

GeneratorBasis full_hermitian_basis(Index M) {
  if (M > kFullHermitianMaxDim) {
    throw InvalidInput("full-hermitian basis refused above M = " + std::to_string(kFullHermitianMaxDim) +
                       " (assembly is O(M^6))");
  }
  std::vector<CMatrix> raw;
  const double root2 = std::sqrt(2.0);
  for (Index i = 0; i < M; ++i) {
    CMatrix E = CMatrix::Zero(M, M);
    E(i, i) = 1.0;
    raw.push_back(E);
  }
  for (Index i = 0; i < M; ++i) {
    for (Index j = i + 1; j < M; ++j) {
      CMatrix S = CMatrix::Zero(M, M);
      S(i, j) = S(j, i) = 1.0 / root2;
      raw.push_back(S);
      CMatrix A = CMatrix::Zero(M, M);
      A(i, j) = Complex(0.0, -1.0 / root2);
      A(j, i) = Complex(0.0, 1.0 / root2);
      raw.push_back(A);
    }
  }
  return GeneratorBasis("full-hermitian", project_out_identity(raw));
}

GeneratorBasis basis_by_name(const std::string& name, Index M, const BasisOptions& opts) {
  if (name == "circulant-hermitian") return circulant_hermitian_basis(M);
  if (name == "diagonal-real") return diagonal_real_basis(M);
  if (name == "chirp-circulant") return chirp_circulant_basis(M, opts.beta, opts.dt, opts.origin);
  if (name == "full-hermitian") return full_hermitian_basis(M);
  throw InvalidInput("unknown basis '" + name + "'");
}

namespace {

void require_match(const HermitianOperator& R, const GeneratorBasis& basis) {
  if (R.dim() != basis.dim()) throw DimError("covariance and basis sizes differ");
}

std::vector<CMatrix> commutators(const CMatrix& R, const GeneratorBasis& basis) {
  std::vector<CMatrix> out(basis.size());
  const auto d = static_cast<std::ptrdiff_t>(basis.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < d; ++i) {
    const SparseCMatrix& B = basis.element(static_cast<std::size_t>(i));
    out[static_cast<std::size_t>(i)] = R * B - B * R;
  }
  return out;
}

// Imaginary-part and symmetry checks, then symmetrize. Entries are measured
// against the bound |M_ij| <= 4 ||R||^2 max_k ||B_k||^2, since a commuting pair
// leaves nothing but roundoff in raw.
DoubleCommutator finish(const CMatrix& raw, const CMatrix& R, const GeneratorBasis& basis) {
  DoubleCommutator out;
  double bmax = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) bmax = std::max(bmax, basis.element(i).squaredNorm());
  const double scale = std::max(4.0 * R.squaredNorm() * bmax, 1e-300);
  out.max_imag = raw.imag().cwiseAbs().maxCoeff() / scale;
  const RMatrix re = raw.real();
  out.max_asymmetry = (re - re.transpose()).cwiseAbs().maxCoeff() / scale;
  if (out.max_imag > 1e-10 || out.max_asymmetry > 1e-10) {
    throw NumericalFailure("double-commutator matrix is not real symmetric to 1e-10");
  }
  out.M = 0.5 * (re + re.transpose());
  out.N = basis.gram();
  return out;
}

}  // namespace

DoubleCommutator assemble_double_commutator(const HermitianOperator& R, const GeneratorBasis& basis) {
  require_match(R, basis);
  const auto d = static_cast<Index>(basis.size());
  const std::vector<CMatrix> C = commutators(R.matrix(), basis);
  CMatrix raw(d, d);
#pragma omp parallel for schedule(dynamic, 1)
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      const Complex v = C[static_cast<std::size_t>(i)].cwiseProduct(
                            C[static_cast<std::size_t>(j)].conjugate()).sum();
      // Tr(C_i^H C_j) = sum conj(C_i) C_j = conj(sum C_i conj(C_j)).
      raw(i, j) = std::conj(v);
      raw(j, i) = v;
    }
  }
  return finish(raw, R.matrix(), basis);
}

namespace serial {

DoubleCommutator assemble_double_commutator(const HermitianOperator& R, const GeneratorBasis& basis) {
  require_match(R, basis);
  const auto d = static_cast<Index>(basis.size());
  const std::vector<CMatrix> C = commutators(R.matrix(), basis);
  CMatrix raw(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      raw(i, j) = C[static_cast<std::size_t>(i)].conjugate().cwiseProduct(C[static_cast<std::size_t>(j)]).sum();
    }
  }
  return finish(raw, R.matrix(), basis);
}

DoubleCommutator assemble_double_commutator_nested(const HermitianOperator& R,
                                                   const GeneratorBasis& basis) {
  require_match(R, basis);
  const auto d = static_cast<Index>(basis.size());
  const CMatrix& Rm = R.matrix();
  CMatrix raw(d, d);
  for (Index j = 0; j < d; ++j) {
    const CMatrix Bj = basis.dense(static_cast<std::size_t>(j));
    const CMatrix inner = Rm * Bj - Bj * Rm;
    const CMatrix outer = Rm * inner - inner * Rm;
    for (Index i = 0; i < d; ++i) {
      raw(i, j) = (basis.dense(static_cast<std::size_t>(i)).adjoint() * outer).trace();
    }
  }
  return finish(raw, R.matrix(), basis);
}

}  // namespace serial

GevpSolution solve_gevp(const RMatrix& M, const RMatrix& N, double scale) {
  const Index d = M.rows();
  if (d == 0 || M.cols() != d || N.rows() != d || N.cols() != d) throw DimError("GEVP matrices must be d x d");

  Eigen::SelfAdjointEigenSolver<RMatrix> gram_eig(N, Eigen::EigenvaluesOnly);
  const double gram_top = gram_eig.eigenvalues().maxCoeff();
  if (!(gram_eig.eigenvalues().minCoeff() > 1e-10 * gram_top)) throw SingularGram("Gram matrix is not PD");
  Eigen::LLT<RMatrix> llt(N);
  if (llt.info() != Eigen::Success) throw SingularGram("Cholesky factorization of the Gram matrix failed");

  // S = L^{-1} M L^{-T}
  const RMatrix L = llt.matrixL();
  RMatrix S = L.triangularView<Eigen::Lower>().solve(M);
  S = L.triangularView<Eigen::Lower>().solve(S.transpose()).transpose();
  S = 0.5 * (S + S.transpose());

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(S);
  if (eig.info() != Eigen::Success) throw NumericalFailure("GEVP eigensolver did not converge");

  GevpSolution out;
  out.eigenvalues = eig.eigenvalues();
  double lambda = out.eigenvalues[0];
  const double mnorm = M.norm();
  if (lambda < -1e-10 * std::max(mnorm, 1e-300) && lambda < -1e-12) {
    throw NumericalFailure("negative minimal eigenvalue " + std::to_string(lambda));
  }
  if (lambda < 0.0) lambda = 0.0;
  out.lambda_min = lambda;

  // Eigenvalues within 1e-10 relative (of the spectrum scale) share the minimum.
  const double spread = std::max({std::abs(out.eigenvalues[d - 1]), scale, 1e-300});
  Index multiplicity = 1;
  while (multiplicity < d && out.eigenvalues[multiplicity] - out.eigenvalues[0] <= 1e-10 * spread) {
    ++multiplicity;
  }
  if (mnorm == 0.0) multiplicity = d;
  out.degenerate = multiplicity > 1;

  const auto back = [&](const RVector& y) -> RVector {
    return L.transpose().triangularView<Eigen::Upper>().solve(y);
  };
  out.eigenspace.resize(d, multiplicity);
  for (Index k = 0; k < multiplicity; ++k) out.eigenspace.col(k) = back(eig.eigenvectors().col(k));

  RVector c = out.eigenspace.col(0);
  const double cmax = c.cwiseAbs().maxCoeff();
  for (Index k = 0; k < d; ++k) {
    if (std::abs(c[k]) > 1e-12 * cmax) {
      if (c[k] < 0.0) c = -c;
      break;
    }
  }
  out.coeffs = c;
  return out;
}

std::vector<GeneratorBundle> named_generators(Index M, const BasisOptions& opts) {
  return {shift_generator(M), log_diag_generator(M),
          chirp_conj_shift_generator(M, opts.beta, opts.dt, opts.origin)};
}

namespace {

CMatrix combine(const GeneratorBasis& basis, const RVector& c) {
  CMatrix A = CMatrix::Zero(basis.dim(), basis.dim());
  for (std::size_t k = 0; k < basis.size(); ++k) A += c[static_cast<Index>(k)] * basis.dense(k);
  return A;
}

struct NamedDirection {
  std::string label;
  CMatrix unit;  // identity removed, unit Frobenius norm
};

std::vector<NamedDirection> named_directions(Index M, const BasisOptions& opts) {
  std::vector<NamedDirection> out;
  for (const auto& bundle : named_generators(M, opts)) {
    for (const auto& part : bundle.parts) {
      const CMatrix& g = part.matrix.matrix();
      CMatrix v = g - (g.trace() / static_cast<double>(M)) * CMatrix::Identity(M, M);
      const double n = v.norm();
      if (n > 1e-12) out.push_back({bundle.name, v / n});
    }
  }
  return out;
}

}  // namespace

MatchResult match_group(const HermitianOperator& R, const GeneratorBasis& basis, const BasisOptions& opts) {
  using Clock = std::chrono::steady_clock;
  MatchResult out;
  out.basis = basis.name();

  const auto t0 = Clock::now();
  const DoubleCommutator dc = assemble_double_commutator(R, basis);
  const auto t1 = Clock::now();
  out.solution = solve_gevp(dc.M, dc.N, 4.0 * R.matrix().squaredNorm());
  const auto t2 = Clock::now();
  out.assembly_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.solve_seconds = std::chrono::duration<double>(t2 - t1).count();

  const auto directions = named_directions(R.dim(), opts);
  GevpSolution& sol = out.solution;

  if (sol.degenerate) {
    // Generators spanning the eigenspace are Frobenius-orthonormal (N-orthonormal
    // coefficients), so projecting a named direction is a set of inner products.
    std::vector<CMatrix> span;
    for (Index k = 0; k < sol.eigenspace.cols(); ++k) span.push_back(combine(basis, sol.eigenspace.col(k)));
    double best = std::numeric_limits<double>::infinity();
    RVector best_coeffs = sol.coeffs;
    std::string best_label = "unnamed";
    for (const auto& dir : directions) {
      RVector y(static_cast<Index>(span.size()));
      for (std::size_t k = 0; k < span.size(); ++k) y[static_cast<Index>(k)] = real_inner(span[k], dir.unit);
      const double ynorm = y.norm();
      if (ynorm < 1e-12) continue;
      const RVector coeffs = sol.eigenspace * (y / ynorm);
      const double dist = (combine(basis, coeffs) - dir.unit).norm();
      if (dist < best) {
        best = dist;
        best_coeffs = coeffs;
        best_label = dir.label;
      }
    }
    if (std::isfinite(best)) {
      sol.coeffs = best_coeffs;
      out.interpretation_distance = best;
      out.interpretation = best <= 0.1 ? best_label : "unnamed";
    } else {
      out.interpretation = "unnamed";
      out.interpretation_distance = 2.0;
    }
  } else {
    const CMatrix A = combine(basis, sol.coeffs);
    double best = std::numeric_limits<double>::infinity();
    std::string label = "unnamed";
    for (const auto& dir : directions) {
      const double dist = std::min((A - dir.unit).norm(), (A + dir.unit).norm());
      if (dist < best) {
        best = dist;
        label = dir.label;
      }
    }
    out.interpretation_distance = best;
    out.interpretation = best <= 0.1 ? label : "unnamed";
  }

  out.generator = combine(basis, sol.coeffs);
  out.delta = std::sqrt(std::max(sol.lambda_min, 0.0)) / R.frobenius_norm();
  return out;
}

MatchResult match_group(const HermitianOperator& R, const std::string& basis_name, const BasisOptions& opts) {
  if (basis_name == "full-hermitian" && R.dim() > kFullHermitianMaxDim) {
    throw InvalidInput("full-hermitian basis refused above M = " + std::to_string(kFullHermitianMaxDim));
  }
  return match_group(R, basis_by_name(basis_name, R.dim(), opts), opts);
}

}  // namespace adlab
