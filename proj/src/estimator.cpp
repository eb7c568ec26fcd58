#include "adlab/estimator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

#include "adlab/dft.hpp"
#include "adlab/errors.hpp"

namespace adlab {

HermitianEigen hermitian_eigen(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigensolver did not converge");
  const Index M = hermitian.rows();
  HermitianEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  for (Index c = 0; c < M; ++c) {
    // First component within 1e-9 of the largest magnitude, so near-ties do
    // not flip the pivot between runs.
    const RVector mag = out.vectors.col(c).cwiseAbs();
    const double top = mag.maxCoeff();
    Index arg = 0;
    while (mag[arg] < (1.0 - 1e-9) * top) ++arg;
    const Complex pivot = out.vectors(arg, c);
    if (std::abs(pivot) > 0.0) {
      out.vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
      out.vectors(arg, c) = std::abs(pivot);
    }
  }
  return out;
}

namespace {

// Kahan-compensated accumulator for a dense complex matrix.
class CompensatedSum {
 public:
  explicit CompensatedSum(Index M) : sum_(CMatrix::Zero(M, M)), carry_(CMatrix::Zero(M, M)) {}

  void add(const CMatrix& term) {
    const CMatrix y = term - carry_;
    const CMatrix t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  void add_rank_one(const CVector& v, double weight) {
    const Index M = v.size();
    for (Index j = 0; j < M; ++j) {
      const Complex cj = weight * std::conj(v[j]);
      for (Index i = 0; i < M; ++i) {
        const Complex y = v[i] * cj - carry_(i, j);
        const Complex t = sum_(i, j) + y;
        carry_(i, j) = (t - sum_(i, j)) - y;
        sum_(i, j) = t;
      }
    }
  }

  const CMatrix& value() const { return sum_; }

 private:
  CMatrix sum_;
  CMatrix carry_;
};

}  // namespace

CMatrix accumulate_group_average(const CVector& x, const GroupRep& group, std::size_t chunk) {
  const Index M = x.size();
  if (M != group.dim()) throw DimError("signal length does not match group dimension");
  if (chunk == 0) chunk = parallel::kDefaultChunk;
  const std::size_t n = group.order();
  const std::size_t chunks = parallel::chunk_count(n, chunk);
  [[maybe_unused]] const double xnorm2 = x.squaredNorm();

  std::vector<CMatrix> partials(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    CompensatedSum acc(M);
    const std::size_t begin = static_cast<std::size_t>(c) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    for (std::size_t g = begin; g < end; ++g) {
      const CVector y = group.monomial(g).apply(x);
      // Each rank-one term has Hilbert-Schmidt norm ||x||^2.
      assert(std::abs(y.squaredNorm() - xnorm2) <= 1e-10 * std::max(xnorm2, 1e-300));
      acc.add_rank_one(y, group.weight(g));
    }
    partials[static_cast<std::size_t>(c)] = acc.value();
  }

  CompensatedSum total(M);
  for (const auto& p : partials) total.add(p);
  return total.value();
}

namespace serial {

CMatrix accumulate_group_average(const CVector& x, const GroupRep& group) {
  const Index M = x.size();
  if (M != group.dim()) throw DimError("signal length does not match group dimension");
  CMatrix F = CMatrix::Zero(M, M);
  for (std::size_t g = 0; g < group.order(); ++g) {
    const CVector y = group.element(g) * x;
    F += group.weight(g) * (y * y.adjoint());
  }
  return F;
}

}  // namespace serial

AveragedEstimate group_averaged_estimate(const Signal& x, const GroupRep& group) {
  const CMatrix F = accumulate_group_average(x.samples(), group);
  HermitianOperator op(0.5 * (F + F.adjoint()));
  HermitianEigen eig = hermitian_eigen(op.matrix());
  return AveragedEstimate{std::move(op), std::move(eig.values), std::move(eig.vectors), group.name()};
}

RVector cyclic_estimate_spectrum(const Signal& x) {
  const Index M = x.size();
  const CVector X = dft(x.samples());
  RVector spectrum = X.cwiseAbs2() / static_cast<double>(M);

  // The cyclic estimator is circulant, hence diagonalized by the DFT.
  const AveragedEstimate est = group_averaged_estimate(x, cyclic_group(M));
  RVector sorted = spectrum;
  std::sort(sorted.data(), sorted.data() + M, std::greater<>());
  const double scale = std::max(sorted.maxCoeff(), 1e-300);
  const double mismatch = (sorted - est.eigenvalues).cwiseAbs().maxCoeff();
  if (mismatch > 1e-9 * scale) {
    throw NumericalFailure("periodogram shortcut disagrees with dense eigenvalues by " +
                           std::to_string(mismatch / scale));
  }
  return spectrum;
}

double subspace_alignment(const AveragedEstimate& est, const CMatrix& S, Index r) {
  const Index M = est.op.dim();
  if (r < 1 || r > M) throw InvalidInput("subspace rank must lie in [1, M]");
  if (S.rows() != M || S.cols() != r) throw DimError("basis must be M x r");
  const double ortho = (S.adjoint() * S - CMatrix::Identity(r, r)).norm();
  if (ortho > 1e-8) throw InvalidBasis("signal-subspace basis is not orthonormal");
  const CMatrix overlap = est.eigenvectors.leftCols(r).adjoint() * S;
  Eigen::JacobiSVD<CMatrix> svd(overlap);
  const double smallest = svd.singularValues().minCoeff();
  return std::clamp(smallest, 0.0, 1.0);
}

Index rank_of_signal_estimate(const AveragedEstimate& est, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("rank tolerance must be > 0");
  const double top = est.eigenvalues.size() > 0 ? est.eigenvalues[0] : 0.0;
  if (!(top > 0.0)) return 0;
  Index rank = 0;
  for (Index i = 0; i < est.eigenvalues.size(); ++i) {
    if (est.eigenvalues[i] > tol * top) ++rank;
  }
  return rank;
}

}  // namespace adlab
