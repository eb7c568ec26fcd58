#include "adlab/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "adlab/dft.hpp"
#include "adlab/errors.hpp"
#include "adlab/estimator.hpp"

namespace adlab {

CVector autocorrelation(const Signal& x) {
  const Index M = x.size();
  const CVector& s = x.samples();
  CVector R(M);
  for (Index k = 0; k < M; ++k) {
    Complex acc = 0.0;
    for (Index n = 0; n < M; ++n) acc += s[(n + k) % M] * std::conj(s[n]);
    R[k] = x.dt() * acc;
  }
  return R;
}

RVector periodogram(const Signal& x) {
  const CVector X = dft(x.samples());
  return X.cwiseAbs2() * (x.dt() / static_cast<double>(x.size()));
}

RMatrix dct2_basis(Index M) {
  RMatrix B(M, M);
  for (Index k = 0; k < M; ++k) {
    for (Index n = 0; n < M; ++n) {
      B(n, k) = std::cos(kPi * static_cast<double>(k) * (static_cast<double>(n) + 0.5) /
                         static_cast<double>(M));
    }
    B.col(k).normalize();
  }
  return B;
}

namespace {

void require_real(const Signal& x) {
  if (x.samples().imag().cwiseAbs().maxCoeff() >= 1e-12) {
    throw InvalidInput("DCT spectrum needs a real-valued signal");
  }
}

}  // namespace

CMatrix dct_estimator(const Signal& x) {
  require_real(x);
  const Index M = x.size();
  CVector extended(2 * M);
  extended.head(M) = x.samples().real().cast<Complex>();
  extended.tail(M) = x.samples().real().reverse().cast<Complex>();
  const CMatrix F = accumulate_group_average(extended, dihedral_group(2 * M));
  // Isometry onto reflection-even vectors of length 2M: E = [I; J] / sqrt(2).
  CMatrix E = CMatrix::Zero(2 * M, M);
  for (Index n = 0; n < M; ++n) {
    E(n, n) = 1.0 / std::sqrt(2.0);
    E(2 * M - 1 - n, n) = 1.0 / std::sqrt(2.0);
  }
  const CMatrix reduced = E.adjoint() * F * E;
  return 0.5 * (reduced + reduced.adjoint());
}

RVector dct_spectrum(const Signal& x) {
  require_real(x);
  const Index M = x.size();
  const RMatrix basis = dct2_basis(M);
  RVector spectrum(M);
  for (Index k = 0; k < M; ++k) {
    double c = 0.0;  // unnormalized DCT-II coefficient C_k
    for (Index n = 0; n < M; ++n) {
      c += x[n].real() * std::cos(kPi * static_cast<double>(k) * (static_cast<double>(n) + 0.5) /
                                  static_cast<double>(M));
    }
    spectrum[k] = 2.0 * c * c / static_cast<double>(M);
  }

  if (M <= 16) {
    const CMatrix F = dct_estimator(x);
    const HermitianEigen eig = hermitian_eigen(F);
    RVector sorted = spectrum;
    std::sort(sorted.data(), sorted.data() + M, std::greater<>());
    const double scale = std::max(sorted.maxCoeff(), 1e-300);
    if ((sorted - eig.values).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      throw NumericalFailure("DCT shortcut disagrees with dense eigenvalues");
    }
    // Every DCT-II vector must be an eigenvector: F v = lambda v.
    for (Index k = 0; k < M; ++k) {
      const CVector v = basis.col(k).cast<Complex>();
      const double residual = (F * v - spectrum[k] * v).norm();
      if (residual > 1e-9 * scale) {
        throw NumericalFailure("DCT-II vector " + std::to_string(k) + " is not an eigenvector");
      }
    }
  }
  return spectrum;
}

AmbiguitySurface ambiguity(const Signal& x) {
  const Index M = x.size();
  const CVector& s = x.samples();
  AmbiguitySurface out;
  out.values.resize(M, M);
  out.dt = x.dt();
  out.df = 1.0 / (static_cast<double>(M) * x.dt());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < M; ++k) {
    CVector product(M);
    for (Index n = 0; n < M; ++n) product[n] = s[n] * std::conj(s[(n - k + M) % M]);
    out.values.row(k) = (x.dt() * dft(product)).transpose();
  }
  return out;
}

namespace serial {

AmbiguitySurface ambiguity(const Signal& x) {
  const Index M = x.size();
  const CVector& s = x.samples();
  AmbiguitySurface out;
  out.values.resize(M, M);
  out.dt = x.dt();
  out.df = 1.0 / (static_cast<double>(M) * x.dt());
  for (Index k = 0; k < M; ++k) {
    for (Index l = 0; l < M; ++l) {
      Complex acc = 0.0;
      for (Index n = 0; n < M; ++n) {
        const double phase =
            -2.0 * kPi * static_cast<double>((l * n) % M) / static_cast<double>(M);
        acc += s[n] * std::conj(s[(n - k + M) % M]) * std::polar(1.0, phase);
      }
      out.values(k, l) = x.dt() * acc;
    }
  }
  return out;
}

}  // namespace serial

double discrete_moyal_constant(Index M) { return static_cast<double>(M); }

}  // namespace adlab
