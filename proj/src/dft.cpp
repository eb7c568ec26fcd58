#include "adlab/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "adlab/errors.hpp"

namespace adlab {
namespace {

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

CVector transform(const CVector& in, int sign) {
  const Index n = in.size();
  if (n == 0) return CVector();
  CVector src = in;
  CVector dst(n);
  auto* src_ptr = reinterpret_cast<fftw_complex*>(src.data());
  auto* dst_ptr = reinterpret_cast<fftw_complex*>(dst.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), src_ptr, dst_ptr, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalFailure("FFTW could not create a plan");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return dst;
}

}  // namespace

CVector dft(const CVector& x) { return transform(x, FFTW_FORWARD); }

CVector idft(const CVector& spectrum) { return transform(spectrum, FFTW_BACKWARD); }

CMatrix unitary_dft_matrix(Index M) {
  CMatrix F(M, M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (Index k = 0; k < M; ++k) {
    for (Index n = 0; n < M; ++n) {
      // Reduce k*n mod M first so the phase argument stays small.
      const double phase = -2.0 * kPi * static_cast<double>((k * n) % M) / static_cast<double>(M);
      F(k, n) = std::polar(scale, phase);
    }
  }
  return F;
}

}  // namespace adlab
