#include "adlab/residual.hpp"

#include <cmath>

#include "adlab/dft.hpp"
#include "adlab/errors.hpp"
#include "adlab/estimator.hpp"

namespace adlab {
namespace {

double pooled_delta(const std::vector<const CMatrix*>& parts, const CMatrix& R) {
  double num2 = 0.0;
  double den2 = 0.0;
  for (const CMatrix* A : parts) {
    if (A->rows() != R.rows() || A->cols() != R.cols()) throw DimError("generator and covariance sizes differ");
    num2 += (*A * R - R * *A).squaredNorm();
    den2 += A->squaredNorm();
  }
  const double rnorm = R.norm();
  if (!(den2 > 0.0)) throw DegenerateInput("generator has zero Frobenius norm");
  if (!(rnorm > 0.0)) throw DegenerateInput("covariance has zero Frobenius norm");
  return std::sqrt(num2) / (std::sqrt(den2) * rnorm);
}

}  // namespace

double delta_generator(const GeneratorBundle& A, const HermitianOperator& R) {
  if (A.parts.empty()) throw DegenerateInput("empty generator bundle");
  std::vector<const CMatrix*> parts;
  for (const auto& g : A.parts) parts.push_back(&g.matrix.matrix());
  return pooled_delta(parts, R.matrix());
}

double delta_generator(const CMatrix& A, const CMatrix& R) { return pooled_delta({&A}, R); }

double delta_operator(const GroupRep& G, const Signal& x, const HermitianOperator& R) {
  if (G.dim() != R.dim() || x.size() != R.dim()) throw DimError("group, signal and covariance sizes differ");
  const CMatrix F = accumulate_group_average(x.samples(), G);
  return delta_generator(F, R.matrix());
}

ResidualRow classify(const std::string& signal_class, const HermitianOperator& R,
                     const std::vector<GeneratorBundle>& candidates) {
  if (candidates.size() < 2) throw InvalidInput("classification needs at least 2 candidates");
  ResidualRow row;
  row.signal_class = signal_class;
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    row.cells.push_back({candidates[i].name, delta_generator(candidates[i], R)});
    if (row.cells[i].delta < row.cells[best].delta - kTieTolerance) best = i;
  }
  row.matched = row.cells[best].generator;
  for (std::size_t i = 0; i < row.cells.size(); ++i) {
    if (i != best && std::abs(row.cells[i].delta - row.cells[best].delta) <= kTieTolerance) row.tie = true;
  }
  return row;
}

HermitianOperator fig3_stationary_covariance(const Fig3Config& cfg) {
  // The PSD of the wrapped envelope, so that beta = 0 reproduces the chirp row.
  const RVector g = wrapped_gaussian_envelope(cfg.M, cfg.dt, cfg.width);
  const CVector spectrum = dft(g.cast<Complex>());
  return make_circulant_covariance(cfg.sigma2 * spectrum.real().cwiseMax(0.0));
}

HermitianOperator fig3_fbm_covariance(const Fig3Config& cfg) {
  return make_fbm_covariance(cfg.M, cfg.dt, cfg.hurst, cfg.sigma2, cfg.origin);
}

HermitianOperator fig3_chirp_covariance(const Fig3Config& cfg) {
  return make_chirp_covariance(cfg.M, cfg.dt, cfg.beta, cfg.width, cfg.sigma2, cfg.origin);
}

std::vector<GeneratorBundle> fig3_generators(const Fig3Config& cfg) {
  return {shift_generator(cfg.M), log_diag_generator(cfg.M),
          chirp_conj_shift_generator(cfg.M, cfg.beta, cfg.dt, cfg.origin)};
}

ResidualReport fig3_table(const Fig3Config& cfg) {
  if (cfg.M < 16) throw InvalidInput("fig3 table needs M >= 16");
  const auto gens = fig3_generators(cfg);
  ResidualReport report;
  report.rows.push_back(classify("stationary", fig3_stationary_covariance(cfg), gens));
  report.rows.push_back(classify("self-similar", fig3_fbm_covariance(cfg), gens));
  report.rows.push_back(classify("chirp", fig3_chirp_covariance(cfg), gens));
  return report;
}

}  // namespace adlab
