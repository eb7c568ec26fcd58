#pragma once

#include <string>
#include <vector>

#include "adlab/groups.hpp"
#include "adlab/model.hpp"
#include "adlab/types.hpp"

namespace adlab {

// Normalized commutator ||AR - RA||_F / (||A||_F ||R||_F). For a bundle of
// Hermitian parts the numerator and ||A||_F are pooled in quadrature.
// DegenerateInput when A or R is zero; DimError on size mismatch.
double delta_generator(const GeneratorBundle& A, const HermitianOperator& R);
double delta_generator(const CMatrix& A, const CMatrix& R);

// Operator form: builds F_G(x) and returns delta(F_G(x), R).
double delta_operator(const GroupRep& G, const Signal& x, const HermitianOperator& R);

struct ResidualCell {
  std::string generator;
  double delta = 0.0;
};

struct ResidualRow {
  std::string signal_class;
  std::vector<ResidualCell> cells;
  std::string matched;
  bool tie = false;
};

inline constexpr double kTieTolerance = 1e-12;

struct ResidualReport {
  std::vector<ResidualRow> rows;
  double tie_tolerance = kTieTolerance;
};

// delta per candidate, matched = argmin. Ties within kTieTolerance go to the
// earlier candidate and set `tie`. Needs >= 2 candidates.
ResidualRow classify(const std::string& signal_class, const HermitianOperator& R,
                     const std::vector<GeneratorBundle>& candidates);

struct Fig3Config {
  Index M = 64;
  double hurst = 0.7;
  double beta = 0.02;
  double dt = 1.0 / 64.0;
  // Envelope width for the stationary and chirp rows (seconds).
  double width = 0.1;
  double sigma2 = 1.0;
  // First time sample of the shared grid t_n = origin + n dt.
  double origin = 0.0;
};

// Covariances for the three rows, on the shared grid.
HermitianOperator fig3_stationary_covariance(const Fig3Config& cfg);
HermitianOperator fig3_fbm_covariance(const Fig3Config& cfg);
HermitianOperator fig3_chirp_covariance(const Fig3Config& cfg);
std::vector<GeneratorBundle> fig3_generators(const Fig3Config& cfg);

// Rows: stationary, self-similar, chirp. Columns: shift, logdiag, chirpshift.
ResidualReport fig3_table(const Fig3Config& cfg);

}  // namespace adlab
