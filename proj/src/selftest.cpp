#include "adlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "adlab/dft.hpp"
#include "adlab/estimator.hpp"
#include "adlab/gevp.hpp"
#include "adlab/io.hpp"
#include "adlab/residual.hpp"
#include "adlab/transforms.hpp"
#include "adlab/wavelet.hpp"

namespace adlab {
namespace {

SelfTestCheck check(std::string name, double value, double tol) {
  return {std::move(name), value <= tol, value, tol, {}};
}

CMatrix random_hermitian(Index M, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix A(M, M);
  for (Index i = 0; i < M; ++i) {
    for (Index j = 0; j < M; ++j) A(i, j) = Complex(g(rng), g(rng));
  }
  return (A + A.adjoint()) / 2.0;
}

}  // namespace

std::vector<SelfTestCheck> run_selftest(std::uint64_t seed) {
  std::vector<SelfTestCheck> out;
  std::mt19937_64 rng(seed);

  // Estimator identities over every named group.
  double trace_err = 0.0, psd_err = 0.0, inv_err = 0.0;
  for (const char* name : {"trivial", "cyclic", "dihedral", "reversal", "tf-lattice"}) {
    const Index M = 8;
    const GroupRep G = group_by_name(name, M);
    const Signal x = white_noise(M, 1.0, rng());
    const CMatrix F = accumulate_group_average(x.samples(), G);
    trace_err = std::max(trace_err, std::abs(F.trace().real() - x.norm2()) / x.norm2());
    const RVector ev = HermitianOperator(F).eigenvalues();
    psd_err = std::max(psd_err, std::max(0.0, -ev.minCoeff()) / x.norm2());
    const CVector hx = G.monomial(G.order() - 1).apply(x.samples());
    inv_err = std::max(inv_err, (accumulate_group_average(hx, G) - F).norm() / F.norm());
  }
  out.push_back(check("estimator trace equals norm^2", trace_err, 1e-10));
  out.push_back(check("estimator positive semidefinite", psd_err, 1e-10));
  out.push_back(check("estimator group invariance", inv_err, 1e-10));

  // Wiener-Khinchin with the documented constants.
  {
    const Signal x = white_noise(16, 1.0, rng(), 0.25);
    const CVector lhs = dft(autocorrelation(x));
    const RVector P = periodogram(x);
    const double err = (lhs - (static_cast<double>(x.size()) * P).cast<Complex>()).norm() / lhs.norm();
    out.push_back(check("dft(autocorrelation) = M * periodogram", err, 1e-9));
  }

  // Discrete Moyal.
  {
    const Signal x = white_noise(16, 1.0, rng());
    const double lhs = ambiguity(x).values.squaredNorm();
    const double rhs = discrete_moyal_constant(x.size()) * x.energy() * x.energy();
    out.push_back(check("ambiguity energy = M * energy^2", std::abs(lhs - rhs) / rhs, 1e-9));
  }

  // GEVP: both assembly forms agree and circulant R has a zero residual.
  {
    const Index M = 8;
    const HermitianOperator R(random_hermitian(M, rng));
    const GeneratorBasis B = circulant_hermitian_basis(M);
    const auto fast = assemble_double_commutator(R, B);
    const auto nested = serial::assemble_double_commutator_nested(R, B);
    out.push_back(check("double commutator forms agree", (fast.M - nested.M).norm() / nested.M.norm(), 1e-10));

    RVector psd(M);
    for (Index k = 0; k < M; ++k) psd[k] = 1.0 + static_cast<double>(k);
    const MatchResult m = match_group(make_circulant_covariance(psd), B);
    out.push_back(check("circulant covariance matched with zero residual", m.delta, 1e-10));
  }

  // Fig. 3 diagonal.
  {
    const ResidualReport t = fig3_table(Fig3Config{});
    const bool ok = t.rows[0].matched == "shift" && t.rows[1].matched == "logdiag" &&
                    t.rows[2].matched == "chirpshift";
    SelfTestCheck c{"fig3 argmin diagonal", ok, ok ? 0.0 : 1.0, 0.0, {}};
    c.detail = t.rows[0].matched + "," + t.rows[1].matched + "," + t.rows[2].matched;
    out.push_back(c);
  }

  // Calderon constant of the Mexican hat.
  {
    const auto c = calderon_constant(Wavelet::mexican_hat(), 40.0, 4096);
    const double exact = 4.0 * std::sqrt(kPi) / 3.0;
    out.push_back(check("mexican-hat admissibility constant", std::abs(c.value - exact) / exact, 1e-3));
  }

  // CSV round trip.
  {
    const Signal x = white_noise(12, 3.0, rng(), 0.1);
    std::stringstream ss;
    io::write_signal(ss, x);
    const Signal y = io::read_signal(ss);
    const double err = (x.samples() - y.samples()).cwiseAbs().maxCoeff() + std::abs(x.dt() - y.dt());
    out.push_back(check("signal CSV round trip is exact", err, 0.0));
  }
  return out;
}

}  // namespace adlab
