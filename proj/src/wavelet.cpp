#include "adlab/wavelet.hpp"

#include <algorithm>
#include <cmath>

#include "adlab/errors.hpp"

namespace adlab {
namespace {

const double kQuarterPiRoot = std::pow(kPi, -0.25);
const double kMexicanHatNorm = 2.0 / (std::sqrt(3.0) * std::pow(kPi, 0.25));
const double kSqrtTwoPi = std::sqrt(2.0 * kPi);

}  // namespace

Complex Wavelet::time(double t) const {
  const double envelope = std::exp(-0.5 * t * t);
  switch (kind) {
    case Kind::mexican_hat:
      return amplitude * kMexicanHatNorm * (1.0 - t * t) * envelope;
    case Kind::morlet:
      return amplitude * kQuarterPiRoot *
             (std::polar(1.0, omega0 * t) - std::exp(-0.5 * omega0 * omega0)) * envelope;
    case Kind::gaussian:
      return amplitude * kQuarterPiRoot * envelope;
  }
  return 0.0;
}

Complex Wavelet::freq(double omega) const {
  switch (kind) {
    case Kind::mexican_hat:
      return amplitude * kMexicanHatNorm * kSqrtTwoPi * omega * omega * std::exp(-0.5 * omega * omega);
    case Kind::morlet: {
      const double shifted = omega - omega0;
      return amplitude * kQuarterPiRoot * kSqrtTwoPi *
             (std::exp(-0.5 * shifted * shifted) -
              std::exp(-0.5 * omega0 * omega0) * std::exp(-0.5 * omega * omega));
    }
    case Kind::gaussian:
      return amplitude * kQuarterPiRoot * kSqrtTwoPi * std::exp(-0.5 * omega * omega);
  }
  return 0.0;
}

std::string Wavelet::name() const {
  switch (kind) {
    case Kind::mexican_hat:
      return "mexican-hat";
    case Kind::morlet:
      return "morlet";
    case Kind::gaussian:
      return "gaussian";
  }
  return "unknown";
}

double Wavelet::norm2() const {
  constexpr double kHalfWidth = 14.0;
  constexpr int kSteps = 28000;
  const double h = 2.0 * kHalfWidth / kSteps;
  double sum = 0.0;
  for (int i = 0; i < kSteps; ++i) sum += std::norm(time(-kHalfWidth + (i + 0.5) * h));
  return sum * h;
}

Wavelet wavelet_by_name(const std::string& name) {
  if (name == "mexican-hat") return Wavelet::mexican_hat();
  if (name == "morlet") return Wavelet::morlet();
  if (name == "gaussian") return Wavelet::gaussian();
  throw InvalidInput("unknown wavelet '" + name + "'");
}

namespace {

double midpoint(double upper, int n, auto&& integrand) {
  const double h = upper / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += integrand((i + 0.5) * h);
  return sum * h;
}

}  // namespace

CalderonConstant calderon_constant(const Wavelet& psi, double omega_max, int n_quad) {
  if (n_quad < 64) throw InvalidInput("calderon_constant needs n_quad >= 64");
  if (!(omega_max > 0.0)) throw InvalidInput("omega_max must be > 0");

  const double reference_upper = std::max(4.0 * omega_max, psi.omega0 + 40.0);
  double peak = 0.0;
  for (int i = 0; i <= 4096; ++i) peak = std::max(peak, std::abs(psi.freq(reference_upper * i / 4096.0)));
  if (std::abs(psi.freq(0.0)) > 1e-8 * peak) {
    throw NotAdmissible(psi.name() + " has psi_hat(0) != 0; the Calderon integral diverges at 0");
  }

  auto energy = [&](double w) { return std::norm(psi.freq(w)); };
  const double covered = midpoint(omega_max, 4 * n_quad, energy);
  const double total = midpoint(reference_upper, 16 * n_quad, energy);
  if (covered < 0.9999 * total) {
    throw InvalidInput("omega_max covers only " + std::to_string(covered / total) +
                       " of the wavelet energy");
  }

  auto integrand = [&](double w) { return std::norm(psi.freq(w)) / w; };
  CalderonConstant out;
  out.value = midpoint(omega_max, n_quad, integrand);
  out.error_estimate = std::abs(midpoint(omega_max, 2 * n_quad, integrand) - out.value);
  out.omega_max = omega_max;
  out.n_quad = n_quad;
  return out;
}

std::vector<double> log_scales(double a0, int octaves, int voices) {
  if (!(a0 > 0.0) || octaves < 0 || voices < 1) throw InvalidInput("invalid scale grid");
  std::vector<double> scales;
  for (int j = 0; j <= octaves * voices; ++j) scales.push_back(a0 * std::exp2(static_cast<double>(j) / voices));
  return scales;
}

namespace {

void check_scales(const std::vector<double>& scales, Index M, double dt) {
  if (scales.empty()) throw InvalidInput("scale list is empty");
  const double lo = 2.0 * dt * (1.0 - 1e-12);
  const double hi = static_cast<double>(M) * dt / 4.0 * (1.0 + 1e-12);
  for (std::size_t j = 0; j < scales.size(); ++j) {
    if (scales[j] < lo || scales[j] > hi) {
      throw ScaleOutOfRange("scale " + std::to_string(scales[j]) + " outside [2 dt, M dt / 4]");
    }
    if (j > 0 && !(scales[j] > scales[j - 1])) throw InvalidInput("scales must be strictly ascending");
  }
}

}  // namespace

CMatrix periodized_atoms(const Wavelet& psi, const std::vector<double>& scales, Index M, double dt) {
  const auto J = static_cast<Index>(scales.size());
  const double period = static_cast<double>(M) * dt;
  CMatrix atoms(J, M);
  for (Index j = 0; j < J; ++j) {
    const double a = scales[static_cast<std::size_t>(j)];
    const int images = 1 + static_cast<int>(std::ceil(14.0 * a / period));
    const double gain = 1.0 / std::sqrt(a);
    for (Index m = 0; m < M; ++m) {
      Complex acc = 0.0;
      for (int p = -images; p <= images; ++p) acc += psi.time((static_cast<double>(m) * dt + p * period) / a);
      atoms(j, m) = gain * acc;
    }
  }
  return atoms;
}

CMatrix wavelet_coefficients(const Signal& x, const Wavelet& psi, const std::vector<double>& scales) {
  const Index M = x.size();
  check_scales(scales, M, x.dt());
  const CMatrix atoms = periodized_atoms(psi, scales, M, x.dt());
  const CMatrix conj_atoms = atoms.conjugate();
  const auto J = static_cast<Index>(scales.size());
  const CVector& s = x.samples();
  CMatrix W(J, M);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < J; ++j) {
    for (Index n = 0; n < M; ++n) {
      Complex acc = 0.0;
      // Summing in lag order makes integer shifts of x bit-exact shifts of W.
      for (Index l = 0; l < M; ++l) acc += s[(n + l) % M] * conj_atoms(j, l);
      W(j, n) = x.dt() * acc;
    }
  }
  return W;
}

namespace serial {

CMatrix wavelet_coefficients(const Signal& x, const Wavelet& psi, const std::vector<double>& scales) {
  const Index M = x.size();
  check_scales(scales, M, x.dt());
  const auto J = static_cast<Index>(scales.size());
  CMatrix W(J, M);
  const double period = static_cast<double>(M) * x.dt();
  for (Index j = 0; j < J; ++j) {
    const double a = scales[static_cast<std::size_t>(j)];
    const int images = 1 + static_cast<int>(std::ceil(14.0 * a / period));
    for (Index n = 0; n < M; ++n) {
      // Build psi_{a, b_n} on the grid explicitly, then take the inner product.
      CVector atom(M);
      for (Index m = 0; m < M; ++m) {
        Complex acc = 0.0;
        const double offset = static_cast<double>((m - n + M) % M) * x.dt();
        for (int p = -images; p <= images; ++p) acc += psi.time((offset + p * period) / a);
        atom[m] = acc / std::sqrt(a);
      }
      W(j, n) = x.dt() * atom.dot(x.samples());
    }
  }
  return W;
}

}  // namespace serial

Scalogram scalogram(const Signal& x, const Wavelet& psi, const std::vector<double>& scales, int voices) {
  Scalogram out;
  out.values = wavelet_coefficients(x, psi, scales).cwiseAbs2();
  out.scales = scales;
  out.voices = voices;
  out.dt = x.dt();

  const CMatrix atoms = periodized_atoms(psi, scales, x.size(), x.dt());
  const double reference = psi.norm2();
  for (Index j = 0; j < atoms.rows(); ++j) {
    const double norm2 = atoms.row(j).squaredNorm() * x.dt();
    out.max_norm_deviation = std::max(out.max_norm_deviation, std::abs(norm2 / reference - 1.0));
  }
  out.norms_within_tolerance = out.max_norm_deviation <= 0.02;
  return out;
}

Reconstruction calderon_reconstruct(const Signal& x, const Wavelet& psi, double a0, int octaves,
                                    int voices) {
  constexpr double kOmegaMax = 40.0;
  constexpr int kQuad = 8192;
  const CalderonConstant c = calderon_constant(psi, psi.omega0 + kOmegaMax, kQuad);

  const std::vector<double> scales = log_scales(a0, octaves, voices);
  const Index M = x.size();
  const double dt = x.dt();
  const CMatrix W = wavelet_coefficients(x, psi, scales);
  const CMatrix atoms = periodized_atoms(psi, scales, M, dt);
  const auto J = static_cast<Index>(scales.size());

  CVector xhat = CVector::Zero(M);
  for (Index j = 0; j < J; ++j) {
    const double a = scales[static_cast<std::size_t>(j)];
    const double weight = (a * std::log(2.0) / voices) * dt / (a * a);
    for (Index n = 0; n < M; ++n) {
      const Complex coeff = weight * W(j, n);
      for (Index m = 0; m < M; ++m) xhat[m] += coeff * atoms(j, (m - n + M) % M);
    }
  }
  xhat /= c.value;

  const double xnorm = x.samples().norm();
  const double err = (xhat - x.samples()).norm() / std::max(xnorm, 1e-300);
  Reconstruction out{Signal(std::move(xhat), dt, x.origin()), err,
                     err <= kReconstructionInBandTolerance, c};
  return out;
}

}  // namespace adlab
