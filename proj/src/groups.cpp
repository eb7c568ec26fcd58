#include "adlab/groups.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "adlab/errors.hpp"

namespace adlab {

CVector MonomialUnitary::apply(const CVector& x) const {
  const Index M = dim();
  CVector y(M);
  for (Index n = 0; n < M; ++n) y[n] = phase[n] * x[source[static_cast<std::size_t>(n)]];
  return y;
}

CMatrix MonomialUnitary::dense() const {
  const Index M = dim();
  CMatrix U = CMatrix::Zero(M, M);
  for (Index n = 0; n < M; ++n) U(n, source[static_cast<std::size_t>(n)]) = phase[n];
  return U;
}

MonomialUnitary MonomialUnitary::compose(const MonomialUnitary& other) const {
  // (A B x)[n] = a[n] * (B x)[sA[n]] = a[n] b[sA[n]] x[sB[sA[n]]]
  const Index M = dim();
  MonomialUnitary out;
  out.source.resize(static_cast<std::size_t>(M));
  out.phase.resize(M);
  for (Index n = 0; n < M; ++n) {
    const Index mid = source[static_cast<std::size_t>(n)];
    out.source[static_cast<std::size_t>(n)] = other.source[static_cast<std::size_t>(mid)];
    out.phase[n] = phase[n] * other.phase[mid];
  }
  return out;
}

bool MonomialUnitary::approx_equal(const MonomialUnitary& other, double tol) const {
  if (source != other.source) return false;
  return (phase - other.phase).cwiseAbs().maxCoeff() <= tol;
}

std::size_t dense_element_cap() {
  constexpr std::size_t kDefaultEntries = std::size_t{1} << 26;
  if (const char* env = std::getenv("ADLAB_MAX_GROUP_BYTES")) {
    char* end = nullptr;
    const unsigned long long bytes = std::strtoull(env, &end, 10);
    if (end != env) return static_cast<std::size_t>(bytes / sizeof(Complex));
  }
  return kDefaultEntries;
}

GroupRep::GroupRep(std::string name, std::vector<MonomialUnitary> elements,
                   std::vector<double> weights)
    : name_(std::move(name)), elements_(std::move(elements)), weights_(std::move(weights)) {
  if (elements_.empty()) throw InvalidInput("group needs at least one element");
  if (weights_.size() != elements_.size()) throw DimError("one weight per group element required");
  dim_ = elements_.front().dim();
  double total = 0.0;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].dim() != dim_) throw DimError("group elements have mixed dimensions");
    if (!(weights_[i] > 0.0)) throw InvalidInput("group weights must be positive");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("group weights must sum to 1");

  const auto entries = static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);
  if (elements_.size() * entries <= dense_element_cap()) {
    dense_.reserve(elements_.size());
    for (const auto& e : elements_) dense_.push_back(e.dense());
  }
}

CMatrix GroupRep::element(std::size_t i) const {
  return dense_.empty() ? elements_[i].dense() : dense_[i];
}

MonomialUnitary shift_element(Index M, Index k) {
  MonomialUnitary u;
  u.source.resize(static_cast<std::size_t>(M));
  u.phase = CVector::Ones(M);
  const Index shift = ((k % M) + M) % M;
  for (Index n = 0; n < M; ++n) u.source[static_cast<std::size_t>(n)] = (n - shift + M) % M;
  return u;
}

MonomialUnitary reversal_element(Index M) {
  MonomialUnitary u;
  u.source.resize(static_cast<std::size_t>(M));
  u.phase = CVector::Ones(M);
  for (Index n = 0; n < M; ++n) u.source[static_cast<std::size_t>(n)] = M - 1 - n;
  return u;
}

MonomialUnitary modulation_element(Index M, Index l) {
  MonomialUnitary u;
  u.source.resize(static_cast<std::size_t>(M));
  std::iota(u.source.begin(), u.source.end(), Index{0});
  u.phase.resize(M);
  for (Index n = 0; n < M; ++n) {
    const Index idx = ((l * n) % M + M) % M;
    u.phase[n] = std::polar(1.0, 2.0 * kPi * static_cast<double>(idx) / static_cast<double>(M));
  }
  return u;
}

namespace {

void require_dim(Index M) {
  if (M < 2) throw InvalidInput("group dimension must be >= 2");
}

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

}  // namespace

GroupRep trivial_group(Index M) {
  require_dim(M);
  return GroupRep("trivial", {shift_element(M, 0)}, {1.0});
}

GroupRep cyclic_group(Index M) {
  require_dim(M);
  std::vector<MonomialUnitary> els;
  for (Index k = 0; k < M; ++k) els.push_back(shift_element(M, k));
  return GroupRep("cyclic", std::move(els), uniform(static_cast<std::size_t>(M)));
}

GroupRep dihedral_group(Index M) {
  require_dim(M);
  const MonomialUnitary J = reversal_element(M);
  std::vector<MonomialUnitary> els;
  for (Index k = 0; k < M; ++k) els.push_back(shift_element(M, k));
  for (Index k = 0; k < M; ++k) els.push_back(J.compose(shift_element(M, k)));
  return GroupRep("dihedral", std::move(els), uniform(static_cast<std::size_t>(2 * M)));
}

GroupRep reversal_group(Index M) {
  require_dim(M);
  return GroupRep("reversal", {shift_element(M, 0), reversal_element(M)}, {0.5, 0.5});
}

GroupRep tf_lattice_group(Index M) {
  require_dim(M);
  std::vector<MonomialUnitary> els;
  els.reserve(static_cast<std::size_t>(M * M));
  // Index order (k, l) -> k * M + l, element W^l P^k.
  for (Index k = 0; k < M; ++k) {
    const MonomialUnitary Pk = shift_element(M, k);
    for (Index l = 0; l < M; ++l) els.push_back(modulation_element(M, l).compose(Pk));
  }
  return GroupRep("tf-lattice", std::move(els), uniform(static_cast<std::size_t>(M * M)));
}

GroupRep group_by_name(const std::string& name, Index M) {
  if (name == "trivial") return trivial_group(M);
  if (name == "cyclic") return cyclic_group(M);
  if (name == "dihedral") return dihedral_group(M);
  if (name == "reversal") return reversal_group(M);
  if (name == "tf-lattice") return tf_lattice_group(M);
  throw InvalidInput("unknown group '" + name + "'");
}

CMatrix shift_matrix(Index M) { return shift_element(M, 1).dense(); }

CMatrix reversal_matrix(Index M) { return reversal_element(M).dense(); }

GeneratorBundle hermitian_parts(const std::string& name, const CMatrix& unitary) {
  const CMatrix h1 = 0.5 * (unitary + unitary.adjoint());
  const CMatrix h2 = (unitary - unitary.adjoint()) / Complex(0.0, 2.0);
  return GeneratorBundle{name,
                         {Generator{name + ".re", HermitianOperator(h1)},
                          Generator{name + ".im", HermitianOperator(h2)}}};
}

GeneratorBundle shift_generator(Index M) {
  require_dim(M);
  return hermitian_parts("shift", shift_matrix(M));
}

GeneratorBundle log_diag_generator(Index M) {
  require_dim(M);
  CMatrix D = CMatrix::Zero(M, M);
  for (Index n = 0; n < M; ++n) D(n, n) = std::log(static_cast<double>(n + 1));
  return GeneratorBundle{"logdiag", {Generator{"logdiag", HermitianOperator(D)}}};
}

GeneratorBundle chirp_conj_shift_generator(Index M, double beta, double dt, double origin) {
  require_dim(M);
  const CVector u = chirp_phase(M, dt, beta, origin);
  const CMatrix Ppsi = u.asDiagonal() * shift_matrix(M) * u.conjugate().asDiagonal();
  return hermitian_parts("chirpshift", Ppsi);
}

GeneratorBundle chirp_conj_shift_generator(Index M, double beta, double dt) {
  return chirp_conj_shift_generator(M, beta, dt, dt);
}

GeneratorBundle generator_by_name(const std::string& name, Index M, const GeneratorOptions& opts) {
  if (name == "shift") return shift_generator(M);
  if (name == "logdiag") return log_diag_generator(M);
  if (name == "chirpshift") return chirp_conj_shift_generator(M, opts.beta, opts.dt, opts.origin);
  throw InvalidInput("unknown generator '" + name + "'");
}

}  // namespace adlab
