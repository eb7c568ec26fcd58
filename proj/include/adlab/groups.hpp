#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adlab/model.hpp"
#include "adlab/types.hpp"

namespace adlab {

// A monomial unitary: (U x)[n] = phase[n] * x[source[n]]. Every built-in group
// (shifts, reflections, modulations and their products) is of this form, which
// lets the estimator apply an element in O(M).
struct MonomialUnitary {
  std::vector<Index> source;
  CVector phase;

  Index dim() const { return static_cast<Index>(source.size()); }
  CVector apply(const CVector& x) const;
  CMatrix dense() const;
  // (*this) * other
  MonomialUnitary compose(const MonomialUnitary& other) const;
  bool approx_equal(const MonomialUnitary& other, double tol = 1e-12) const;
};

// Finite unitary representation with normalized Haar weights.
//
// Elements are held in monomial form. Dense M x M matrices are cached when
// |G| * M^2 stays under the storage cap and generated on demand otherwise
// (is_lazy() reports which).
class GroupRep {
 public:
  GroupRep(std::string name, std::vector<MonomialUnitary> elements, std::vector<double> weights);

  const std::string& name() const { return name_; }
  Index dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const MonomialUnitary& monomial(std::size_t i) const { return elements_[i]; }
  CMatrix element(std::size_t i) const;
  bool is_lazy() const { return dense_.empty(); }

 private:
  std::string name_;
  Index dim_;
  std::vector<MonomialUnitary> elements_;
  std::vector<double> weights_;
  std::vector<CMatrix> dense_;
};

// Entry cap for dense element storage. Default 2^26 complex entries; the
// ADLAB_MAX_GROUP_BYTES environment variable overrides it (bytes / 16).
std::size_t dense_element_cap();

GroupRep trivial_group(Index M);
// P^k, k = 0..M-1, with (P x)[n] = x[(n-1) mod M].
GroupRep cyclic_group(Index M);
// {P^k, J P^k}, (J x)[n] = x[M-1-n].
GroupRep dihedral_group(Index M);
// {I, J}
GroupRep reversal_group(Index M);
// W^l P^k, (W x)[n] = exp(i 2 pi n / M) x[n]; central phase dropped.
GroupRep tf_lattice_group(Index M);

// Names: trivial, cyclic, dihedral, reversal, tf-lattice.
GroupRep group_by_name(const std::string& name, Index M);

MonomialUnitary shift_element(Index M, Index k);
MonomialUnitary reversal_element(Index M);
MonomialUnitary modulation_element(Index M, Index l);

// Dense building blocks.
CMatrix shift_matrix(Index M);
CMatrix reversal_matrix(Index M);

// Lie-algebra element, Hermitian by convention.
struct Generator {
  std::string name;
  HermitianOperator matrix;
};

// A generator presented as one or more Hermitian parts. A unitary U is packaged
// as its parts H1 = (U + U^H)/2, H2 = (U - U^H)/(2i); [U, R] = 0 iff both
// [H1, R] = 0 and [H2, R] = 0.
struct GeneratorBundle {
  std::string name;
  std::vector<Generator> parts;
};

GeneratorBundle hermitian_parts(const std::string& name, const CMatrix& unitary);

GeneratorBundle shift_generator(Index M);
// D = diag(ln 1, ln 2, ..., ln M).
GeneratorBundle log_diag_generator(Index M);
// Hermitian parts of U_psi P U_psi^H with U_psi = diag(exp(i pi beta t_n^2)),
// t_n = origin + n dt. The conjugation matches make_chirp_covariance, so the
// chirp covariance commutes with this generator exactly.
GeneratorBundle chirp_conj_shift_generator(Index M, double beta, double dt, double origin);
GeneratorBundle chirp_conj_shift_generator(Index M, double beta, double dt);

struct GeneratorOptions {
  double beta = 0.02;
  double dt = 1.0;
  double origin = 1.0;
};

// Names: shift, logdiag, chirpshift.
GeneratorBundle generator_by_name(const std::string& name, Index M, const GeneratorOptions& opts);

}  // namespace adlab
