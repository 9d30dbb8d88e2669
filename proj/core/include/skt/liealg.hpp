#pragma once

#include "skt/scalar.hpp"
#include "skt/symalg.hpp"

#include <cstddef>
#include <vector>

namespace skt {

class InvalidStructure : public Error {
 public:
  using Error::Error;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// One nonzero structure constant: [e_i, e_j] has coefficient `value` on e_k.
struct StructureEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Scalar value;
  friend bool operator==(const StructureEntry&, const StructureEntry&) = default;
};

/// Basis of the Killing tensors of one degree, in reduced row echelon form
/// over the lexicographic monomial coordinates of Sym^degree.
struct KillingSpace {
  std::size_t dim = 0;
  std::size_t degree = 0;
  std::vector<SymTensor> basis;

  std::size_t dimension() const { return basis.size(); }
  friend bool operator==(const KillingSpace&, const KillingSpace&) = default;
};

/// Brings an arbitrary spanning set into the canonical KillingSpace form.
KillingSpace make_killing_space(std::size_t dim, std::size_t degree, const std::vector<SymTensor>& spanning);

/// Size guards for the brute-force solver.
struct SolverLimits {
  std::size_t max_degree = 8;
  std::size_t max_dim = 6;
  std::size_t warn_columns = 100000;
};

/// Real Lie algebra with an inner product for which e_0..e_{n-1} is
/// orthonormal, given by its structure constants.
class MetricLieAlgebra {
 public:
  /// Validates antisymmetry and the Jacobi identity exactly; throws
  /// InvalidStructure otherwise. Entries listed for a pair (i, j) imply the
  /// antisymmetric (j, i) entry if it is absent.
  MetricLieAlgebra(std::size_t dim, const std::vector<StructureEntry>& entries);

  std::size_t dim() const { return dim_; }
  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  std::vector<StructureEntry> structure() const;

  Vector bracket(const Vector& x, const Vector& y) const;
  Endomorphism ad(const Vector& x) const;
  Endomorphism ad_star(const Vector& x) const;
  /// Levi-Civita connection on left-invariant fields:
  /// nabla_y x = 1/2 (ad_y x - ad_y^* x - ad_x^* y).
  Vector nabla(const Vector& y, const Vector& x) const;

  /// d(K) = sum_j e_j . ad_{e_j}(K).
  SymTensor killing_operator(const SymTensor& k) const;
  /// d(K) = sum_i e_i . nabla_{e_i}(K), nabla_{e_i} extended as a
  /// derivation. Independent route to the same operator.
  SymTensor killing_operator_via_nabla(const SymTensor& k) const;

  /// Exact nullspace of d : Sym^p -> Sym^{p+1}.
  KillingSpace killing_space_bruteforce(std::size_t degree, const SolverLimits& limits = {}) const;

 private:
  Scalar& c_mut(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }

  std::size_t dim_;
  std::vector<Scalar> c_;
  std::vector<Endomorphism> ad_basis_;
  std::vector<Endomorphism> nabla_basis_;
};

}  // namespace skt
