#pragma once

// Almost abelian metric Lie algebras g = R b x|_D h, with the orthonormal
// basis convention index 0 = b, indices 1..n = h_1..h_n. Tensors on h are
// SymTensors of the (n+1)-dimensional space that never use index 0.

#include "skt/liealg.hpp"
#include "skt/symalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace skt {

/// q_i = alpha_i . b + beta_i, alpha_i in Sym^{p-2i-1}(h), beta_i in
/// Sym^{p-2i}(h). alpha_i is absent when p - 2i - 1 < 0.
struct Layer {
  std::optional<SymTensor> alpha;
  SymTensor beta;
};

/// The unique presentation K = sum_{i <= p/2} L^i . (alpha_i . b + beta_i).
struct LayeredDecomposition {
  std::size_t degree = 0;
  std::vector<Layer> layers;
};

struct OddEvenSplit {
  SymTensor odd;
  SymTensor even;
};

/// Outcome of the layer-by-layer Killing test.
struct KillingDiagnosis {
  bool killing = false;
  /// Layers i whose beta_i is not annihilated by D.
  std::vector<std::size_t> failing_betas;
  /// Layers i whose alpha_i is not annihilated by D (only checked for skew D).
  std::vector<std::size_t> failing_alphas;
  /// The odd part is nonzero while D is not skew, which excludes Killing.
  bool odd_part_nonzero_non_skew = false;

  std::string describe() const;
};

class AlmostAbelianAlgebra {
 public:
  /// D is the n x n matrix of ad_b restricted to h; n >= 1.
  static AlmostAbelianAlgebra build(const Endomorphism& d);

  std::size_t n() const { return d_.dim(); }
  std::size_t dim() const { return d_.dim() + 1; }
  const Endomorphism& derivation() const { return d_; }
  /// D on g, extended by zero on b.
  const Endomorphism& derivation_extended() const { return d_ext_; }
  const MetricLieAlgebra& algebra() const { return algebra_; }
  bool derivation_is_skew() const { return d_.is_skew(); }

  Vector b_vector() const { return unit_vector(dim(), 0); }
  /// h_i for i in 1..n.
  Vector h_vector(std::size_t i) const { return unit_vector(dim(), i); }
  SymTensor b() const { return SymTensor::basis_vector(dim(), 0); }
  /// L = b^2 + L_h, twice the metric.
  SymTensor L() const { return SymTensor::trace_form(dim()); }
  SymTensor L_h() const { return SymTensor::trace_form(dim(), 1); }

  bool supported_on_ideal(const SymTensor& k) const;

  /// d(K) = b . D(K) for K in Sym^p(h). Throws if K involves b.
  SymTensor d_on_ideal(const SymTensor& k) const;

  LayeredDecomposition divide_by_L(const SymTensor& k) const;
  SymTensor reassemble(const LayeredDecomposition& layers) const;
  OddEvenSplit split_odd_even(const SymTensor& k) const;

  KillingDiagnosis is_killing_structured(const SymTensor& k) const;

  /// Basis of Ker(D acting on Sym^q(h)).
  std::vector<SymTensor> ideal_kernel(std::size_t q) const;

  KillingSpace killing_space_structured(std::size_t degree) const;
  std::size_t killing_dimension(std::size_t degree) const;

 private:
  AlmostAbelianAlgebra(Endomorphism d, Endomorphism d_ext, MetricLieAlgebra algebra);

  Endomorphism d_;
  Endomorphism d_ext_;
  MetricLieAlgebra algebra_;
};

/// Number of b factors in a monomial.
std::size_t b_degree(const MultiIndex& index);

}  // namespace skt
