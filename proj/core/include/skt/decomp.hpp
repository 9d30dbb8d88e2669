#pragma once

// Killing vector fields of an almost abelian Lie group and decomposition of
// left-invariant Killing tensors into polynomials in them. A Killing field
// is represented by its Omega-function w -> (L_{exp(-w)})_* X_{exp(w)},
// which is what gets evaluated at sample points.

#include "skt/almostab.hpp"
#include "skt/numeric.hpp"
#include "skt/scalar.hpp"
#include "skt/symalg.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace skt {

class NotKilling : public Error {
 public:
  explicit NotKilling(const std::string& diagnosis)
      : Error("not a Killing tensor: " + diagnosis), diagnosis_(diagnosis) {}
  const std::string& diagnosis() const { return diagnosis_; }

 private:
  std::string diagnosis_;
};

class InvalidCertificate : public Error {
 public:
  using Error::Error;
};

/// Skew-symmetric derivation T = b ^ v + T^h of an almost abelian algebra:
/// T(b) = v, T(h) = -g(v, h) b + T^h(h).
struct SkewDerivation {
  /// v in h coordinates (length n).
  Vector v;
  /// T^h, n x n.
  Endomorphism th;

  /// The (n+1) x (n+1) matrix of T in the basis b, h_1..h_n.
  Endomorphism full() const;
  /// Inverse of full(); requires a skew matrix.
  static SkewDerivation from_full(const Endomorphism& t);

  friend bool operator==(const SkewDerivation&, const SkewDerivation&) = default;
};

struct MetricGenerator {
  friend bool operator==(const MetricGenerator&, const MetricGenerator&) = default;
};
/// Left-invariant field with value x; Killing iff ad_x is skew.
struct LeftInvariant {
  Vector x;
  friend bool operator==(const LeftInvariant&, const LeftInvariant&) = default;
};
/// Right-invariant field xi_x generated by right translations of x.
struct RightInvariant {
  Vector x;
  friend bool operator==(const RightInvariant&, const RightInvariant&) = default;
};
/// Killing field induced by a skew-symmetric derivation.
struct DerivationGenerator {
  SkewDerivation t;
  friend bool operator==(const DerivationGenerator&, const DerivationGenerator&) = default;
};

using Generator = std::variant<MetricGenerator, LeftInvariant, RightInvariant, DerivationGenerator>;

/// Degree of the generator as a symmetric tensor (the metric has degree 2).
std::size_t generator_degree(const Generator& g);

struct CertificateTerm {
  Scalar coeff;
  std::vector<Generator> factors;
  friend bool operator==(const CertificateTerm&, const CertificateTerm&) = default;
};

/// target = sum_t coeff_t * prod(factors_t), as tensor fields on the group.
struct Certificate {
  SymTensor target;
  std::vector<CertificateTerm> terms;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// ---------------------------------------------------------------------------
// Skew derivations

bool is_derivation(const MetricLieAlgebra& algebra, const Endomorphism& t);
/// [T^h, D] = 0, D^T v = 0 and |v|^2 D - (D v) v^T = 0.
bool satisfies_derivation_conditions(const AlmostAbelianAlgebra& alg, const SkewDerivation& t);

/// Basis of Dera(g) as full matrices, for any metric Lie algebra.
std::vector<Endomorphism> solve_skew_derivations(const MetricLieAlgebra& algebra);
std::vector<SkewDerivation> solve_skew_derivations(const AlmostAbelianAlgebra& alg);

// ---------------------------------------------------------------------------
// Omega-functions

/// e^{-ad_w} x truncated after the power `order`.
RealVector omega_right(const AlmostAbelianAlgebra& alg, const Vector& x, const RealVector& w, std::size_t order);
/// Exact e^{-ad_w} x; throws unless the series terminates (ad_w nilpotent on x).
Vector omega_right_exact(const AlmostAbelianAlgebra& alg, const Vector& x, const Vector& w);

/// sum_{k=0}^{order} (-1)^k / (k+1)! ad_w^k T(w).
RealVector omega_derivation(const AlmostAbelianAlgebra& alg, const SkewDerivation& t, const RealVector& w,
                            std::size_t order);
/// Same quantity through ad_w^k T(w) = D^k(gamma^{k+1} v + gamma^k T^h(h) + gamma^{k-1} g(v,h) h).
RealVector omega_derivation_closed_form(const AlmostAbelianAlgebra& alg, const SkewDerivation& t,
                                        const RealVector& w, std::size_t order);

/// Series order used at w: series_order of ||ad_w||_1.
std::size_t omega_order(const AlmostAbelianAlgebra& alg, const RealVector& w, double tol, std::size_t floor);
/// Series order for a whole certificate at w: at least the order above, and
/// large enough that the truncation error propagated through every product
/// of Omega values stays below tol / 10.
std::size_t omega_order(const AlmostAbelianAlgebra& alg, const Certificate& cert, const RealVector& w, double tol,
                        std::size_t floor);

NumTensor omega_generator(const AlmostAbelianAlgebra& alg, const Generator& g, const RealVector& w,
                          std::size_t order);
NumTensor omega_tensor(const AlmostAbelianAlgebra& alg, const Certificate& cert, const RealVector& w,
                       std::size_t order);
/// Exact value at w = 0, where every Omega reduces to its value at the identity.
SymTensor omega_at_identity(const AlmostAbelianAlgebra& alg, const Certificate& cert);

/// Throws InvalidCertificate if a generator is not Killing or a term has the
/// wrong degree.
void validate_certificate(const AlmostAbelianAlgebra& alg, const Certificate& cert);

// ---------------------------------------------------------------------------
// Decomposition

/// K in Sym^p(h) with D(K) = 0 as a polynomial in the right-invariant xi_{h_i}.
Certificate decompose_ideal_tensor(const AlmostAbelianAlgebra& alg, const SymTensor& k);

/// Any left-invariant Killing tensor as a polynomial in the metric, xi_{h_i}
/// and (for skew D) the left-invariant field b.
Certificate decompose(const AlmostAbelianAlgebra& alg, const SymTensor& k);

struct VerifyOptions {
  std::size_t samples = 20;
  double tol = 1e-9;
  std::uint64_t seed = 0x5EED;
  std::size_t order_floor = 12;
};

struct SampleResult {
  std::vector<double> point;
  std::size_t order = 0;
  double deviation = 0;
};

struct VerificationReport {
  bool exact_at_identity = false;
  double max_deviation = 0;
  std::vector<SampleResult> samples;
  bool passed = false;
};

/// The sample points used by verify_certificate: gamma and the h entries are
/// uniform in [-2, 2], drawn from a seeded 64-bit Mersenne twister.
std::vector<RealVector> sample_points(std::size_t dim, std::size_t count, std::uint64_t seed);

VerificationReport verify_certificate(const AlmostAbelianAlgebra& alg, const Certificate& cert,
                                      const VerifyOptions& options = {});

}  // namespace skt
