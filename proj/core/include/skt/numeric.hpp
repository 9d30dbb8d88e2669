#pragma once

// Floating-point side of the library: exponential series evaluated at
// sample points, in 50 significant decimal digits.

#include "skt/scalar.hpp"
#include "skt/symalg.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <map>
#include <vector>

namespace skt {

using Real = boost::multiprecision::cpp_bin_float_50;
using RealVector = std::vector<Real>;

Real to_real(const Scalar& x);
RealVector to_real(const Vector& v);

class RealMatrix {
 public:
  explicit RealMatrix(std::size_t dim);
  explicit RealMatrix(const Endomorphism& e);
  static RealMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Real& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const Real& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

  RealVector apply(const RealVector& v) const;
  /// Maximum absolute column sum.
  Real one_norm() const;
  RealMatrix& operator*=(const Real& s);
  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator+(RealMatrix a, const RealMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Real> entries_;
};

/// Smallest N >= floor with norm^{N+1} / (N+1)! < tol / 10, the tail bound of
/// the exponential series truncated after the power N.
std::size_t series_order(const Real& norm, double tol, std::size_t floor);

/// The order above, raised until amplification times the whole tail
/// sum_{k > N} norm^k / k! is below tol / 10 as well.
std::size_t series_order(const Real& norm, double tol, std::size_t floor, const Real& amplification);

/// sum_{k=0}^{order} a^k / k!.
RealMatrix exp_series(const RealMatrix& a, std::size_t order);

/// Floating-point counterpart of SymTensor, used for sampled values.
class NumTensor {
 public:
  NumTensor(std::size_t dim, std::size_t degree);
  explicit NumTensor(const SymTensor& exact);
  static NumTensor constant(std::size_t dim, const Real& value);
  static NumTensor from_vector(const RealVector& v);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const std::map<MultiIndex, Real>& terms() const { return terms_; }
  Real coefficient(const MultiIndex& index) const;

  void add_term(const MultiIndex& index, const Real& coeff);
  NumTensor& operator+=(const NumTensor& other);
  NumTensor& operator-=(const NumTensor& other);
  NumTensor& operator*=(const Real& s);
  friend NumTensor operator*(const NumTensor& a, const NumTensor& b);

  /// Largest coefficient magnitude.
  Real max_abs() const;

 private:
  std::size_t dim_;
  std::size_t degree_;
  std::map<MultiIndex, Real> terms_;
};

/// A(v_1 ... v_p) = A(v_1) ... A(v_p) in floating point.
NumTensor act_group(const RealMatrix& a, const SymTensor& k);

}  // namespace skt
