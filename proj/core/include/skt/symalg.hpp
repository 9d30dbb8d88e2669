#pragma once

// Symmetric tensor algebra Sym^*(V) over a real inner-product space with a
// fixed orthonormal basis e_0..e_{dim-1}, with exact rational coefficients.
//
// A stored monomial e_I = e_{i_1}...e_{i_p} stands for the symmetrized
// tensor sum over all permutations of e_{i_1} (x) ... (x) e_{i_p}. The
// product of monomials is therefore plain commutative polynomial
// multiplication; the permutation sum only shows up in the inner product,
// where <e_I, e_I> = prod_i m_i! with m_i the multiplicity of index i.

#include "skt/scalar.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace skt {

/// Non-decreasing list of basis indices; the key of a monomial.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices);

  std::span<const int> indices() const { return indices_; }
  std::size_t degree() const { return indices_.size(); }
  std::size_t multiplicity(int index) const;
  /// Largest index + 1, or 0 for the empty index.
  int bound() const { return indices_.empty() ? 0 : indices_.back() + 1; }

  MultiIndex merged(const MultiIndex& other) const;
  /// Copy with the entry at `position` replaced by `index` (re-sorted).
  MultiIndex replaced(std::size_t position, int index) const;
  /// Copy with the entry at `position` removed.
  MultiIndex erased(std::size_t position) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> indices_;
};

/// Homogeneous element of Sym^degree(V), dim V = dim.
class SymTensor {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  SymTensor(std::size_t dim, std::size_t degree);

  static SymTensor constant(std::size_t dim, const Scalar& value);
  static SymTensor monomial(std::size_t dim, const MultiIndex& index, const Scalar& coeff = 1);
  static SymTensor from_vector(const Vector& v);
  static SymTensor basis_vector(std::size_t dim, int index);
  /// L = sum_i e_i e_i restricted to the indices in [first, dim). With
  /// first = 0 this is twice the metric.
  static SymTensor trace_form(std::size_t dim, int first = 0);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const MultiIndex& index) const;

  /// Adds `coeff` to the coefficient of `index`, pruning exact zeros.
  void add_term(const MultiIndex& index, const Scalar& coeff);

  SymTensor& operator+=(const SymTensor& other);
  SymTensor& operator-=(const SymTensor& other);
  SymTensor& operator*=(const Scalar& s);

  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator-(SymTensor a) { return a *= Scalar(-1); }
  friend SymTensor operator*(SymTensor a, const Scalar& s) { return a *= s; }
  friend SymTensor operator*(const Scalar& s, SymTensor a) { return a *= s; }
  friend SymTensor operator*(const SymTensor& a, const SymTensor& b);
  friend bool operator==(const SymTensor& a, const SymTensor& b) = default;

  SymTensor pow(std::size_t exponent) const;

 private:
  void check_same_space(const SymTensor& other, const char* what) const;

  std::size_t dim_;
  std::size_t degree_;
  Terms terms_;
};

/// Square matrix acting on V, column convention E(e_j) = sum_i E(i, j) e_i.
class Endomorphism {
 public:
  explicit Endomorphism(std::size_t dim);

  static Endomorphism identity(std::size_t dim);
  static Endomorphism from_rows(const std::vector<std::vector<Scalar>>& rows);
  /// Embeds `inner` as the block [offset, offset + inner.dim()) of a
  /// dim x dim zero matrix.
  static Endomorphism embedded(const Endomorphism& inner, std::size_t dim, std::size_t offset);

  std::size_t dim() const { return dim_; }
  Scalar& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Scalar& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

  Vector apply(const Vector& v) const;
  Vector column(std::size_t col) const;
  /// Block [offset, offset + size) x [offset, offset + size).
  Endomorphism block(std::size_t offset, std::size_t size) const;

  Endomorphism transpose() const;
  Endomorphism symmetric_part() const;
  Endomorphism skew_part() const;
  bool is_symmetric() const;
  bool is_skew() const;
  bool is_zero() const;
  bool is_nilpotent() const;
  Scalar determinant() const;

  Endomorphism& operator+=(const Endomorphism& other);
  Endomorphism& operator-=(const Endomorphism& other);
  Endomorphism& operator*=(const Scalar& s);
  friend Endomorphism operator+(Endomorphism a, const Endomorphism& b) { return a += b; }
  friend Endomorphism operator-(Endomorphism a, const Endomorphism& b) { return a -= b; }
  friend Endomorphism operator*(const Scalar& s, Endomorphism a) { return a *= s; }
  /// Composition (a o b).
  friend Endomorphism operator*(const Endomorphism& a, const Endomorphism& b);
  friend bool operator==(const Endomorphism& a, const Endomorphism& b) = default;

 private:
  std::size_t dim_;
  std::vector<Scalar> entries_;
};

/// How many terms of an exponential series to keep.
struct SeriesOrder {
  /// Highest power kept; nullopt means "sum until the series terminates".
  std::optional<std::size_t> max_power;

  static SeriesOrder truncated(std::size_t n) { return SeriesOrder{n}; }
  static SeriesOrder exact_nilpotent() { return SeriesOrder{std::nullopt}; }
};

/// Enumeration of the monomials of Sym^degree over the index range
/// [first, dim), in lexicographic order, with reverse lookup.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t dim, std::size_t degree, int first = 0);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  std::optional<std::size_t> position(const MultiIndex& index) const;

  /// Coordinates of `t` in this basis; throws if `t` has support outside it.
  Vector coordinates(const SymTensor& t) const;
  SymTensor tensor(const Vector& coords) const;

 private:
  std::size_t dim_;
  std::size_t degree_;
  std::vector<MultiIndex> monomials_;
  std::map<MultiIndex, std::size_t> lookup_;
};

/// binom(dim + degree - 1, degree), the dimension of Sym^degree(R^dim).
std::size_t sym_dimension(std::size_t dim, std::size_t degree);

SymTensor sym_mul(const SymTensor& a, const SymTensor& b);

/// Extended inner product; distinct monomials are orthogonal and
/// <e_I, e_I> = prod_i m_i!.
Scalar inner(const SymTensor& a, const SymTensor& b);

/// E acting on Sym^p as a derivation; zero on Sym^0.
SymTensor apply_derivation(const Endomorphism& e, const SymTensor& k);

/// S_E = 1/2 sum_j E(e_j) e_j. Depends only on the symmetric part of E.
SymTensor s_of(const Endomorphism& e);

/// Inverse of s_of on symmetric endomorphisms:
/// e_i e_j -> (x -> g(x, e_i) e_j + g(x, e_j) e_i).
Endomorphism endo_from_sym2(const SymTensor& k);

/// GL(V) action A(v_1 ... v_p) = A(v_1) ... A(v_p). Throws on singular A.
SymTensor act_group(const Endomorphism& a, const SymTensor& k);

/// e^{-gamma D}(K) = sum_j (-gamma)^j / j! D^j(K) with D acting as a
/// derivation. In exact mode throws unless the series terminates.
SymTensor exp_action(const Endomorphism& d, const Scalar& gamma, const SymTensor& k, SeriesOrder order);

}  // namespace skt
