#include "skt/symalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace skt {

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (!indices_.empty() && indices_.front() < 0) throw Error("MultiIndex: negative basis index");
}

std::size_t MultiIndex::multiplicity(int index) const {
  const auto [lo, hi] = std::equal_range(indices_.begin(), indices_.end(), index);
  return static_cast<std::size_t>(hi - lo);
}

MultiIndex MultiIndex::merged(const MultiIndex& other) const {
  MultiIndex out;
  out.indices_.reserve(indices_.size() + other.indices_.size());
  std::merge(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
             std::back_inserter(out.indices_));
  return out;
}

MultiIndex MultiIndex::replaced(std::size_t position, int index) const {
  std::vector<int> copy = indices_;
  copy.at(position) = index;
  return MultiIndex(std::move(copy));
}

MultiIndex MultiIndex::erased(std::size_t position) const {
  MultiIndex out = *this;
  out.indices_.erase(out.indices_.begin() + static_cast<std::ptrdiff_t>(position));
  return out;
}

// ---------------------------------------------------------------------------
// SymTensor

SymTensor::SymTensor(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

SymTensor SymTensor::constant(std::size_t dim, const Scalar& value) {
  SymTensor t(dim, 0);
  t.add_term(MultiIndex{}, value);
  return t;
}

SymTensor SymTensor::monomial(std::size_t dim, const MultiIndex& index, const Scalar& coeff) {
  SymTensor t(dim, index.degree());
  t.add_term(index, coeff);
  return t;
}

SymTensor SymTensor::from_vector(const Vector& v) {
  SymTensor t(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) t.add_term(MultiIndex({static_cast<int>(i)}), v[i]);
  return t;
}

SymTensor SymTensor::basis_vector(std::size_t dim, int index) {
  return monomial(dim, MultiIndex({index}));
}

SymTensor SymTensor::trace_form(std::size_t dim, int first) {
  SymTensor t(dim, 2);
  for (int i = first; i < static_cast<int>(dim); ++i) t.add_term(MultiIndex({i, i}), 1);
  return t;
}

Scalar SymTensor::coefficient(const MultiIndex& index) const {
  const auto it = terms_.find(index);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void SymTensor::add_term(const MultiIndex& index, const Scalar& coeff) {
  if (index.degree() != degree_) {
    throw DegreeMismatch("monomial of degree " + std::to_string(index.degree()) + " added to tensor of degree " +
                         std::to_string(degree_));
  }
  if (index.bound() > static_cast<int>(dim_)) throw DimensionMismatch("monomial index out of range");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(index, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void SymTensor::check_same_space(const SymTensor& other, const char* what) const {
  if (dim_ != other.dim_) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
  if (degree_ != other.degree_) throw DegreeMismatch(std::string(what) + ": degree mismatch");
}

SymTensor& SymTensor::operator+=(const SymTensor& other) {
  check_same_space(other, "SymTensor +");
  for (const auto& [index, coeff] : other.terms_) add_term(index, coeff);
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& other) {
  check_same_space(other, "SymTensor -");
  for (const auto& [index, coeff] : other.terms_) add_term(index, -coeff);
  return *this;
}

SymTensor& SymTensor::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [index, coeff] : terms_) coeff *= s;
  return *this;
}

SymTensor operator*(const SymTensor& a, const SymTensor& b) { return sym_mul(a, b); }

SymTensor SymTensor::pow(std::size_t exponent) const {
  SymTensor result = constant(dim_, 1);
  for (std::size_t i = 0; i < exponent; ++i) result = sym_mul(result, *this);
  return result;
}

// ---------------------------------------------------------------------------
// Endomorphism

Endomorphism::Endomorphism(std::size_t dim) : dim_(dim), entries_(dim * dim, Scalar(0)) {}

Endomorphism Endomorphism::identity(std::size_t dim) {
  Endomorphism e(dim);
  for (std::size_t i = 0; i < dim; ++i) e(i, i) = 1;
  return e;
}

Endomorphism Endomorphism::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  Endomorphism e(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DimensionMismatch("Endomorphism: matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) e(i, j) = rows[i][j];
  }
  return e;
}

Endomorphism Endomorphism::embedded(const Endomorphism& inner, std::size_t dim, std::size_t offset) {
  if (offset + inner.dim() > dim) throw DimensionMismatch("Endomorphism::embedded: block does not fit");
  Endomorphism e(dim);
  for (std::size_t i = 0; i < inner.dim(); ++i)
    for (std::size_t j = 0; j < inner.dim(); ++j) e(offset + i, offset + j) = inner(i, j);
  return e;
}

Vector Endomorphism::apply(const Vector& v) const {
  if (v.size() != dim_) throw DimensionMismatch("Endomorphism::apply: vector size mismatch");
  Vector r = zero_vector(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] == 0) continue;
    for (std::size_t i = 0; i < dim_; ++i) r[i] += (*this)(i, j) * v[j];
  }
  return r;
}

Vector Endomorphism::column(std::size_t col) const {
  Vector r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) r[i] = (*this)(i, col);
  return r;
}

Endomorphism Endomorphism::block(std::size_t offset, std::size_t size) const {
  if (offset + size > dim_) throw DimensionMismatch("Endomorphism::block: out of range");
  Endomorphism e(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) e(i, j) = (*this)(offset + i, offset + j);
  return e;
}

Endomorphism Endomorphism::transpose() const {
  Endomorphism t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Endomorphism Endomorphism::symmetric_part() const { return Scalar(1, 2) * (*this + transpose()); }

Endomorphism Endomorphism::skew_part() const { return Scalar(1, 2) * (*this - transpose()); }

bool Endomorphism::is_symmetric() const { return *this == transpose(); }

bool Endomorphism::is_skew() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

bool Endomorphism::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& x) { return x == 0; });
}

bool Endomorphism::is_nilpotent() const {
  Endomorphism power = identity(dim_);
  for (std::size_t k = 0; k < dim_; ++k) power = power * (*this);
  return power.is_zero();
}

Scalar Endomorphism::determinant() const {
  std::vector<Scalar> a = entries_;
  const std::size_t n = dim_;
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot * n + c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[c * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r * n + c] == 0) continue;
      const Scalar f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

Endomorphism& Endomorphism::operator+=(const Endomorphism& other) {
  if (dim_ != other.dim_) throw DimensionMismatch("Endomorphism +: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Endomorphism& Endomorphism::operator-=(const Endomorphism& other) {
  if (dim_ != other.dim_) throw DimensionMismatch("Endomorphism -: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Endomorphism& Endomorphism::operator*=(const Scalar& s) {
  for (auto& x : entries_) x *= s;
  return *this;
}

Endomorphism operator*(const Endomorphism& a, const Endomorphism& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Endomorphism composition: dimension mismatch");
  const std::size_t n = a.dim();
  Endomorphism c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------------------
// MonomialBasis

namespace {

void enumerate_monomials(int first, int end, std::size_t remaining, std::vector<int>& prefix,
                         std::vector<MultiIndex>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int i = first; i < end; ++i) {
    prefix.push_back(i);
    enumerate_monomials(i, end, remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t dim, std::size_t degree, int first) : dim_(dim), degree_(degree) {
  std::vector<int> prefix;
  enumerate_monomials(first, static_cast<int>(dim), degree, prefix, monomials_);
  for (std::size_t i = 0; i < monomials_.size(); ++i) lookup_.emplace(monomials_[i], i);
}

std::optional<std::size_t> MonomialBasis::position(const MultiIndex& index) const {
  const auto it = lookup_.find(index);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Vector MonomialBasis::coordinates(const SymTensor& t) const {
  if (t.dim() != dim_ || t.degree() != degree_) throw DimensionMismatch("MonomialBasis: tensor from another space");
  Vector coords = zero_vector(size());
  for (const auto& [index, coeff] : t.terms()) {
    const auto pos = position(index);
    if (!pos) throw Error("MonomialBasis: tensor has support outside the basis");
    coords[*pos] = coeff;
  }
  return coords;
}

SymTensor MonomialBasis::tensor(const Vector& coords) const {
  if (coords.size() != size()) throw DimensionMismatch("MonomialBasis: coordinate vector size mismatch");
  SymTensor t(dim_, degree_);
  for (std::size_t i = 0; i < coords.size(); ++i) t.add_term(monomials_[i], coords[i]);
  return t;
}

std::size_t sym_dimension(std::size_t dim, std::size_t degree) {
  if (dim == 0) return degree == 0 ? 1 : 0;
  // binom(dim + degree - 1, degree), computed incrementally to stay exact.
  std::size_t result = 1;
  for (std::size_t k = 1; k <= degree; ++k) result = result * (dim - 1 + k) / k;
  return result;
}

// ---------------------------------------------------------------------------
// Operations

SymTensor sym_mul(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("sym_mul: dimension mismatch");
  SymTensor out(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) out.add_term(ia.merged(ib), ca * cb);
  return out;
}

Scalar inner(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
  if (a.degree() != b.degree()) throw DegreeMismatch("inner: degree mismatch");
  Scalar total = 0;
  for (const auto& [index, ca] : a.terms()) {
    const Scalar cb = b.coefficient(index);
    if (cb == 0) continue;
    mpz_class norm = 1;
    const auto idx = index.indices();
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j < idx.size() && idx[j] == idx[i]) ++j;
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), j - i);
      norm *= f;
      i = j;
    }
    total += ca * cb * Scalar(norm);
  }
  return total;
}

SymTensor apply_derivation(const Endomorphism& e, const SymTensor& k) {
  if (e.dim() != k.dim()) throw DimensionMismatch("apply_derivation: dimension mismatch");
  SymTensor out(k.dim(), k.degree());
  for (const auto& [index, coeff] : k.terms()) {
    const auto idx = index.indices();
    // Runs of equal indices contribute multiplicity * E(e_j).
    for (std::size_t pos = 0; pos < idx.size();) {
      std::size_t end = pos;
      while (end < idx.size() && idx[end] == idx[pos]) ++end;
      const Scalar mult(static_cast<unsigned long>(end - pos));
      const auto j = static_cast<std::size_t>(idx[pos]);
      for (std::size_t i = 0; i < e.dim(); ++i) {
        if (e(i, j) == 0) continue;
        out.add_term(index.replaced(pos, static_cast<int>(i)), coeff * mult * e(i, j));
      }
      pos = end;
    }
  }
  return out;
}

SymTensor s_of(const Endomorphism& e) {
  SymTensor out(e.dim(), 2);
  const Scalar half(1, 2);
  for (std::size_t i = 0; i < e.dim(); ++i)
    for (std::size_t j = 0; j < e.dim(); ++j)
      if (e(i, j) != 0) out.add_term(MultiIndex({static_cast<int>(i), static_cast<int>(j)}), half * e(i, j));
  return out;
}

Endomorphism endo_from_sym2(const SymTensor& k) {
  if (k.degree() != 2) throw DegreeMismatch("endo_from_sym2: tensor must have degree 2");
  Endomorphism e(k.dim());
  for (const auto& [index, coeff] : k.terms()) {
    const auto i = static_cast<std::size_t>(index.indices()[0]);
    const auto j = static_cast<std::size_t>(index.indices()[1]);
    e(j, i) += coeff;
    e(i, j) += coeff;
  }
  return e;
}

SymTensor act_group(const Endomorphism& a, const SymTensor& k) {
  if (a.dim() != k.dim()) throw DimensionMismatch("act_group: dimension mismatch");
  if (a.determinant() == 0) throw Error("act_group: matrix is singular");
  std::vector<SymTensor> images;
  images.reserve(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) images.push_back(SymTensor::from_vector(a.column(j)));
  SymTensor out(k.dim(), k.degree());
  for (const auto& [index, coeff] : k.terms()) {
    SymTensor term = SymTensor::constant(k.dim(), coeff);
    for (const int i : index.indices()) term = sym_mul(term, images[static_cast<std::size_t>(i)]);
    out += term;
  }
  return out;
}

SymTensor exp_action(const Endomorphism& d, const Scalar& gamma, const SymTensor& k, SeriesOrder order) {
  if (d.dim() != k.dim()) throw DimensionMismatch("exp_action: dimension mismatch");
  SymTensor sum = k;
  SymTensor term = k;
  // A nilpotent derivation on Sym^p vanishes after at most dim Sym^p steps.
  const std::size_t cap = order.max_power ? *order.max_power : sym_dimension(k.dim(), k.degree()) + 1;
  for (std::size_t j = 1; j <= cap; ++j) {
    if (term.is_zero()) return sum;
    term = apply_derivation(d, term) * (-gamma / Scalar(static_cast<unsigned long>(j)));
    sum += term;
  }
  if (!order.max_power && !term.is_zero()) {
    throw Error("exp_action: series does not terminate (derivation is not nilpotent on this tensor)");
  }
  return sum;
}

}  // namespace skt
