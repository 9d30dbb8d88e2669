#include "skt/numeric.hpp"

#include <limits>

namespace skt {

Real to_real(const Scalar& x) { return Real(x.get_num().get_str()) / Real(x.get_den().get_str()); }

RealVector to_real(const Vector& v) {
  RealVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_real(x));
  return out;
}

RealMatrix::RealMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Real(0)) {}

RealMatrix::RealMatrix(const Endomorphism& e) : RealMatrix(e.dim()) {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) = to_real(e(i, j));
}

RealMatrix RealMatrix::identity(std::size_t dim) {
  RealMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

RealVector RealMatrix::apply(const RealVector& v) const {
  if (v.size() != dim_) throw DimensionMismatch("RealMatrix::apply: size mismatch");
  RealVector r(dim_, Real(0));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Real RealMatrix::one_norm() const {
  Real best = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    Real col = 0;
    for (std::size_t i = 0; i < dim_; ++i) col += abs((*this)(i, j));
    if (col > best) best = col;
  }
  return best;
}

RealMatrix& RealMatrix::operator*=(const Real& s) {
  for (auto& x : entries_) x *= s;
  return *this;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("RealMatrix *: dimension mismatch");
  RealMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

RealMatrix operator+(RealMatrix a, const RealMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("RealMatrix +: dimension mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) a(i, j) += b(i, j);
  return a;
}

std::size_t series_order(const Real& norm, double tol, std::size_t floor) {
  const Real target = Real(tol) / 10;
  // bound_N = norm^{N+1} / (N+1)!, updated incrementally.
  Real bound = norm;
  std::size_t n = 0;
  while (n < floor || bound >= target) {
    ++n;
    bound *= norm / Real(n + 1);
    if (n > 100000) throw Error("series_order: no admissible order below 100000 terms");
  }
  return n;
}

std::size_t series_order(const Real& norm, double tol, std::size_t floor, const Real& amplification) {
  const Real target = Real(tol) / 10;
  std::size_t n = series_order(norm, tol, floor);
  Real term = 1;  // norm^{n+1} / (n+1)!
  for (std::size_t k = 1; k <= n + 1; ++k) term *= norm / Real(k);
  // Geometric bound on the tail, valid once n + 2 > norm.
  const auto tail = [&] { return Real(n + 2) > norm ? term / (1 - norm / Real(n + 2)) : Real(1e300); };
  while (amplification * tail() >= target) {
    ++n;
    term *= norm / Real(n + 1);
    if (n > 100000) throw Error("series_order: no admissible order below 100000 terms");
  }
  return n;
}

RealMatrix exp_series(const RealMatrix& a, std::size_t order) {
  RealMatrix sum = RealMatrix::identity(a.dim());
  RealMatrix term = RealMatrix::identity(a.dim());
  for (std::size_t k = 1; k <= order; ++k) {
    term = term * a;
    term *= Real(1) / Real(k);
    sum = sum + term;
  }
  return sum;
}

NumTensor::NumTensor(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

NumTensor::NumTensor(const SymTensor& exact) : NumTensor(exact.dim(), exact.degree()) {
  for (const auto& [index, coeff] : exact.terms()) terms_.emplace(index, to_real(coeff));
}

NumTensor NumTensor::constant(std::size_t dim, const Real& value) {
  NumTensor t(dim, 0);
  t.add_term(MultiIndex{}, value);
  return t;
}

NumTensor NumTensor::from_vector(const RealVector& v) {
  NumTensor t(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) t.add_term(MultiIndex({static_cast<int>(i)}), v[i]);
  return t;
}

Real NumTensor::coefficient(const MultiIndex& index) const {
  const auto it = terms_.find(index);
  return it == terms_.end() ? Real(0) : it->second;
}

void NumTensor::add_term(const MultiIndex& index, const Real& coeff) {
  if (index.degree() != degree_) throw DegreeMismatch("NumTensor: monomial degree mismatch");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(index, coeff);
  if (!inserted) it->second += coeff;
}

NumTensor& NumTensor::operator+=(const NumTensor& other) {
  if (dim_ != other.dim_ || degree_ != other.degree_) throw DimensionMismatch("NumTensor +: space mismatch");
  for (const auto& [index, coeff] : other.terms_) add_term(index, coeff);
  return *this;
}

NumTensor& NumTensor::operator-=(const NumTensor& other) {
  if (dim_ != other.dim_ || degree_ != other.degree_) throw DimensionMismatch("NumTensor -: space mismatch");
  for (const auto& [index, coeff] : other.terms_) add_term(index, -coeff);
  return *this;
}

NumTensor& NumTensor::operator*=(const Real& s) {
  for (auto& [index, coeff] : terms_) coeff *= s;
  return *this;
}

NumTensor operator*(const NumTensor& a, const NumTensor& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("NumTensor *: dimension mismatch");
  NumTensor out(a.dim_, a.degree_ + b.degree_);
  for (const auto& [ia, ca] : a.terms_)
    for (const auto& [ib, cb] : b.terms_) out.add_term(ia.merged(ib), ca * cb);
  return out;
}

Real NumTensor::max_abs() const {
  Real best = 0;
  for (const auto& [index, coeff] : terms_)
    if (abs(coeff) > best) best = abs(coeff);
  return best;
}

NumTensor act_group(const RealMatrix& a, const SymTensor& k) {
  if (a.dim() != k.dim()) throw DimensionMismatch("act_group: dimension mismatch");
  std::vector<NumTensor> images;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    RealVector col(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) col[i] = a(i, j);
    images.push_back(NumTensor::from_vector(col));
  }
  NumTensor out(k.dim(), k.degree());
  for (const auto& [index, coeff] : k.terms()) {
    NumTensor term = NumTensor::constant(k.dim(), to_real(coeff));
    for (const int i : index.indices()) term = term * images[static_cast<std::size_t>(i)];
    out += term;
  }
  return out;
}

}  // namespace skt
