#include "skt/liealg.hpp"

#include "skt/exact_linalg.hpp"

#include <iostream>
#include <string>

namespace skt {

KillingSpace make_killing_space(std::size_t dim, std::size_t degree, const std::vector<SymTensor>& spanning) {
  const MonomialBasis monomials(dim, degree);
  std::vector<Vector> coords;
  coords.reserve(spanning.size());
  for (const auto& t : spanning) coords.push_back(monomials.coordinates(t));
  KillingSpace space{dim, degree, {}};
  for (const auto& row : canonical_span(coords, monomials.size())) space.basis.push_back(monomials.tensor(row));
  return space;
}

MetricLieAlgebra::MetricLieAlgebra(std::size_t dim, const std::vector<StructureEntry>& entries)
    : dim_(dim), c_(dim * dim * dim, Scalar(0)) {
  std::vector<bool> given(dim * dim * dim, false);
  for (const auto& e : entries) {
    if (e.i >= dim || e.j >= dim || e.k >= dim) throw InvalidStructure("structure constant index out of range");
    const std::size_t at = (e.i * dim + e.j) * dim + e.k;
    if (given[at] && c_[at] != e.value) throw InvalidStructure("structure constant listed twice with different values");
    given[at] = true;
    c_[at] = e.value;
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t at = (i * dim + j) * dim + k;
        const std::size_t mirror = (j * dim + i) * dim + k;
        if (!given[at] && given[mirror]) c_[at] = -c_[mirror];
      }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (c(i, j, k) != -c(j, i, k))
          throw InvalidStructure("structure constants are not antisymmetric at [e_" + std::to_string(i) + ", e_" +
                                 std::to_string(j) + "]");
  // Jacobi: [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] = 0.
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (std::size_t l = j + 1; l < dim; ++l)
        for (std::size_t m = 0; m < dim; ++m) {
          Scalar s = 0;
          for (std::size_t q = 0; q < dim; ++q) {
            s += c(j, l, q) * c(i, q, m);
            s += c(l, i, q) * c(j, q, m);
            s += c(i, j, q) * c(l, q, m);
          }
          if (s != 0)
            throw InvalidStructure("Jacobi identity fails for (e_" + std::to_string(i) + ", e_" + std::to_string(j) +
                                   ", e_" + std::to_string(l) + ")");
        }

  ad_basis_.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) ad_basis_.push_back(ad(unit_vector(dim, i)));
  nabla_basis_.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Endomorphism n(dim);
    const Vector y = unit_vector(dim, i);
    for (std::size_t j = 0; j < dim; ++j) {
      const Vector col = nabla(y, unit_vector(dim, j));
      for (std::size_t r = 0; r < dim; ++r) n(r, j) = col[r];
    }
    nabla_basis_.push_back(std::move(n));
  }
}

std::vector<StructureEntry> MetricLieAlgebra::structure() const {
  std::vector<StructureEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0) out.push_back({i, j, k, c(i, j, k)});
  return out;
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("bracket: vector size mismatch");
  Vector r = zero_vector(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j] == 0) continue;
      const Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) r[k] += xy * c(i, j, k);
    }
  }
  return r;
}

Endomorphism MetricLieAlgebra::ad(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("ad: vector size mismatch");
  Endomorphism a(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) a(k, j) += x[i] * c(i, j, k);
  }
  return a;
}

Endomorphism MetricLieAlgebra::ad_star(const Vector& x) const { return ad(x).transpose(); }

Vector MetricLieAlgebra::nabla(const Vector& y, const Vector& x) const {
  Vector r = bracket(y, x);
  const Vector a = ad_star(y).apply(x);
  const Vector b = ad_star(x).apply(y);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = (r[k] - a[k] - b[k]) / 2;
  return r;
}

SymTensor MetricLieAlgebra::killing_operator(const SymTensor& k) const {
  if (k.dim() != dim_) throw DimensionMismatch("killing_operator: tensor from another space");
  SymTensor out(dim_, k.degree() + 1);
  for (std::size_t j = 0; j < dim_; ++j) {
    const SymTensor adk = apply_derivation(ad_basis_[j], k);
    if (!adk.is_zero()) out += sym_mul(SymTensor::basis_vector(dim_, static_cast<int>(j)), adk);
  }
  return out;
}

SymTensor MetricLieAlgebra::killing_operator_via_nabla(const SymTensor& k) const {
  if (k.dim() != dim_) throw DimensionMismatch("killing_operator_via_nabla: tensor from another space");
  SymTensor out(dim_, k.degree() + 1);
  for (std::size_t i = 0; i < dim_; ++i) {
    const SymTensor cov = apply_derivation(nabla_basis_[i], k);
    if (!cov.is_zero()) out += sym_mul(SymTensor::basis_vector(dim_, static_cast<int>(i)), cov);
  }
  return out;
}

KillingSpace MetricLieAlgebra::killing_space_bruteforce(std::size_t degree, const SolverLimits& limits) const {
  if (degree > limits.max_degree || dim_ > limits.max_dim) {
    throw LimitExceeded("killing_space_bruteforce: degree " + std::to_string(degree) + " / dimension " +
                        std::to_string(dim_) + " exceeds the configured limits");
  }
  const MonomialBasis domain(dim_, degree);
  const MonomialBasis codomain(dim_, degree + 1);
  if (domain.size() > limits.warn_columns) {
    std::cerr << "warning: Killing operator matrix has " << domain.size() << " columns\n";
  }
  RationalMatrix m(codomain.size(), domain.size());
  for (std::size_t col = 0; col < domain.size(); ++col) {
    m.set_column(col, codomain.coordinates(killing_operator(SymTensor::monomial(dim_, domain[col]))));
  }
  std::vector<SymTensor> kernel;
  for (const auto& v : nullspace(m)) kernel.push_back(domain.tensor(v));
  return make_killing_space(dim_, degree, kernel);
}

}  // namespace skt
