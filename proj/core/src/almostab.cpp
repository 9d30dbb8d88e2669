#include "skt/almostab.hpp"

#include "skt/exact_linalg.hpp"

#include <map>
#include <utility>

namespace skt {

std::size_t b_degree(const MultiIndex& index) { return index.multiplicity(0); }

std::string KillingDiagnosis::describe() const {
  if (killing) return "Killing";
  std::string out;
  const auto append = [&out](const std::string& s) {
    if (!out.empty()) out += "; ";
    out += s;
  };
  if (odd_part_nonzero_non_skew) append("odd part nonzero, D not skew");
  for (const auto i : failing_betas) append("D(beta_" + std::to_string(i) + ") != 0");
  for (const auto i : failing_alphas) append("D(alpha_" + std::to_string(i) + ") != 0");
  return out;
}

AlmostAbelianAlgebra::AlmostAbelianAlgebra(Endomorphism d, Endomorphism d_ext, MetricLieAlgebra algebra)
    : d_(std::move(d)), d_ext_(std::move(d_ext)), algebra_(std::move(algebra)) {}

AlmostAbelianAlgebra AlmostAbelianAlgebra::build(const Endomorphism& d) {
  const std::size_t n = d.dim();
  if (n == 0) throw DimensionMismatch("almost abelian algebra needs a nonzero ideal");
  std::vector<StructureEntry> entries;
  // [b, h_j] = D(h_j) = sum_k D(k, j) h_k.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (d(k, j) != 0) entries.push_back({0, j + 1, k + 1, d(k, j)});
  MetricLieAlgebra algebra(n + 1, entries);
  return AlmostAbelianAlgebra(d, Endomorphism::embedded(d, n + 1, 1), std::move(algebra));
}

bool AlmostAbelianAlgebra::supported_on_ideal(const SymTensor& k) const {
  if (k.dim() != dim()) return false;
  for (const auto& [index, coeff] : k.terms())
    if (b_degree(index) != 0) return false;
  return true;
}

SymTensor AlmostAbelianAlgebra::d_on_ideal(const SymTensor& k) const {
  if (!supported_on_ideal(k)) throw Error("d_on_ideal: tensor is not supported on the abelian ideal");
  return sym_mul(b(), apply_derivation(d_ext_, k));
}

namespace {

/// K = sum_m b^m . parts[m] with parts[m] supported on h.
std::map<std::size_t, SymTensor> split_by_b_degree(const SymTensor& k) {
  std::map<std::size_t, SymTensor> parts;
  for (const auto& [index, coeff] : k.terms()) {
    const std::size_t m = b_degree(index);
    MultiIndex rest = index;
    for (std::size_t i = 0; i < m; ++i) rest = rest.erased(0);
    auto it = parts.try_emplace(m, k.dim(), k.degree() - m).first;
    it->second.add_term(rest, coeff);
  }
  return parts;
}

SymTensor b_power_times(std::size_t dim, std::size_t m, const SymTensor& t) {
  return sym_mul(SymTensor::basis_vector(dim, 0).pow(m), t);
}

}  // namespace

LayeredDecomposition AlmostAbelianAlgebra::divide_by_L(const SymTensor& k) const {
  if (k.dim() != dim()) throw DimensionMismatch("divide_by_L: tensor from another space");
  const SymTensor lh = L_h();
  LayeredDecomposition out;
  out.degree = k.degree();
  SymTensor current = k;
  while (true) {
    const std::size_t deg = current.degree();
    auto parts = split_by_b_degree(current);
    // b^m P = L . b^{m-2} P - b^{m-2} L_h P, from the top b-degree down.
    SymTensor quotient(dim(), deg >= 2 ? deg - 2 : 0);
    for (std::size_t m = deg; m >= 2; --m) {
      const auto it = parts.find(m);
      if (it == parts.end() || it->second.is_zero()) continue;
      quotient += b_power_times(dim(), m - 2, it->second);
      auto below = parts.try_emplace(m - 2, dim(), deg - m + 2).first;
      below->second -= sym_mul(lh, it->second);
    }
    Layer layer{std::nullopt, SymTensor(dim(), deg)};
    if (const auto it = parts.find(0); it != parts.end()) layer.beta = it->second;
    if (deg >= 1) {
      layer.alpha = SymTensor(dim(), deg - 1);
      if (const auto it = parts.find(1); it != parts.end()) layer.alpha = it->second;
    }
    out.layers.push_back(std::move(layer));
    if (deg < 2) break;
    current = std::move(quotient);
  }
  return out;
}

SymTensor AlmostAbelianAlgebra::reassemble(const LayeredDecomposition& layers) const {
  SymTensor total(dim(), layers.degree);
  SymTensor l_power = SymTensor::constant(dim(), 1);
  for (const auto& layer : layers.layers) {
    SymTensor q = layer.beta;
    if (layer.alpha) q += sym_mul(*layer.alpha, b());
    total += sym_mul(l_power, q);
    l_power = sym_mul(l_power, L());
  }
  return total;
}

OddEvenSplit AlmostAbelianAlgebra::split_odd_even(const SymTensor& k) const {
  OddEvenSplit split{SymTensor(k.dim(), k.degree()), SymTensor(k.dim(), k.degree())};
  for (const auto& [index, coeff] : k.terms()) (b_degree(index) % 2 ? split.odd : split.even).add_term(index, coeff);
  return split;
}

KillingDiagnosis AlmostAbelianAlgebra::is_killing_structured(const SymTensor& k) const {
  const LayeredDecomposition layers = divide_by_L(k);
  KillingDiagnosis diag;
  const bool skew = derivation_is_skew();
  bool odd_nonzero = false;
  for (std::size_t i = 0; i < layers.layers.size(); ++i) {
    const Layer& layer = layers.layers[i];
    if (!apply_derivation(d_ext_, layer.beta).is_zero()) diag.failing_betas.push_back(i);
    if (!layer.alpha || layer.alpha->is_zero()) continue;
    odd_nonzero = true;
    if (skew && !apply_derivation(d_ext_, *layer.alpha).is_zero()) diag.failing_alphas.push_back(i);
  }
  diag.odd_part_nonzero_non_skew = odd_nonzero && !skew;
  diag.killing = diag.failing_betas.empty() && diag.failing_alphas.empty() && !diag.odd_part_nonzero_non_skew;
  return diag;
}

std::vector<SymTensor> AlmostAbelianAlgebra::ideal_kernel(std::size_t q) const {
  const MonomialBasis basis(dim(), q, 1);
  RationalMatrix m(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col)
    m.set_column(col, basis.coordinates(apply_derivation(d_ext_, SymTensor::monomial(dim(), basis[col]))));
  std::vector<SymTensor> kernel;
  for (const auto& v : nullspace(m)) kernel.push_back(basis.tensor(v));
  return kernel;
}

KillingSpace AlmostAbelianAlgebra::killing_space_structured(std::size_t degree) const {
  const bool skew = derivation_is_skew();
  std::vector<SymTensor> spanning;
  SymTensor l_power = SymTensor::constant(dim(), 1);
  for (std::size_t i = 0; 2 * i <= degree; ++i) {
    for (const auto& beta : ideal_kernel(degree - 2 * i)) spanning.push_back(sym_mul(l_power, beta));
    if (skew && degree >= 2 * i + 1)
      for (const auto& alpha : ideal_kernel(degree - 2 * i - 1))
        spanning.push_back(sym_mul(l_power, sym_mul(b(), alpha)));
    l_power = sym_mul(l_power, L());
  }
  return make_killing_space(dim(), degree, spanning);
}

std::size_t AlmostAbelianAlgebra::killing_dimension(std::size_t degree) const {
  const bool skew = derivation_is_skew();
  std::size_t total = 0;
  for (std::size_t i = 0; 2 * i <= degree; ++i) {
    total += ideal_kernel(degree - 2 * i).size();
    if (skew && degree >= 2 * i + 1) total += ideal_kernel(degree - 2 * i - 1).size();
  }
  return total;
}

}  // namespace skt
