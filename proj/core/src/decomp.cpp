#include "skt/decomp.hpp"

#include "skt/exact_linalg.hpp"

#include <algorithm>
#include <random>
#include <type_traits>

namespace skt {

// ---------------------------------------------------------------------------
// SkewDerivation

Endomorphism SkewDerivation::full() const {
  const std::size_t n = th.dim();
  if (v.size() != n) throw DimensionMismatch("SkewDerivation: v and T^h sizes differ");
  Endomorphism t = Endomorphism::embedded(th, n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    t(i + 1, 0) = v[i];
    t(0, i + 1) = -v[i];
  }
  return t;
}

SkewDerivation SkewDerivation::from_full(const Endomorphism& t) {
  if (!t.is_skew()) throw Error("SkewDerivation::from_full: matrix is not skew");
  const std::size_t n = t.dim() - 1;
  SkewDerivation s{zero_vector(n), t.block(1, n)};
  for (std::size_t i = 0; i < n; ++i) s.v[i] = t(i + 1, 0);
  return s;
}

std::size_t generator_degree(const Generator& g) { return std::holds_alternative<MetricGenerator>(g) ? 2 : 1; }

// ---------------------------------------------------------------------------
// Derivations

namespace {

/// Components of T[e_i, e_j] - [T e_i, e_j] - [e_i, T e_j] over i < j.
Vector derivation_defect(const MetricLieAlgebra& algebra, const Endomorphism& t) {
  const std::size_t n = algebra.dim();
  Vector defect;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector ei = unit_vector(n, i);
      const Vector ej = unit_vector(n, j);
      const Vector lhs = t.apply(algebra.bracket(ei, ej));
      const Vector r1 = algebra.bracket(t.apply(ei), ej);
      const Vector r2 = algebra.bracket(ei, t.apply(ej));
      for (std::size_t k = 0; k < n; ++k) defect.push_back(lhs[k] - r1[k] - r2[k]);
    }
  return defect;
}

}  // namespace

bool is_derivation(const MetricLieAlgebra& algebra, const Endomorphism& t) {
  if (t.dim() != algebra.dim()) throw DimensionMismatch("is_derivation: dimension mismatch");
  return is_zero(derivation_defect(algebra, t));
}

bool satisfies_derivation_conditions(const AlmostAbelianAlgebra& alg, const SkewDerivation& t) {
  const Endomorphism& d = alg.derivation();
  if (!t.th.is_skew()) return false;
  if (!(t.th * d - d * t.th).is_zero()) return false;
  if (!is_zero(d.transpose().apply(t.v))) return false;
  const Scalar v2 = dot(t.v, t.v);
  const Vector dv = d.apply(t.v);
  for (std::size_t i = 0; i < d.dim(); ++i)
    for (std::size_t j = 0; j < d.dim(); ++j)
      if (v2 * d(i, j) - dv[i] * t.v[j] != 0) return false;
  return true;
}

std::vector<Endomorphism> solve_skew_derivations(const MetricLieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  std::vector<Endomorphism> so_basis;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Endomorphism x(n);
      x(b, a) = 1;
      x(a, b) = -1;
      so_basis.push_back(std::move(x));
    }
  if (so_basis.empty()) return {};
  const std::size_t rows = n * (n - 1) / 2 * n;
  RationalMatrix m(rows, so_basis.size());
  for (std::size_t c = 0; c < so_basis.size(); ++c) m.set_column(c, derivation_defect(algebra, so_basis[c]));
  std::vector<Endomorphism> out;
  for (const auto& coeffs : nullspace(m)) {
    Endomorphism t(n);
    for (std::size_t c = 0; c < so_basis.size(); ++c)
      if (coeffs[c] != 0) t += coeffs[c] * so_basis[c];
    if (!t.is_skew() || !is_derivation(algebra, t)) throw Error("solve_skew_derivations: solution failed revalidation");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<SkewDerivation> solve_skew_derivations(const AlmostAbelianAlgebra& alg) {
  std::vector<SkewDerivation> out;
  for (const auto& t : solve_skew_derivations(alg.algebra())) out.push_back(SkewDerivation::from_full(t));
  return out;
}

// ---------------------------------------------------------------------------
// Omega-functions

namespace {

RealMatrix minus_ad(const AlmostAbelianAlgebra& alg, const RealVector& w) {
  const std::size_t dim = alg.dim();
  if (w.size() != dim) throw DimensionMismatch("Omega: point has the wrong dimension");
  const MetricLieAlgebra& g = alg.algebra();
  RealMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (g.c(i, j, k) != 0) a(k, j) -= w[i] * to_real(g.c(i, j, k));
  return a;
}

RealVector real_apply(const Endomorphism& e, const RealVector& x) { return RealMatrix(e).apply(x); }

/// Omega values of generators at one point, sharing e^{-ad_w}.
class PointEvaluator {
 public:
  PointEvaluator(const AlmostAbelianAlgebra& alg, const RealVector& w, std::size_t order)
      : alg_(alg), w_(w), order_(order), exp_minus_ad_(exp_series(minus_ad(alg, w), order)) {}

  NumTensor operator()(const Generator& g) const {
    return std::visit(
        [this](const auto& gen) -> NumTensor {
          using G = std::decay_t<decltype(gen)>;
          if constexpr (std::is_same_v<G, MetricGenerator>) {
            return NumTensor(alg_.L() * Scalar(1, 2));
          } else if constexpr (std::is_same_v<G, LeftInvariant>) {
            return NumTensor::from_vector(to_real(gen.x));
          } else if constexpr (std::is_same_v<G, RightInvariant>) {
            return NumTensor::from_vector(exp_minus_ad_.apply(to_real(gen.x)));
          } else {
            return NumTensor::from_vector(omega_derivation(alg_, gen.t, w_, order_));
          }
        },
        g);
  }

 private:
  const AlmostAbelianAlgebra& alg_;
  const RealVector& w_;
  std::size_t order_;
  RealMatrix exp_minus_ad_;
};

}  // namespace

RealVector omega_right(const AlmostAbelianAlgebra& alg, const Vector& x, const RealVector& w, std::size_t order) {
  if (x.size() != alg.dim()) throw DimensionMismatch("omega_right: vector has the wrong dimension");
  const RealMatrix a = minus_ad(alg, w);
  RealVector term = to_real(x);
  RealVector sum = term;
  for (std::size_t k = 1; k <= order; ++k) {
    term = a.apply(term);
    for (auto& t : term) t /= Real(k);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
  }
  return sum;
}

Vector omega_right_exact(const AlmostAbelianAlgebra& alg, const Vector& x, const Vector& w) {
  const Endomorphism ad_w = alg.algebra().ad(w);
  Vector term = x;
  Vector sum = x;
  for (std::size_t k = 1; k <= alg.dim() + 1; ++k) {
    if (is_zero(term)) return sum;
    term = scale(Scalar(-1, static_cast<unsigned long>(k)), ad_w.apply(term));
    sum = add(sum, term);
  }
  if (!is_zero(term)) throw Error("omega_right_exact: series does not terminate");
  return sum;
}

RealVector omega_derivation(const AlmostAbelianAlgebra& alg, const SkewDerivation& t, const RealVector& w,
                            std::size_t order) {
  const RealMatrix minus_ad_w = minus_ad(alg, w);
  RealVector term = real_apply(t.full(), w);  // (-ad_w)^k T(w)
  RealVector sum = term;
  Real factorial = 1;  // (k+1)!
  for (std::size_t k = 1; k <= order; ++k) {
    term = minus_ad_w.apply(term);
    factorial *= Real(k + 1);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i] / factorial;
  }
  return sum;
}

RealVector omega_derivation_closed_form(const AlmostAbelianAlgebra& alg, const SkewDerivation& t,
                                        const RealVector& w, std::size_t order) {
  const std::size_t n = alg.n();
  if (w.size() != n + 1) throw DimensionMismatch("omega_derivation_closed_form: point has the wrong dimension");
  const Real gamma = w[0];
  const RealVector h(w.begin() + 1, w.end());
  const RealVector v = to_real(t.v);
  const RealVector th_h = real_apply(t.th, h);
  Real vh = 0;
  for (std::size_t i = 0; i < n; ++i) vh += v[i] * h[i];
  const RealMatrix d(alg.derivation());

  RealVector out(n + 1, Real(0));
  out[0] = -vh;
  for (std::size_t i = 0; i < n; ++i) out[i + 1] = gamma * v[i] + th_h[i];
  Real factorial = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    factorial *= Real(k + 1);
    RealVector inner(n);
    const Real g_k1 = pow(gamma, static_cast<int>(k + 1));
    const Real g_k = pow(gamma, static_cast<int>(k));
    const Real g_km1 = k == 1 ? Real(1) : pow(gamma, static_cast<int>(k - 1));
    for (std::size_t i = 0; i < n; ++i) inner[i] = g_k1 * v[i] + g_k * th_h[i] + g_km1 * vh * h[i];
    for (std::size_t p = 0; p < k; ++p) inner = d.apply(inner);
    const Real sign = k % 2 ? Real(-1) : Real(1);
    for (std::size_t i = 0; i < n; ++i) out[i + 1] += sign * inner[i] / factorial;
  }
  return out;
}

std::size_t omega_order(const AlmostAbelianAlgebra& alg, const RealVector& w, double tol, std::size_t floor) {
  return series_order(minus_ad(alg, w).one_norm(), tol, floor);
}

std::size_t omega_order(const AlmostAbelianAlgebra& alg, const Certificate& cert, const RealVector& w, double tol,
                        std::size_t floor) {
  const Real norm = minus_ad(alg, w).one_norm();
  const Real growth = exp(norm);  // bounds ||e^{-ad_w}||_1
  Real w_norm = 0;
  for (const auto& x : w) w_norm += abs(x);
  const auto one_norm = [](const Vector& v) {
    Real s = 0;
    for (const auto& x : v) s += abs(to_real(x));
    return s;
  };
  // For |e_i| <= eps x_i, |prod(v_i + e_i) - prod v_i| <= eps s prod(|v_i| + x_i)
  // with s the number of truncated factors.
  Real amplification = 0;
  for (const auto& term : cert.terms) {
    Real bound = abs(to_real(term.coeff));
    std::size_t truncated = 0;
    for (const auto& factor : term.factors) {
      if (const auto* right = std::get_if<RightInvariant>(&factor)) {
        bound *= one_norm(right->x) * (growth + 1);
        ++truncated;
      } else if (const auto* deriv = std::get_if<DerivationGenerator>(&factor)) {
        bound *= RealMatrix(deriv->t.full()).one_norm() * w_norm * (growth + 1);
        ++truncated;
      } else if (const auto* left = std::get_if<LeftInvariant>(&factor)) {
        bound *= one_norm(left->x);
      }
    }
    amplification += bound * Real(truncated);
  }
  return series_order(norm, tol, floor, amplification);
}

NumTensor omega_generator(const AlmostAbelianAlgebra& alg, const Generator& g, const RealVector& w,
                          std::size_t order) {
  return PointEvaluator(alg, w, order)(g);
}

NumTensor omega_tensor(const AlmostAbelianAlgebra& alg, const Certificate& cert, const RealVector& w,
                       std::size_t order) {
  const PointEvaluator eval(alg, w, order);
  NumTensor total(cert.target.dim(), cert.target.degree());
  for (const auto& term : cert.terms) {
    NumTensor product = NumTensor::constant(cert.target.dim(), to_real(term.coeff));
    for (const auto& factor : term.factors) product = product * eval(factor);
    total += product;
  }
  return total;
}

SymTensor omega_at_identity(const AlmostAbelianAlgebra& alg, const Certificate& cert) {
  const std::size_t dim = alg.dim();
  SymTensor total(cert.target.dim(), cert.target.degree());
  for (const auto& term : cert.terms) {
    SymTensor product = SymTensor::constant(dim, term.coeff);
    for (const auto& factor : term.factors) {
      const SymTensor value = std::visit(
          [&](const auto& gen) -> SymTensor {
            using G = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<G, MetricGenerator>) {
              return alg.L() * Scalar(1, 2);
            } else if constexpr (std::is_same_v<G, DerivationGenerator>) {
              return SymTensor(dim, 1);  // T(0) = 0
            } else {
              return SymTensor::from_vector(gen.x);
            }
          },
          factor);
      product = sym_mul(product, value);
    }
    total += product;
  }
  return total;
}

void validate_certificate(const AlmostAbelianAlgebra& alg, const Certificate& cert) {
  if (cert.target.dim() != alg.dim()) throw InvalidCertificate("certificate target lives in another space");
  for (const auto& term : cert.terms) {
    std::size_t degree = 0;
    for (const auto& factor : term.factors) {
      degree += generator_degree(factor);
      if (const auto* left = std::get_if<LeftInvariant>(&factor)) {
        if (left->x.size() != alg.dim()) throw InvalidCertificate("left-invariant generator has the wrong dimension");
        if (!alg.algebra().ad(left->x).is_skew())
          throw InvalidCertificate("left-invariant generator is not Killing (ad_x is not skew)");
      } else if (const auto* right = std::get_if<RightInvariant>(&factor)) {
        if (right->x.size() != alg.dim()) throw InvalidCertificate("right-invariant generator has the wrong dimension");
      } else if (const auto* deriv = std::get_if<DerivationGenerator>(&factor)) {
        if (deriv->t.th.dim() != alg.n() || deriv->t.v.size() != alg.n())
          throw InvalidCertificate("derivation generator has the wrong dimension");
        if (!deriv->t.th.is_skew() || !is_derivation(alg.algebra(), deriv->t.full()))
          throw InvalidCertificate("derivation generator is not a skew-symmetric derivation");
      }
    }
    if (degree != cert.target.degree()) throw InvalidCertificate("certificate term has the wrong degree");
  }
}

// ---------------------------------------------------------------------------
// Decomposition

Certificate decompose_ideal_tensor(const AlmostAbelianAlgebra& alg, const SymTensor& k) {
  if (!alg.supported_on_ideal(k)) throw Error("decompose_ideal_tensor: tensor is not supported on the abelian ideal");
  if (!apply_derivation(alg.derivation_extended(), k).is_zero())
    throw NotKilling("D(K) != 0 for a tensor on the abelian ideal");
  Certificate cert{k, {}};
  for (const auto& [index, coeff] : k.terms()) {
    CertificateTerm term{coeff, {}};
    for (const int i : index.indices())
      term.factors.emplace_back(RightInvariant{unit_vector(alg.dim(), static_cast<std::size_t>(i))});
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

Certificate decompose(const AlmostAbelianAlgebra& alg, const SymTensor& k) {
  if (k.dim() != alg.dim()) throw DimensionMismatch("decompose: tensor from another space");
  if (!alg.algebra().killing_operator(k).is_zero()) throw NotKilling(alg.is_killing_structured(k).describe());
  const LayeredDecomposition layers = alg.divide_by_L(k);
  Certificate cert{k, {}};
  Scalar l_scale = 1;  // L^i = 2^i g^i
  std::vector<Generator> metric_factors;
  const auto append = [&](const Certificate& part, const std::vector<Generator>& prefix) {
    for (const auto& term : part.terms) {
      CertificateTerm out{term.coeff * l_scale, prefix};
      out.factors.insert(out.factors.end(), term.factors.begin(), term.factors.end());
      cert.terms.push_back(std::move(out));
    }
  };
  for (const auto& layer : layers.layers) {
    if (!layer.beta.is_zero()) append(decompose_ideal_tensor(alg, layer.beta), metric_factors);
    if (layer.alpha && !layer.alpha->is_zero()) {
      if (!alg.derivation_is_skew()) throw NotKilling("odd part nonzero, D not skew");
      std::vector<Generator> prefix = metric_factors;
      prefix.emplace_back(LeftInvariant{alg.b_vector()});
      append(decompose_ideal_tensor(alg, *layer.alpha), prefix);
    }
    metric_factors.emplace_back(MetricGenerator{});
    l_scale *= 2;
  }
  return cert;
}

std::vector<RealVector> sample_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Top 53 bits of each draw, mapped to [-2, 2].
  const auto uniform = [&rng] { return -2.0 + 4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  std::vector<RealVector> points;
  points.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    RealVector w(dim);
    for (auto& x : w) x = Real(uniform());
    points.push_back(std::move(w));
  }
  return points;
}

VerificationReport verify_certificate(const AlmostAbelianAlgebra& alg, const Certificate& cert,
                                      const VerifyOptions& options) {
  validate_certificate(alg, cert);
  VerificationReport report;
  report.exact_at_identity = omega_at_identity(alg, cert) == cert.target;
  const NumTensor target(cert.target);
  Real worst = 0;
  for (const auto& w : sample_points(alg.dim(), options.samples, options.seed)) {
    const std::size_t order = omega_order(alg, cert, w, options.tol, options.order_floor);
    NumTensor diff = omega_tensor(alg, cert, w, order);
    diff -= target;
    const Real dev = diff.max_abs();
    worst = std::max(worst, dev);
    SampleResult sample;
    for (const auto& x : w) sample.point.push_back(static_cast<double>(x));
    sample.order = order;
    sample.deviation = static_cast<double>(dev);
    report.samples.push_back(std::move(sample));
  }
  report.max_deviation = static_cast<double>(worst);
  report.passed = report.exact_at_identity && worst < Real(options.tol);
  return report;
}

}  // namespace skt
