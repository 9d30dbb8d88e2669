// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "oracles.hpp"

#include "skt/curvature.hpp"
#include "skt/decomp.hpp"
#include "skt/exact_linalg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

namespace skt {
namespace {

using Rows = std::vector<std::vector<Scalar>>;
using oracle::Kind;

constexpr std::size_t kMinSuiteSize = 50;
constexpr std::size_t kMaxDegree = 4;
constexpr double kOracleSeconds = 60.0;
constexpr double kDecomposeSeconds = 120.0;
constexpr double kSampleTol = 1e-9;
constexpr std::size_t kSamples = 20;
constexpr double kResidualTol = 1e-9;
constexpr std::uint64_t kSeed = 0x5EED;

/// Collects the outcome of one criterion; only the first failure is kept.
class Check {
 public:
  void require(bool condition, const std::function<std::string()>& what) {
    ++checks_;
    if (!condition && ok_) {
      ok_ = false;
      failure_ = what();
    }
  }
  bool ok() const { return ok_; }
  std::size_t checks() const { return checks_; }
  const std::string& failure() const { return failure_; }

 private:
  bool ok_ = true;
  std::size_t checks_ = 0;
  std::string failure_;
};

std::string str(const Endomorphism& d) {
  std::ostringstream s;
  s << "[";
  for (std::size_t r = 0; r < d.dim(); ++r) {
    s << (r ? "; " : "");
    for (std::size_t c = 0; c < d.dim(); ++c) s << (c ? " " : "") << to_string(d(r, c));
  }
  s << "]";
  return s.str();
}

std::size_t kernel_dimension(const Endomorphism& d) {
  RationalMatrix m(d.dim(), d.dim());
  for (std::size_t r = 0; r < d.dim(); ++r)
    for (std::size_t c = 0; c < d.dim(); ++c) m(r, c) = d(r, c);
  return nullspace(m).size();
}

/// T[x, y] = [Tx, y] + [x, Ty] on every pair of basis vectors.
bool derivation_identity(const MetricLieAlgebra& g, const Endomorphism& t) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      const Vector x = unit_vector(g.dim(), i), y = unit_vector(g.dim(), j);
      if (t.apply(g.bracket(x, y)) != add(g.bracket(t.apply(x), y), g.bracket(x, t.apply(y)))) return false;
    }
  return true;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Outcome {
  Check check;
  std::string summary;
};

Outcome oracle_equivalence(const std::vector<oracle::SuiteCase>& suite) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  std::size_t covered[5] = {};
  for (const auto& c : suite) {
    covered[static_cast<int>(c.kind)]++;
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(c.d);
    for (std::size_t p = 0; p <= kMaxDegree; ++p) {
      const KillingSpace structured = alg.killing_space_structured(p);
      const KillingSpace brute = alg.algebra().killing_space_bruteforce(p);
      out.check.require(structured == brute, [&] {
        return c.name + " D=" + str(c.d) + " p=" + std::to_string(p) + ": structured dim " +
               std::to_string(structured.dimension()) + ", brute dim " + std::to_string(brute.dimension());
      });
    }
  }
  const double elapsed = seconds_since(start);
  out.check.require(suite.size() >= kMinSuiteSize, [&] { return "suite has only " + std::to_string(suite.size()) + " D"; });
  for (const auto kind : {Kind::Skew, Kind::Symmetric, Kind::Nilpotent, Kind::Generic})
    out.check.require(covered[static_cast<int>(kind)] > 0, [&] { return "no " + oracle::to_string(kind) + " D"; });
  out.check.require(elapsed < kOracleSeconds, [&] { return "took " + std::to_string(elapsed) + " s"; });
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu derivations, p = 0..%zu, %.1f s (limit %.0f s)", suite.size(), kMaxDegree,
                elapsed, kOracleSeconds);
  out.summary = buf;
  return out;
}

Outcome odd_part_vanishing(const std::vector<oracle::SuiteCase>& suite) {
  Outcome out;
  std::size_t non_skew = 0;
  for (const auto& c : suite) {
    if (c.d.is_skew()) continue;
    ++non_skew;
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(c.d);
    for (std::size_t p = 0; p <= kMaxDegree; ++p)
      for (const auto& k : alg.algebra().killing_space_bruteforce(p).basis)
        for (const auto& [index, coeff] : k.terms())
          out.check.require(index.multiplicity(0) % 2 == 0, [&] {
            return c.name + " p=" + std::to_string(p) + ": odd b-degree coefficient " + to_string(coeff);
          });
  }
  out.summary = std::to_string(non_skew) + " non-skew derivations, p = 0.." + std::to_string(kMaxDegree);
  return out;
}

bool same_layers(const LayeredDecomposition& a, const LayeredDecomposition& b) {
  if (a.degree != b.degree || a.layers.size() != b.layers.size()) return false;
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    if (a.layers[i].beta != b.layers[i].beta || a.layers[i].alpha.has_value() != b.layers[i].alpha.has_value())
      return false;
    if (a.layers[i].alpha && *a.layers[i].alpha != *b.layers[i].alpha) return false;
  }
  return true;
}

Outcome division_by_l() {
  Outcome out;
  oracle::Random rng(kSeed + 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 2));
    const std::size_t p = static_cast<std::size_t>(rng.integer(0, 5));
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(rng.matrix(n, Kind::Generic));
    const SymTensor k = rng.tensor(n + 1, p, 6);
    const LayeredDecomposition layers = alg.divide_by_L(k);
    out.check.require(alg.reassemble(layers) == k, [&] { return "round trip failed, trial " + std::to_string(trial); });
    out.check.require(same_layers(layers, oracle::divide_by_L(alg, k)),
                      [&] { return "layers differ from closed form, trial " + std::to_string(trial); });
  }
  // Degree 2: K = lambda b^2 + b v + sum a_ij h_i h_j.
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(rng.matrix(n, Kind::Generic));
    const Scalar lambda = rng.rational();
    Vector v = rng.vector(n + 1);
    v[0] = 0;
    SymTensor quad(n + 1, 2), beta0(n + 1, 2);
    for (int i = 1; i <= static_cast<int>(n); ++i)
      for (int j = i; j <= static_cast<int>(n); ++j) {
        const Scalar a = rng.rational();
        quad.add_term(MultiIndex({i, j}), a);
        beta0.add_term(MultiIndex({i, j}), a - (i == j ? lambda : Scalar(0)));
      }
    const SymTensor k = alg.b().pow(2) * lambda + alg.b() * SymTensor::from_vector(v) + quad;
    const LayeredDecomposition layers = alg.divide_by_L(k);
    const bool shape = layers.layers.size() == 2 && layers.layers[0].alpha.has_value();
    out.check.require(shape && layers.layers[1].beta == SymTensor::constant(n + 1, lambda) &&
                          *layers.layers[0].alpha == SymTensor::from_vector(v) && layers.layers[0].beta == beta0,
                      [&] { return "degree-2 layers wrong, trial " + std::to_string(trial); });
  }
  out.summary = "200 random tensors (n <= 3, p <= 5) and 30 degree-2 cases";
  return out;
}

Outcome operator_identities(const std::vector<oracle::SuiteCase>& suite) {
  Outcome out;
  oracle::Random rng(kSeed + 4);
  std::size_t vectors = 0;
  for (const auto& c : suite) {
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(c.d);
    const MetricLieAlgebra& g = alg.algebra();
    const std::size_t dim = alg.dim();
    out.check.require(g.killing_operator(alg.L()).is_zero(), [&] { return c.name + ": d(L) != 0"; });
    for (int t = 0; t < 2; ++t, ++vectors) {
      const Vector x = rng.vector(dim);
      out.check.require(g.killing_operator(SymTensor::from_vector(x)) == s_of(g.ad(x)) * Scalar(-2),
                        [&] { return c.name + ": d(x) != -2 s(ad x)"; });
    }
    out.check.require(g.killing_operator(alg.b()) == apply_derivation(alg.derivation_extended(), alg.L_h()) * Scalar(-1, 2),
                      [&] { return c.name + ": d(b) != -D(L_h)/2"; });
    const SymTensor r = rng.tensor(dim, 2, 3), s = rng.tensor(dim, 1 + static_cast<std::size_t>(rng.integer(0, 2)), 3);
    out.check.require(g.killing_operator(r * s) == g.killing_operator(r) * s + r * g.killing_operator(s),
                      [&] { return c.name + ": Leibniz fails"; });
    const Endomorphism e = rng.matrix(dim, Kind::Generic), f = rng.matrix(dim, Kind::Symmetric);
    out.check.require(apply_derivation(e, alg.L()) == s_of(e) * Scalar(4), [&] { return c.name + ": E(L) != 4 s(E)"; });
    out.check.require(apply_derivation(e, s_of(f)) == s_of(e * f) * Scalar(2),
                      [&] { return c.name + ": E(s(F)) != 2 s(EF)"; });
    for (std::size_t p = 0; p <= 3; ++p) {
      const SymTensor k = rng.tensor(dim, p, 4);
      const SymTensor via_ad = g.killing_operator(k);
      out.check.require(via_ad == g.killing_operator_via_nabla(k), [&] { return c.name + ": ad and nabla routes differ"; });
      out.check.require(via_ad == oracle::killing_operator(g, k), [&] { return c.name + ": differs from tensor oracle"; });
    }
  }
  for (; vectors < 100; ++vectors) {
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(rng.matrix(3, Kind::Generic));
    const Vector x = rng.vector(4);
    out.check.require(alg.algebra().killing_operator(SymTensor::from_vector(x)) == s_of(alg.algebra().ad(x)) * Scalar(-2),
                      [&] { return "d(x) != -2 s(ad x)"; });
  }
  out.summary = std::to_string(suite.size()) + " algebras, " + std::to_string(vectors) + " random vectors";
  return out;
}

Outcome gram_norms() {
  Outcome out;
  std::size_t pairs = 0;
  for (std::size_t dim = 1; dim <= 4; ++dim)
    for (std::size_t p = 0; p <= kMaxDegree; ++p) {
      const MonomialBasis basis(dim, p);
      for (const auto& a : basis.monomials())
        for (const auto& b : basis.monomials()) {
          ++pairs;
          const Scalar lib = inner(SymTensor::monomial(dim, a), SymTensor::monomial(dim, b));
          out.check.require(lib == oracle::permutation_inner(a, b), [&] { return "mismatch at degree " + std::to_string(p); });
        }
    }
  const SymTensor e1 = SymTensor::basis_vector(2, 1);
  out.check.require(inner(e1.pow(2), e1.pow(2)) == 2, [] { return "|e_1^2|^2 != 2"; });
  out.check.require(inner(e1.pow(3), e1.pow(3)) == 6, [] { return "|e_1^3|^2 != 6"; });
  out.summary = std::to_string(pairs) + " monomial pairs, dimension <= 4, p <= " + std::to_string(kMaxDegree);
  return out;
}

Outcome decomposability(const std::vector<oracle::SuiteCase>& suite) {
  Outcome out;
  oracle::Random rng(kSeed + 6);
  const auto start = std::chrono::steady_clock::now();
  std::size_t certificates = 0;
  double worst = 0;
  const VerifyOptions options{kSamples, kSampleTol, kSeed, 12};
  for (const auto& c : suite) {
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(c.d);
    for (std::size_t p = 0; p <= kMaxDegree; ++p) {
      std::vector<SymTensor> tensors = alg.killing_space_structured(p).basis;
      if (tensors.size() > 1) {
        SymTensor combo(alg.dim(), p);
        for (const auto& t : tensors) combo += t * rng.rational();
        tensors.push_back(combo);
      }
      for (const auto& k : tensors) {
        const Certificate cert = decompose(alg, k);
        const VerificationReport report = verify_certificate(alg, cert, options);
        ++certificates;
        worst = std::max(worst, report.max_deviation);
        out.check.require(report.exact_at_identity, [&] { return c.name + " p=" + std::to_string(p) + ": not exact at identity"; });
        out.check.require(report.samples.size() == kSamples && report.max_deviation < kSampleTol, [&] {
          return c.name + " p=" + std::to_string(p) + ": sampled deviation " + std::to_string(report.max_deviation);
        });
        bool uses_left = false;
        for (const auto& term : cert.terms)
          for (const auto& f : term.factors) uses_left |= std::holds_alternative<LeftInvariant>(f);
        out.check.require(!uses_left || c.d.is_skew(), [&] { return c.name + ": LeftInvariant(b) with non-skew D"; });
      }
    }
  }
  const double elapsed = seconds_since(start);
  out.check.require(elapsed < kDecomposeSeconds, [&] { return "took " + std::to_string(elapsed) + " s"; });
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu certificates, max deviation %.2e (tol %.0e), %.1f s (limit %.0f s)", certificates,
                worst, kSampleTol, elapsed, kDecomposeSeconds);
  out.summary = buf;
  return out;
}

Outcome flat_case() {
  Outcome out;
  oracle::Random rng(kSeed + 7);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Endomorphism d = rng.skew(1 + static_cast<std::size_t>(trial % 3));
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(d);
    const VerificationReport report =
        verify_certificate(alg, flat_metric_certificate(alg), {kSamples, kSampleTol, kSeed, 12});
    worst = std::max(worst, report.max_deviation);
    out.check.require(report.passed && report.max_deviation < kSampleTol,
                      [&] { return "D=" + str(d) + ": deviation " + std::to_string(report.max_deviation); });
    out.check.require(alg.killing_dimension(1) == kernel_dimension(d) + 1,
                      [&] { return "D=" + str(d) + ": killing_dimension(1) != dim Ker D + 1"; });
    out.check.require(alg.killing_space_structured(1).dimension() == kernel_dimension(d) + 1,
                      [&] { return "D=" + str(d) + ": structured space dimension != dim Ker D + 1"; });
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "20 random skew D, max deviation %.2e", worst);
  out.summary = buf;
  return out;
}

Outcome curvature_obstruction() {
  Outcome out;
  oracle::Random rng(kSeed + 8);
  std::size_t cases = 0;
  for (const Scalar& lambda : {Scalar(1), Scalar(1, 2), Scalar(-2)})
    for (std::size_t n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 3; ++trial, ++cases) {
        const Endomorphism d = lambda * Endomorphism::identity(n) + rng.skew(n);
        const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(d);
        const ObstructionReport report = metric_obstruction(alg);
        out.check.require(report.d_of_lh == alg.L_h() * (Scalar(2) * lambda) && report.d_of_lh_factor == Scalar(2) * lambda,
                          [&] { return "D=" + str(d) + ": D(L_h) != 2 lambda L_h"; });
        out.check.require(report.residual_max > 0, [&] { return "D=" + str(d) + ": residual vanished"; });
        out.check.require(left_invariant_killing_vectors(alg).dimension() == 0,
                          [&] { return "D=" + str(d) + ": left-invariant Killing vectors exist"; });
      }
  const AlmostAbelianAlgebra hyp = AlmostAbelianAlgebra::build(Endomorphism::identity(2));
  const ObstructionReport report = metric_obstruction(hyp);
  const double expected = std::exp(-2.0) - 1.0;
  const double got = static_cast<double>(report.residual.coefficient(MultiIndex({1, 1})));
  out.check.require(std::abs(got - expected) < kResidualTol,
                    [&] { return "D=Id residual " + std::to_string(got) + ", expected " + std::to_string(expected); });
  out.check.require(left_invariant_killing_vectors(hyp).dimension() == 0, [] { return "D=Id has Killing vectors"; });
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cases, D=Id residual %.12f (expected %.12f)", cases, got, expected);
  out.summary = buf;
  return out;
}

Outcome derivation_solver(const std::vector<oracle::SuiteCase>& suite) {
  Outcome out;
  const auto dimension = [](const Endomorphism& d) { return solve_skew_derivations(AlmostAbelianAlgebra::build(d)).size(); };
  out.check.require(dimension(Endomorphism::from_rows(Rows{{0, -1}, {1, 0}})) == 1, [] { return "D=J: dimension != 1"; });
  out.check.require(dimension(Endomorphism::from_rows(Rows{{1, 0}, {0, -1}})) == 0, [] { return "D=diag(1,-1): dimension != 0"; });
  out.check.require(dimension(Endomorphism(2)) == 3, [] { return "D=0: dimension != 3"; });
  std::size_t elements = 0;
  for (const auto& c : suite) {
    const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(c.d);
    const auto split = solve_skew_derivations(alg);
    const auto general = solve_skew_derivations(alg.algebra());
    out.check.require(split.size() == general.size(), [&] { return c.name + ": split and general solvers disagree"; });
    for (const auto& t : split) {
      ++elements;
      out.check.require(t.full().is_skew() && derivation_identity(alg.algebra(), t.full()),
                        [&] { return c.name + ": element is not a skew derivation"; });
    }
    for (const auto& t : general)
      out.check.require(t.is_skew() && derivation_identity(alg.algebra(), t),
                        [&] { return c.name + ": general element is not a skew derivation"; });
  }
  out.summary = "hand cases J/diag/0 and " + std::to_string(elements) + " suite elements";
  return out;
}

}  // namespace
}  // namespace skt

int main() {
  using namespace skt;
  const std::vector<oracle::SuiteCase> suite = oracle::derivation_suite();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", [&] { return oracle_equivalence(suite); }},
      {"odd-part vanishing", [&] { return odd_part_vanishing(suite); }},
      {"division by L", [] { return division_by_l(); }},
      {"operator identities", [&] { return operator_identities(suite); }},
      {"Gram norms", [] { return gram_norms(); }},
      {"decomposability", [&] { return decomposability(suite); }},
      {"flat case", [] { return flat_case(); }},
      {"curvature obstruction", [] { return curvature_obstruction(); }},
      {"derivation solver", [&] { return derivation_solver(suite); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.check.require(false, [&] { return std::string("exception: ") + e.what(); });
    }
    const bool ok = out.check.ok();
    failed += ok ? 0 : 1;
    std::printf("%s %zu %s: %s (%zu checks)%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, out.summary.c_str(),
                out.check.checks(), ok ? "" : "; first failure: ", ok ? "" : out.check.failure().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
