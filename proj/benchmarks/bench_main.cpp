#include "skt/almostab.hpp"
#include "skt/decomp.hpp"
#include "skt/symalg.hpp"

#include <benchmark/benchmark.h>

namespace {

using skt::AlmostAbelianAlgebra;
using skt::Endomorphism;
using skt::Scalar;
using skt::SymTensor;

// A fixed generic 3x3 derivation with a one-dimensional kernel.
Endomorphism generic_d() {
  return Endomorphism::from_rows({{1, Scalar(1, 2), 0}, {0, -1, 2}, {0, 0, 0}});
}

Endomorphism rotation_d() { return Endomorphism::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}); }

SymTensor dense(std::size_t dim, std::size_t degree) {
  SymTensor t(dim, degree);
  const skt::MonomialBasis basis(dim, degree);
  for (std::size_t i = 0; i < basis.size(); ++i) t.add_term(basis[i], Scalar(static_cast<long>(i % 5) - 2, 1 + i % 3));
  return t;
}

void BM_KillingSpaceBruteforce(benchmark::State& state) {
  const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(generic_d());
  const auto degree = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(alg.algebra().killing_space_bruteforce(degree));
}
BENCHMARK(BM_KillingSpaceBruteforce)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_KillingSpaceStructured(benchmark::State& state) {
  const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(generic_d());
  const auto degree = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(alg.killing_space_structured(degree));
}
BENCHMARK(BM_KillingSpaceStructured)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_SymMul(benchmark::State& state) {
  const auto degree = static_cast<std::size_t>(state.range(0));
  const SymTensor a = dense(4, degree), b = dense(4, degree);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SymMul)->DenseRange(1, 4);

void BM_KillingOperator(benchmark::State& state) {
  const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(generic_d());
  const SymTensor k = dense(4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(alg.algebra().killing_operator(k));
}
BENCHMARK(BM_KillingOperator)->DenseRange(1, 4);

void BM_Decompose(benchmark::State& state) {
  const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(rotation_d());
  const auto degree = static_cast<std::size_t>(state.range(0));
  SymTensor k(alg.dim(), degree);
  for (const auto& t : alg.killing_space_structured(degree).basis) k += t;
  for (auto _ : state) benchmark::DoNotOptimize(skt::decompose(alg, k));
}
BENCHMARK(BM_Decompose)->DenseRange(2, 4);

void BM_VerifyCertificate(benchmark::State& state) {
  const AlmostAbelianAlgebra alg = AlmostAbelianAlgebra::build(rotation_d());
  const auto degree = static_cast<std::size_t>(state.range(0));
  SymTensor k(alg.dim(), degree);
  for (const auto& t : alg.killing_space_structured(degree).basis) k += t;
  const skt::Certificate cert = skt::decompose(alg, k);
  for (auto _ : state) benchmark::DoNotOptimize(skt::verify_certificate(alg, cert));
}
BENCHMARK(BM_VerifyCertificate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
