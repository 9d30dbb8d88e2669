#include "oracles.hpp"

#include "skt/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace skt {
namespace {

Real factorial(std::size_t n) {
  Real f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= Real(k);
  return f;
}

TEST(SeriesOrder, SmallestOrderMeetingTheBound) {
  for (const double norm : {0.0, 0.5, 1.0, 3.0, 7.5, 20.0}) {
    const std::size_t n = series_order(Real(norm), 1e-9, 12);
    EXPECT_GE(n, 12u);
    EXPECT_LT(pow(Real(norm), n + 1) / factorial(n + 1), Real(1e-10));
    if (n > 12) EXPECT_GE(pow(Real(norm), n) / factorial(n), Real(1e-10));
  }
  EXPECT_EQ(series_order(Real(0), 1e-9, 12), 12u);
  EXPECT_EQ(series_order(Real(0), 1e-9, 0), 0u);
}

TEST(SeriesOrder, AmplifiedTailBound) {
  for (const double norm : {0.5, 2.0, 9.0}) {
    const std::size_t base = series_order(Real(norm), 1e-9, 12);
    const std::size_t raised = series_order(Real(norm), 1e-9, 12, Real(1e6));
    EXPECT_GE(raised, base);
    Real tail = 0;
    for (std::size_t k = raised + 1; k < raised + 400; ++k) tail += pow(Real(norm), k) / factorial(k);
    EXPECT_LT(Real(1e6) * tail, Real(1e-10));
  }
  EXPECT_EQ(series_order(Real(1), 1e-9, 12, Real(0)), series_order(Real(1), 1e-9, 12));
}

TEST(ExpSeries, AgreesWithEigen) {
  oracle::Random rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 3));
    const Endomorphism a = rng.matrix(n, oracle::Kind::Generic);
    const RealMatrix exact(a);
    const RealMatrix series = exp_series(exact, series_order(exact.one_norm(), 1e-12, 12));
    const Eigen::MatrixXd reference = oracle::expm(a, -1.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        EXPECT_NEAR(static_cast<double>(series(r, c)),
                    reference(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)),
                    1e-9 * (1 + std::abs(reference(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)))));
  }
}

TEST(RealMatrix, OneNormIsMaxColumnSum) {
  const Endomorphism a = Endomorphism::from_rows({{1, -4}, {-2, 1}});
  EXPECT_EQ(RealMatrix(a).one_norm(), Real(5));
  EXPECT_EQ(RealMatrix::identity(3).one_norm(), Real(1));
}

TEST(NumTensor, MirrorsExactArithmetic) {
  oracle::Random rng(72);
  for (int trial = 0; trial < 30; ++trial) {
    const SymTensor a = rng.tensor(3, 2, 4);
    const SymTensor b = rng.tensor(3, 1, 3);
    const NumTensor product = NumTensor(a) * NumTensor(b);
    NumTensor diff = product;
    diff -= NumTensor(a * b);
    EXPECT_LT(diff.max_abs(), Real(1e-40));
    NumTensor sum(a);
    sum += NumTensor(a);
    sum *= Real(0.5);
    sum -= NumTensor(a);
    EXPECT_LT(sum.max_abs(), Real(1e-40));
  }
  const NumTensor v = NumTensor::from_vector({Real(1), Real(0), Real(-2)});
  EXPECT_EQ(v.coefficient(MultiIndex({2})), Real(-2));
  EXPECT_EQ(v.terms().size(), 2u);
  EXPECT_EQ(NumTensor::constant(3, Real(0)).terms().size(), 0u);
}

TEST(NumTensor, GroupActionMatchesExact) {
  oracle::Random rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const Endomorphism a = rng.matrix(3, oracle::Kind::Generic);
    if (a.determinant() == 0) continue;
    const SymTensor k = rng.tensor(3, 3, 4);
    NumTensor diff = act_group(RealMatrix(a), k);
    diff -= NumTensor(act_group(a, k));
    EXPECT_LT(diff.max_abs(), Real(1e-40));
  }
}

}  // namespace
}  // namespace skt
