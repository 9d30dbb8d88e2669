#pragma once

// Constant sectional curvature of almost abelian metric Lie algebras. The
// metric has constant curvature exactly when D = lambda Id + A with A skew,
// and is flat when lambda = 0; this criterion is taken as the definition.

#include "skt/almostab.hpp"
#include "skt/decomp.hpp"

#include <string>

namespace skt {

enum class CurvatureTag { Flat, ConstantNegative, NotConstant };

std::string to_string(CurvatureTag tag);

struct CurvatureClass {
  CurvatureTag tag = CurvatureTag::NotConstant;
  /// lambda for ConstantNegative, 0 for Flat.
  Scalar lambda;
  /// Skew part of D.
  Endomorphism skew_part{0};
};

CurvatureClass classify(const AlmostAbelianAlgebra& alg);

/// L = b^2 + sum_i xi_{h_i}^2 with b left-invariant; requires a flat algebra.
Certificate flat_metric_certificate(const AlmostAbelianAlgebra& alg);

/// Degree-1 Killing tensors: Ker D, plus R b when D is skew.
KillingSpace left_invariant_killing_vectors(const AlmostAbelianAlgebra& alg);

struct ObstructionReport {
  Scalar lambda;
  /// D(L_h), computed as 4 S_D.
  SymTensor d_of_lh{0, 2};
  /// The exact scalar c with D(L_h) = c L_h (c = 2 lambda).
  Scalar d_of_lh_factor;
  bool d_of_lh_matches = false;
  /// Omega of sum_i xi_{h_i}^2 at w = b, minus L_h.
  NumTensor residual{0, 2};
  double residual_max = 0;
  std::size_t order = 0;
  bool no_algebraic_expression = false;
};

/// Requires a ConstantNegative algebra.
ObstructionReport metric_obstruction(const AlmostAbelianAlgebra& alg, double tol = 1e-9, std::size_t order_floor = 12);

}  // namespace skt
