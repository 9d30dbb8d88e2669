#include "skt/curvature.hpp"

namespace skt {

std::string to_string(CurvatureTag tag) {
  switch (tag) {
    case CurvatureTag::Flat: return "flat";
    case CurvatureTag::ConstantNegative: return "constant_negative";
    case CurvatureTag::NotConstant: return "not_constant";
  }
  return "unknown";
}

CurvatureClass classify(const AlmostAbelianAlgebra& alg) {
  const Endomorphism& d = alg.derivation();
  const Endomorphism sym = d.symmetric_part();
  CurvatureClass out;
  out.skew_part = d.skew_part();
  out.lambda = 0;
  if (sym.is_zero()) {
    out.tag = CurvatureTag::Flat;
    return out;
  }
  const Scalar lambda = sym(0, 0);
  if (sym == lambda * Endomorphism::identity(d.dim())) {
    out.tag = CurvatureTag::ConstantNegative;
    out.lambda = lambda;
  }
  return out;
}

Certificate flat_metric_certificate(const AlmostAbelianAlgebra& alg) {
  if (classify(alg).tag != CurvatureTag::Flat) throw Error("flat_metric_certificate: algebra is not flat");
  Certificate cert{alg.L(), {}};
  cert.terms.push_back({1, {LeftInvariant{alg.b_vector()}, LeftInvariant{alg.b_vector()}}});
  for (std::size_t i = 1; i <= alg.n(); ++i)
    cert.terms.push_back({1, {RightInvariant{alg.h_vector(i)}, RightInvariant{alg.h_vector(i)}}});
  return cert;
}

KillingSpace left_invariant_killing_vectors(const AlmostAbelianAlgebra& alg) {
  return alg.killing_space_structured(1);
}

ObstructionReport metric_obstruction(const AlmostAbelianAlgebra& alg, double tol, std::size_t order_floor) {
  const CurvatureClass cls = classify(alg);
  if (cls.tag != CurvatureTag::ConstantNegative)
    throw Error("metric_obstruction: algebra does not have constant nonzero curvature");
  ObstructionReport report;
  report.lambda = cls.lambda;
  const SymTensor lh = alg.L_h();
  report.d_of_lh = apply_derivation(alg.derivation_extended(), lh);
  // D(L_h) is a multiple of L_h; read the factor off h_1^2.
  report.d_of_lh_factor = report.d_of_lh.coefficient(MultiIndex({1, 1}));
  report.d_of_lh_matches = report.d_of_lh == lh * report.d_of_lh_factor &&
                           report.d_of_lh == s_of(alg.derivation_extended()) * Scalar(4) &&
                           report.d_of_lh_factor == 2 * cls.lambda;

  Certificate candidate{lh, {}};
  for (std::size_t i = 1; i <= alg.n(); ++i)
    candidate.terms.push_back({1, {RightInvariant{alg.h_vector(i)}, RightInvariant{alg.h_vector(i)}}});
  RealVector w(alg.dim(), Real(0));
  w[0] = 1;
  report.order = omega_order(alg, candidate, w, tol, order_floor);
  report.residual = omega_tensor(alg, candidate, w, report.order);
  report.residual -= NumTensor(lh);
  report.residual_max = static_cast<double>(report.residual.max_abs());
  report.no_algebraic_expression = report.d_of_lh_factor != 0 && report.residual_max > 0;
  return report;
}

}  // namespace skt
