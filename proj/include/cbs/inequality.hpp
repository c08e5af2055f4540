#pragma once

#include "cbs/family.hpp"
#include "cbs/linalg.hpp"

namespace cbs {

inline constexpr double kPsdTol = 1e-8;
inline constexpr double kNormCheckTol = 1e-9;

/// Operator-order CBS check:
///   (sum |z_i|^2)(sum A_i A_i^*) - (sum z_i A_i)(sum z_i A_i)^*  >= 0.
struct PsdGapResult {
  ComplexMatrix gap;        // symmetrized
  double min_eigenvalue = 0.0;
  double gap_norm = 0.0;    // ||gap||, max |eigenvalue|
  bool holds = false;       // min_eigenvalue >= -tol * max(1, ||gap||)
  double inner_min_eigenvalue = 0.0;
  bool inner_psd = false;   // the product (sum z_i A_i)(sum z_i A_i)^* is itself >= 0
};

/// Throws DimensionMismatch when z and A differ in length, InvalidSpec for tol <= 0.
PsdGapResult cbs_operator_gap(const WeightVector& z, const OperatorFamily& a,
                              double tol = kPsdTol);

struct NormCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = ||sum z_k A_k||^2, rhs = (sum |z_k|^2) ||sum A_k A_k^*||.
NormCheck cbs_norm_check(const WeightVector& z, const OperatorFamily& a);

}  // namespace cbs
