#include "cbs/inequality.hpp"

#include <algorithm>
#include <cmath>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

double weight_mass(const WeightVector& z) {
  double sum = 0.0;
  for (const Complex& w : z.values()) sum += std::norm(w);
  return sum;
}

ComplexMatrix gram_sum(const OperatorFamily& a) {
  ComplexMatrix sum(a.dim());
  for (const ComplexMatrix& op : a.ops()) sum += matmul_adjoint(op, op);
  return sum;
}

}  // namespace

PsdGapResult cbs_operator_gap(const WeightVector& z, const OperatorFamily& a, double tol) {
  require_same_length(z, a.size(), "cbs_operator_gap");
  if (!(tol > 0.0)) throw InvalidSpec("cbs_operator_gap: tol must be positive");

  const ComplexMatrix s = a.weighted_sum(z);
  const ComplexMatrix inner_factor = hermitian_part(matmul_adjoint(s, s));
  ComplexMatrix outer = gram_sum(a);
  outer *= weight_mass(z);

  PsdGapResult out;
  out.gap = hermitian_part(outer - inner_factor);

  const std::vector<double> eig = jacobi_eigenvalues(out.gap);
  out.min_eigenvalue = eig.front();
  out.gap_norm = std::max(std::abs(eig.front()), std::abs(eig.back()));
  out.holds = out.min_eigenvalue >= -tol * std::max(1.0, out.gap_norm);

  const std::vector<double> inner_eig = jacobi_eigenvalues(inner_factor);
  out.inner_min_eigenvalue = inner_eig.front();
  const double inner_norm = std::max(std::abs(inner_eig.front()), std::abs(inner_eig.back()));
  out.inner_psd = out.inner_min_eigenvalue >= -tol * std::max(1.0, inner_norm);
  return out;
}

NormCheck cbs_norm_check(const WeightVector& z, const OperatorFamily& a) {
  require_same_length(z, a.size(), "cbs_norm_check");
  NormCheck out;
  const double s = opnorm(a.weighted_sum(z));
  out.lhs = s * s;
  out.rhs = weight_mass(z) * opnorm(gram_sum(a));
  out.holds = out.lhs <= out.rhs * (1.0 + kNormCheckTol);
  return out;
}

}  // namespace cbs
