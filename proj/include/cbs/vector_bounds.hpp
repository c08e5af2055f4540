#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cbs/bounds.hpp"
#include "cbs/family.hpp"
#include "cbs/linalg.hpp"

namespace cbs {

/// Nonzero vectors y_1..y_n in C^d with their norms and Gram matrix.
class VectorFamily {
 public:
  /// Throws DimensionMismatch (empty or ragged), NonFinite, or ZeroVector.
  explicit VectorFamily(std::vector<CVector> vectors);

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dim() const noexcept { return vectors_.front().size(); }
  const CVector& operator[](std::size_t i) const noexcept { return vectors_[i]; }
  const std::vector<CVector>& vectors() const noexcept { return vectors_; }
  double norm(std::size_t i) const noexcept { return profile_.norms[i]; }
  const ComplexMatrix& gram() const noexcept { return gram_; }

  /// ||y_i|| and |(y_i, y_j)|: the norm profile of the rank-one family, read
  /// off the Gram matrix.
  const NormProfile& profile() const noexcept { return profile_; }

 private:
  std::vector<CVector> vectors_;
  ComplexMatrix gram_;
  NormProfile profile_;
};

/// A_i = y_i y_i^H / ||y_i||, i.e. A_i x = (x, y_i) / ||y_i|| * y_i.
ComplexMatrix rank_one_operator(std::span<const Complex> y);
OperatorFamily rank_one_family(const VectorFamily& y);

/// sum_i alpha_i (x, y_i) / ||y_i|| * y_i, evaluated with inner products only.
CVector weighted_projection(const WeightVector& alpha, const VectorFamily& y,
                            std::span<const Complex> x);

/// Checks ||A_i|| = ||y_i|| and ||A_i A_j|| = |(y_i, y_j)| on the materialized
/// family. Errors are measured relative to |(y_i, y_j)|, floored at
/// 1e-6 ||y_i|| ||y_j|| so exactly orthogonal pairs are compared absolutely.
bool verify_identities(const VectorFamily& y, double tol);

/// sup_{||x||=1} of the bounded quantity, i.e. ||sum alpha_i A_i||^2 on the
/// materialized sum. Used only for slack reporting.
double rank_one_lhs_norm_sq(const WeightVector& alpha, const VectorFamily& y);

/// Master bound from Gram data only, times x_norm_sq. The report's lhs_sq is
/// x_norm_sq * rank_one_lhs_norm_sq unless `lhs_sq` is supplied.
BoundReport theorem_bound(const WeightVector& alpha, const VectorFamily& y, double x_norm_sq,
                          const BoundConfig& config,
                          std::optional<double> lhs_sq = std::nullopt);

/// The six named bounds in catalog order: max_weight_total, holder_uniform_cross(p),
/// max_cross_uniform, l2_cross, l1_cross, power_mean_cross(r); each times x_norm_sq.
std::vector<BoundReport> particular_bounds(const WeightVector& alpha, const VectorFamily& y,
                                           double x_norm_sq, HolderPair hp, double r,
                                           std::optional<double> lhs_sq = std::nullopt);

/// Full Gram-path catalog (no orthogonal entries), times x_norm_sq.
std::vector<BoundReport> vector_bound_catalog(const WeightVector& alpha, const VectorFamily& y,
                                              double x_norm_sq, std::span<const double> grid,
                                              std::optional<double> lhs_sq = std::nullopt);

/// alpha_i = ||y_i||, turning the bounded quantity into ||sum (x, y_i) y_i||^2.
WeightVector bessel_weighting(const VectorFamily& y);

}  // namespace cbs
