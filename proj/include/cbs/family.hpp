#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cbs/linalg.hpp"

namespace cbs {

/// Complex weights alpha_1..alpha_n. All entries finite (NonFinite otherwise).
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<Complex> weights);
  WeightVector(std::initializer_list<Complex> weights)
      : WeightVector(std::vector<Complex>(weights)) {}

  std::size_t size() const noexcept { return weights_.size(); }
  const Complex& operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const Complex> values() const noexcept { return weights_; }

  /// |alpha_i|
  std::vector<double> moduli() const;

  WeightVector scaled(Complex c) const;

 private:
  std::vector<Complex> weights_;
};

/// The norm data every bound is computed from: ||A_i|| and the n x n table
/// ||A_i A_j^*||. Produced either from matrices (OperatorFamily) or from a
/// Gram matrix (VectorFamily) without materializing operators.
struct NormProfile {
  std::vector<double> norms;
  std::vector<double> cross;  // row-major n x n

  std::size_t size() const noexcept { return norms.size(); }
  double cross_at(std::size_t i, std::size_t j) const noexcept { return cross[i * norms.size() + j]; }
  /// max_{i != j} ||A_i A_j^*||, 0 when n == 1.
  double max_offdiag() const noexcept;
};

/// Same-dimension operators A_1..A_n with cached spectral norms.
class OperatorFamily {
 public:
  /// Throws DimensionMismatch for an empty list or mixed dimensions,
  /// NonFinite for NaN/Inf entries.
  explicit OperatorFamily(std::vector<ComplexMatrix> ops, const SpectralNormOptions& opts = {});

  std::size_t size() const noexcept { return ops_.size(); }
  std::size_t dim() const noexcept { return ops_.front().dim(); }
  const ComplexMatrix& operator[](std::size_t i) const noexcept { return ops_[i]; }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }

  double norm(std::size_t i) const noexcept { return profile_.norms[i]; }
  double cross(std::size_t i, std::size_t j) const noexcept { return profile_.cross_at(i, j); }
  const NormProfile& profile() const noexcept { return profile_; }

  /// sum_i alpha_i A_i. Throws DimensionMismatch on a length mismatch.
  ComplexMatrix weighted_sum(const WeightVector& alpha) const;

  OperatorFamily scaled(Complex c) const;
  /// New family whose i-th operator is the perm[i]-th of this one.
  OperatorFamily permuted(std::span<const std::size_t> perm) const;

 private:
  std::vector<ComplexMatrix> ops_;
  NormProfile profile_;
};

/// Throws DimensionMismatch unless alpha and the family have the same length.
void require_same_length(const WeightVector& alpha, std::size_t n, const char* op);

}  // namespace cbs
