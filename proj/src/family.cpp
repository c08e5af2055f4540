#include "cbs/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbs/errors.hpp"

namespace cbs {

WeightVector::WeightVector(std::vector<Complex> weights) : weights_(std::move(weights)) {
  for (const Complex& z : weights_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFinite("WeightVector: non-finite weight");
    }
  }
}

std::vector<double> WeightVector::moduli() const {
  std::vector<double> out(weights_.size());
  std::transform(weights_.begin(), weights_.end(), out.begin(),
                 [](const Complex& z) { return std::abs(z); });
  return out;
}

WeightVector WeightVector::scaled(Complex c) const {
  std::vector<Complex> out = weights_;
  for (Complex& z : out) z *= c;
  return WeightVector(std::move(out));
}

double NormProfile::max_offdiag() const noexcept {
  double out = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out = std::max(out, cross_at(i, j));
  return out;
}

void require_same_length(const WeightVector& alpha, std::size_t n, const char* op) {
  if (alpha.size() != n) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(alpha.size()) +
                            " weights for " + std::to_string(n) + " operators");
  }
}

OperatorFamily::OperatorFamily(std::vector<ComplexMatrix> ops, const SpectralNormOptions& opts)
    : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionMismatch("OperatorFamily: empty family");
  const std::size_t d = ops_.front().dim();
  if (d == 0) throw DimensionMismatch("OperatorFamily: zero-dimensional operator");
  for (const ComplexMatrix& a : ops_) {
    if (a.dim() != d) throw DimensionMismatch("OperatorFamily: operators of mixed dimension");
    if (!a.all_finite()) throw NonFinite("OperatorFamily: non-finite operator entry");
  }

  const std::size_t n = ops_.size();
  profile_.norms.resize(n);
  profile_.cross.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) profile_.norms[i] = spectral_norm(ops_[i], opts).value;
  // ||A_j A_i^*|| = ||(A_i A_j^*)^*||, so the table is filled symmetrically.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double c = spectral_norm(matmul_adjoint(ops_[i], ops_[j]), opts).value;
      profile_.cross[i * n + j] = c;
      profile_.cross[j * n + i] = c;
    }
  }
}

ComplexMatrix OperatorFamily::weighted_sum(const WeightVector& alpha) const {
  require_same_length(alpha, size(), "weighted_sum");
  ComplexMatrix sum(dim());
  for (std::size_t i = 0; i < size(); ++i) sum += alpha[i] * ops_[i];
  return sum;
}

OperatorFamily OperatorFamily::scaled(Complex c) const {
  std::vector<ComplexMatrix> out = ops_;
  for (ComplexMatrix& a : out) a *= c;
  return OperatorFamily(std::move(out));
}

OperatorFamily OperatorFamily::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != size()) throw DimensionMismatch("permuted: permutation length mismatch");
  std::vector<ComplexMatrix> out;
  out.reserve(size());
  for (std::size_t idx : perm) out.push_back(ops_.at(idx));
  return OperatorFamily(std::move(out));
}

}  // namespace cbs
