#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cbs {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);  // zero-filled

  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
  /// Throws DimensionMismatch unless `rows` is square and nonempty.
  static ComplexMatrix from_rows(const std::vector<CVector>& rows);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  bool all_finite() const noexcept;
  bool is_zero() const noexcept;
  double frobenius_norm() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// Throws DimensionMismatch when the dimensions differ.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// a * b^H, the shape that appears in every cross term.
ComplexMatrix matmul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);

/// (H + H^H) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& h);

CVector matvec(const ComplexMatrix& m, std::span<const Complex> x);

/// Standard inner product, linear in the first slot and conjugate-linear in the second.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);

// ---------------------------------------------------------------------------
// Spectral norm

struct SpectralNormOptions {
  double tol = 1e-12;
  int max_iter = 10000;
};

struct SpectralNormResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Largest singular value of `m` by power iteration on m^H m.
///
/// The start vector is the all-ones vector with a fixed irrational
/// perturbation, so results are deterministic. The residual is the relative
/// eigen-residual ||Hv - lambda v|| / lambda of the Hermitian form. When the
/// iteration stagnates the current vector is refined by a Rayleigh-Ritz step
/// on its Krylov space and the working matrix is squared, which squares the
/// ratio between the top two eigenvalues while keeping the top eigenvector.
///
/// Throws NoConvergence (carrying the best estimate) if the residual is still
/// above `tol` after `max_iter` iterations, InvalidSpec on bad options and
/// NonFinite on NaN/Inf entries.
SpectralNormResult spectral_norm(const ComplexMatrix& m, double tol, int max_iter);
SpectralNormResult spectral_norm(const ComplexMatrix& m, const SpectralNormOptions& opts = {});

/// Shorthand for spectral_norm(m).value with default options.
double opnorm(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Hermitian eigenvalues

/// Ascending eigenvalues of (H + H^H)/2 by cyclic Jacobi sweeps.
/// No Hermitian pre-check; sweeps stop once the off-diagonal Frobenius mass
/// falls below `tol` times the Frobenius norm.
std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h, double tol = 1e-15);

/// Max entrywise |H - H^H|, the quantity checked against tol * ||H||.
double hermitian_deviation(const ComplexMatrix& h) noexcept;

/// Smallest eigenvalue of the Hermitian part of `h`.
/// Throws NotHermitian if max |H - H^H| exceeds tol * ||H||_F.
double hermitian_eigen_min(const ComplexMatrix& h, double tol = 1e-8);

/// min eigenvalue >= -tol * max(1, ||H||). Throws NotHermitian like hermitian_eigen_min.
bool is_psd(const ComplexMatrix& h, double tol = 1e-8);

/// G[i][j] = (y_i, y_j). Throws DimensionMismatch on ragged input or an empty list.
ComplexMatrix gram(const std::vector<CVector>& vectors);

}  // namespace cbs
