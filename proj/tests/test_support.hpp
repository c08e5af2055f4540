#pragma once

// Oracles and fixtures shared by the test suites. Nothing here calls into
// the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <vector>

#include "cbs/family.hpp"
#include "cbs/linalg.hpp"
#include "cbs/random.hpp"

namespace cbs::test {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Textbook triple loop.
inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t d = a.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out = std::max(out, std::abs(a(i, j) - b(i, j)));
  return out;
}

/// Unitary from classical Gram-Schmidt on a random matrix's columns.
inline ComplexMatrix unitary(Xoshiro256& rng, std::size_t d) {
  ComplexMatrix m = random_matrix(rng, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (std::size_t i = 0; i < d; ++i) m(i, j) -= proj * m(i, k);
    }
    double n = 0.0;
    for (std::size_t i = 0; i < d; ++i) n += std::norm(m(i, j));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < d; ++i) m(i, j) /= n;
  }
  return m;
}

/// U diag(eig) U^H: a Hermitian matrix with eigenvalues known by construction.
inline ComplexMatrix hermitian_with_spectrum(Xoshiro256& rng, const std::vector<double>& eig) {
  const std::size_t d = eig.size();
  const ComplexMatrix u = unitary(rng, d);
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += u(i, k) * eig[k] * std::conj(u(j, k));
      out(i, j) = acc;
    }
  return out;
}

/// Unit-norm standard basis vector.
inline CVector basis(std::size_t d, std::size_t k) {
  CVector e(d);
  e[k] = 1.0;
  return e;
}

/// P_k = e_k e_k^H for k < n, in dimension d.
inline std::vector<ComplexMatrix> basis_projections(std::size_t d, std::size_t n) {
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix p(d);
    p(k, k) = 1.0;
    out.push_back(p);
  }
  return out;
}

inline std::vector<ComplexMatrix> random_ops(Xoshiro256& rng, std::size_t d, std::size_t n) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < n; ++i) ops.push_back(random_matrix(rng, d));
  return ops;
}

inline WeightVector random_weights(Xoshiro256& rng, std::size_t n) {
  std::vector<Complex> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(rng.complex_normal());
  return WeightVector(std::move(w));
}

/// Sum of the weighted operators, written out independently of the library.
inline ComplexMatrix naive_weighted_sum(const WeightVector& alpha,
                                        const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix s(ops.front().dim());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t r = 0; r < s.dim(); ++r)
      for (std::size_t c = 0; c < s.dim(); ++c) s(r, c) += alpha[i] * ops[i](r, c);
  return s;
}

/// ||M||^2 as the top eigenvalue of M^H M from the Jacobi routine.
inline double jacobi_norm_sq(const ComplexMatrix& m) {
  return std::max(0.0, jacobi_eigenvalues(naive_matmul(naive_adjoint(m), m), 1e-16).back());
}

}  // namespace cbs::test
