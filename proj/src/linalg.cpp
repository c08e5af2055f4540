#include "cbs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()) + " differ");
  }
}

double max_abs_entry(const ComplexMatrix& m) {
  double out = 0.0;
  for (const Complex& z : m.data()) out = std::max(out, std::abs(z));
  return out;
}

// All-ones plus a fixed perturbation from the fractional parts of multiples of
// irrational constants. `variant` selects a different perturbation.
CVector start_vector(std::size_t dim, int variant) {
  constexpr double golden = 0.6180339887498949;
  constexpr double sqrt2 = 1.4142135623730951;
  CVector v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double t = static_cast<double>(k + 1) * (1.0 + variant);
    const double re = t * golden - std::floor(t * golden);
    const double im = t * sqrt2 - std::floor(t * sqrt2);
    v[k] = Complex(1.0 + 0.5 * re, 0.25 * im);
  }
  const double n = norm(v);
  for (Complex& z : v) z /= n;
  return v;
}

void normalize(CVector& v, double n) {
  for (Complex& z : v) z /= n;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<CVector>& rows) {
  const std::size_t d = rows.size();
  if (d == 0) throw DimensionMismatch("from_rows: empty matrix");
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) {
      throw DimensionMismatch("from_rows: row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(d));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool ComplexMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z == 0.0; });
}

double ComplexMatrix::frobenius_norm() const noexcept {
  const double scale = max_abs_entry(*this);
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const Complex& z : data_) sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (Complex& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

// ---------------------------------------------------------------------------
// Products

ComplexMatrix adjoint(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t d = a.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix matmul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul_adjoint");
  const std::size_t d = a.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += a(i, k) * std::conj(b(j, k));
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) {
  const std::size_t d = h.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    out(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

CVector matvec(const ComplexMatrix& m, std::span<const Complex> x) {
  if (x.size() != m.dim()) {
    throw DimensionMismatch("matvec: vector length " + std::to_string(x.size()) +
                            " does not match dimension " + std::to_string(m.dim()));
  }
  const std::size_t d = m.dim();
  CVector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("inner: lengths " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()) + " differ");
  }
  Complex acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * std::conj(y[k]);
  return acc;
}

double norm(std::span<const Complex> x) {
  double scale = 0.0;
  for (const Complex& z : x) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const Complex& z : x) sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Jacobi

namespace {

// Cyclic Jacobi on a Hermitian `h`, in place. On return the diagonal holds the
// eigenvalues. If `vecs` is given it is overwritten with the eigenvectors as
// columns, in diagonal order.
void jacobi_in_place(ComplexMatrix& h, double tol, ComplexMatrix* vecs) {
  const std::size_t d = h.dim();
  const double fro = h.frobenius_norm();
  const double threshold = std::max(tol, std::numeric_limits<double>::epsilon()) * fro;
  if (vecs) *vecs = ComplexMatrix::identity(d);

  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) sum += std::norm(h(i, j));
    return std::sqrt(sum);
  };

  constexpr int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps && fro > 0.0; ++sweep) {
    if (off_norm() <= threshold) break;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex hpq = h(p, q);
        const double g = std::abs(hpq);
        if (g == 0.0) continue;
        const double a = h(p, p).real();
        const double b = h(q, q).real();
        const Complex phase = hpq / g;  // e^{i phi}
        const double theta = (b - a) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // H <- U^H H U with U = diag(1, e^{-i phi}) * real rotation on (p, q).
        const Complex back = std::conj(phase);
        for (std::size_t k = 0; k < d; ++k) {
          const Complex x = h(k, p);
          const Complex y = h(k, q);
          h(k, p) = c * x - s * back * y;
          h(k, q) = s * x + c * back * y;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Complex x = h(p, k);
          const Complex y = h(q, k);
          h(p, k) = c * x - s * phase * y;
          h(q, k) = s * x + c * phase * y;
        }
        h(p, p) = a - t * g;
        h(q, q) = b + t * g;
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        if (vecs) {
          ComplexMatrix& v = *vecs;
          for (std::size_t k = 0; k < d; ++k) {
            const Complex x = v(k, p);
            const Complex y = v(k, q);
            v(k, p) = c * x - s * back * y;
            v(k, q) = s * x + c * back * y;
          }
        }
      }
    }
  }
}

// Rayleigh-Ritz on the Krylov space spanned by v, Hv, H^2 v, ... Returns the
// unit Ritz vector for the largest Ritz value. Used when plain power
// iteration crawls because the top two eigenvalues nearly coincide.
CVector ritz_polish(const ComplexMatrix& h, const CVector& v) {
  const std::size_t d = h.dim();
  const std::size_t max_basis = std::min<std::size_t>(d, 64);
  std::vector<CVector> q{v};
  std::vector<CVector> hq;
  while (true) {
    hq.push_back(matvec(h, q.back()));
    if (q.size() == max_basis) break;
    CVector w = hq.back();
    const double start = norm(w);
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVector& b : q) {
        const Complex c = inner(w, b);
        for (std::size_t k = 0; k < d; ++k) w[k] -= c * b[k];
      }
    }
    const double wn = norm(w);
    if (!(wn > 1e-10 * start)) break;  // invariant subspace reached
    normalize(w, wn);
    q.push_back(std::move(w));
  }

  const std::size_t m = q.size();
  ComplexMatrix t(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t(i, j) = inner(hq[j], q[i]);
  t = hermitian_part(t);
  ComplexMatrix vecs(m);
  jacobi_in_place(t, 1e-15, &vecs);

  std::size_t top = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (t(i, i).real() > t(top, top).real()) top = i;
  CVector out(d);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t r = 0; r < d; ++r) out[r] += vecs(k, top) * q[k][r];
  normalize(out, norm(out));
  return out;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h_in, double tol) {
  if (!h_in.all_finite()) throw NonFinite("jacobi_eigenvalues: matrix has non-finite entries");
  ComplexMatrix h = hermitian_part(h_in);
  jacobi_in_place(h, tol, nullptr);
  std::vector<double> eig(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) eig[i] = h(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

// ---------------------------------------------------------------------------
// Spectral norm

SpectralNormResult spectral_norm(const ComplexMatrix& m, const SpectralNormOptions& opts) {
  return spectral_norm(m, opts.tol, opts.max_iter);
}

SpectralNormResult spectral_norm(const ComplexMatrix& m, double tol, int max_iter) {
  if (!(tol > 0.0)) throw InvalidSpec("spectral_norm: tol must be positive");
  if (max_iter < 1) throw InvalidSpec("spectral_norm: max_iter must be >= 1");
  if (!m.all_finite()) throw NonFinite("spectral_norm: matrix has non-finite entries");

  const double scale = max_abs_entry(m);
  if (scale == 0.0) return {0.0, 0, 0.0};

  ComplexMatrix scaled = m;
  scaled *= 1.0 / scale;
  const ComplexMatrix h = matmul(adjoint(scaled), scaled);
  ComplexMatrix work = h;
  work *= 1.0 / work.frobenius_norm();

  constexpr int window = 32;
  constexpr int max_squarings = 8;
  constexpr int max_ritz_steps = 4;
  int squarings = 0;
  int ritz_steps = 0;
  int variant = 0;

  CVector v = start_vector(m.dim(), variant);
  CVector best_v = v;
  double best_residual = std::numeric_limits<double>::infinity();
  double window_start_residual = best_residual;

  for (int iter = 1; iter <= max_iter; ++iter) {
    CVector w = matvec(work, v);
    double wn = norm(w);
    if (wn == 0.0) {
      // Start vector landed in the null space of the working matrix.
      v = start_vector(m.dim(), ++variant);
      continue;
    }
    normalize(w, wn);
    v = std::move(w);

    const CVector hv = matvec(h, v);
    const double lambda = inner(hv, v).real();
    double residual = std::numeric_limits<double>::infinity();
    if (lambda > 0.0) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) r2 += std::norm(hv[k] - lambda * v[k]);
      residual = std::sqrt(r2) / lambda;
    }
    if (residual < best_residual) {
      best_residual = residual;
      best_v = v;
    }
    if (residual <= tol) {
      return {scale * norm(matvec(scaled, v)), iter, residual};
    }
    if (iter % window == 0) {
      if (!(best_residual < 0.5 * window_start_residual) && ritz_steps < max_ritz_steps) {
        ++ritz_steps;
        v = ritz_polish(h, best_v);
      }
      if (!(best_residual < 0.5 * window_start_residual) && squarings < max_squarings) {
        work = matmul(work, work);
        const double fn = work.frobenius_norm();
        if (fn > 0.0) {
          work *= 1.0 / fn;
          ++squarings;
        } else {
          work = h;
          work *= 1.0 / work.frobenius_norm();
        }
      }
      window_start_residual = best_residual;
    }
  }
  const double estimate = scale * norm(matvec(scaled, best_v));
  throw NoConvergence("spectral_norm: residual " + std::to_string(best_residual) +
                          " above tolerance after " + std::to_string(max_iter) + " iterations",
                      estimate, best_residual, max_iter);
}

double opnorm(const ComplexMatrix& m) { return spectral_norm(m).value; }

double hermitian_deviation(const ComplexMatrix& h) noexcept {
  double dev = 0.0;
  const std::size_t d = h.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) dev = std::max(dev, std::abs(h(i, j) - std::conj(h(j, i))));
  return dev;
}

double hermitian_eigen_min(const ComplexMatrix& h, double tol) {
  if (!h.all_finite()) throw NonFinite("hermitian_eigen_min: matrix has non-finite entries");
  const double dev = hermitian_deviation(h);
  if (dev > tol * h.frobenius_norm()) {
    throw NotHermitian("hermitian_eigen_min: deviation " + std::to_string(dev) +
                       " exceeds tol * ||H||");
  }
  return jacobi_eigenvalues(h).front();
}

bool is_psd(const ComplexMatrix& h, double tol) {
  if (!h.all_finite()) throw NonFinite("is_psd: matrix has non-finite entries");
  const double dev = hermitian_deviation(h);
  if (dev > tol * h.frobenius_norm()) {
    throw NotHermitian("is_psd: deviation " + std::to_string(dev) + " exceeds tol * ||H||");
  }
  const std::vector<double> eig = jacobi_eigenvalues(h);
  const double spectral = std::max(std::abs(eig.front()), std::abs(eig.back()));
  return eig.front() >= -tol * std::max(1.0, spectral);
}

ComplexMatrix gram(const std::vector<CVector>& vectors) {
  if (vectors.empty()) throw DimensionMismatch("gram: empty vector list");
  const std::size_t d = vectors.front().size();
  for (const CVector& y : vectors) {
    if (y.size() != d) throw DimensionMismatch("gram: vectors have different lengths");
  }
  const std::size_t n = vectors.size();
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = inner(vectors[i], vectors[i]).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = inner(vectors[i], vectors[j]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

}  // namespace cbs
