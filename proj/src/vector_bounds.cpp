#include "cbs/vector_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

void check_x_norm_sq(double x_norm_sq) {
  if (!(x_norm_sq >= 0.0) || !std::isfinite(x_norm_sq)) {
    throw ValueError("x_norm_sq must be finite and nonnegative");
  }
}

BoundReport scaled(BoundReport r, double x_norm_sq, double lhs) {
  return make_report(lhs, x_norm_sq * r.bound, std::move(r.name), std::move(r.exponents),
                     r.config);
}

double resolve_lhs(const WeightVector& alpha, const VectorFamily& y, double x_norm_sq,
                   std::optional<double> lhs_sq) {
  return lhs_sq ? *lhs_sq : x_norm_sq * rank_one_lhs_norm_sq(alpha, y);
}

}  // namespace

VectorFamily::VectorFamily(std::vector<CVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw DimensionMismatch("VectorFamily: empty family");
  const std::size_t d = vectors_.front().size();
  if (d == 0) throw DimensionMismatch("VectorFamily: zero-length vector");
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    const CVector& y = vectors_[i];
    if (y.size() != d) throw DimensionMismatch("VectorFamily: vectors of mixed dimension");
    for (const Complex& z : y) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NonFinite("VectorFamily: non-finite entry");
      }
    }
    if (cbs::norm(y) == 0.0) throw ZeroVector("VectorFamily: vector " + std::to_string(i) + " is zero");
  }

  gram_ = cbs::gram(vectors_);
  const std::size_t n = vectors_.size();
  profile_.norms.resize(n);
  profile_.cross.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    profile_.norms[i] = cbs::norm(vectors_[i]);
    for (std::size_t j = 0; j < n; ++j) profile_.cross[i * n + j] = std::abs(gram_(i, j));
  }
}

ComplexMatrix rank_one_operator(std::span<const Complex> y) {
  const double n = norm(y);
  if (n == 0.0) throw ZeroVector("rank_one_operator: zero vector");
  const std::size_t d = y.size();
  ComplexMatrix a(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) a(r, c) = y[r] * std::conj(y[c]) / n;
  return a;
}

OperatorFamily rank_one_family(const VectorFamily& y) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(y.size());
  for (const CVector& v : y.vectors()) ops.push_back(rank_one_operator(v));
  return OperatorFamily(std::move(ops));
}

CVector weighted_projection(const WeightVector& alpha, const VectorFamily& y,
                            std::span<const Complex> x) {
  require_same_length(alpha, y.size(), "weighted_projection");
  if (x.size() != y.dim()) throw DimensionMismatch("weighted_projection: probe dimension mismatch");
  CVector out(y.dim());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Complex coeff = alpha[i] * inner(x, y[i]) / y.norm(i);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += coeff * y[i][k];
  }
  return out;
}

bool verify_identities(const VectorFamily& y, double tol) {
  const OperatorFamily a = rank_one_family(y);
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a.norm(i) - y.norm(i)) > tol * y.norm(i)) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = std::abs(y.gram()(i, j));
      const double got = opnorm(matmul(a[i], a[j]));
      const double scale = std::max(expected, 1e-6 * y.norm(i) * y.norm(j));
      if (std::abs(got - expected) > tol * scale) return false;
    }
  }
  return true;
}

double rank_one_lhs_norm_sq(const WeightVector& alpha, const VectorFamily& y) {
  require_same_length(alpha, y.size(), "rank_one_lhs_norm_sq");
  ComplexMatrix sum(y.dim());
  for (std::size_t i = 0; i < y.size(); ++i) sum += alpha[i] * rank_one_operator(y[i]);
  const double s = opnorm(sum);
  return s * s;
}

BoundReport theorem_bound(const WeightVector& alpha, const VectorFamily& y, double x_norm_sq,
                          const BoundConfig& config, std::optional<double> lhs_sq) {
  require_same_length(alpha, y.size(), "theorem_bound");
  check_x_norm_sq(x_norm_sq);
  const double bound = formula::master(alpha, y.profile(), config);
  const double lhs = resolve_lhs(alpha, y, x_norm_sq, lhs_sq);
  std::optional<double> p, r;
  if (config.diag.kind == DiagChoice::Kind::holder) p = config.diag.exps.p;
  if (config.offdiag.kind == OffdiagChoice::Kind::holder) r = config.offdiag.exps.p;
  return make_report(lhs, x_norm_sq * bound,
                     "master/" + to_string(config.diag.kind) + "/" + to_string(config.offdiag.kind),
                     format_exponents(p, r), config);
}

std::vector<BoundReport> particular_bounds(const WeightVector& alpha, const VectorFamily& y,
                                           double x_norm_sq, HolderPair hp, double r,
                                           std::optional<double> lhs_sq) {
  require_same_length(alpha, y.size(), "particular_bounds");
  check_x_norm_sq(x_norm_sq);
  hp = HolderPair::from_pair(hp.p, hp.q);
  const NormProfile& prof = y.profile();
  // Validate r before the lhs is computed.
  const double power_mean = formula::power_mean_cross(alpha, prof, r);
  const double lhs = resolve_lhs(alpha, y, x_norm_sq, lhs_sq);

  std::vector<BoundReport> out;
  out.reserve(6);
  out.push_back(make_report(lhs, x_norm_sq * formula::max_weight_total(alpha, prof),
                            "max_weight_total", ""));
  out.push_back(make_report(lhs, x_norm_sq * formula::holder_uniform_cross(alpha, prof, hp),
                            "holder_uniform_cross", format_exponents(hp.p, std::nullopt)));
  out.push_back(make_report(lhs, x_norm_sq * formula::max_cross_uniform(alpha, prof),
                            "max_cross_uniform", ""));
  out.push_back(make_report(lhs, x_norm_sq * formula::l2_cross(alpha, prof), "l2_cross", ""));
  out.push_back(make_report(lhs, x_norm_sq * formula::l1_cross(alpha, prof), "l1_cross", ""));
  out.push_back(make_report(lhs, x_norm_sq * power_mean, "power_mean_cross",
                            format_exponents(std::nullopt, r)));
  return out;
}

std::vector<BoundReport> vector_bound_catalog(const WeightVector& alpha, const VectorFamily& y,
                                              double x_norm_sq, std::span<const double> grid,
                                              std::optional<double> lhs_sq) {
  require_same_length(alpha, y.size(), "vector_bound_catalog");
  check_x_norm_sq(x_norm_sq);
  const double lhs = resolve_lhs(alpha, y, x_norm_sq, lhs_sq);
  std::vector<BoundReport> out = bound_catalog(alpha, y.profile(), lhs, grid, false);
  for (BoundReport& r : out) r = scaled(std::move(r), x_norm_sq, lhs);
  return out;
}

WeightVector bessel_weighting(const VectorFamily& y) {
  std::vector<Complex> w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) w[i] = y.norm(i);
  return WeightVector(std::move(w));
}

}  // namespace cbs
