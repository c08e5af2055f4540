#include "cbs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

// (sum v_i^e)^{1/e}, scaled by the max so large exponents do not overflow.
double power_sum_root(std::span<const double> values, double e) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += std::pow(v / m, e);
  return m * std::pow(sum, 1.0 / e);
}

double max_of(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

double sum_sq(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

// ||A_i A_j^*|| for ordered pairs i != j.
std::vector<double> offdiag_values(const NormProfile& prof) {
  const std::size_t n = prof.size();
  std::vector<double> out;
  out.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.push_back(prof.cross_at(i, j));
  return out;
}

// |a_i||a_j| for ordered pairs i != j.
std::vector<double> weight_pairs(std::span<const double> a) {
  const std::size_t n = a.size();
  std::vector<double> out;
  out.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.push_back(a[i] * a[j]);
  return out;
}

std::vector<double> checked_moduli(const WeightVector& alpha, const NormProfile& prof,
                                   const char* op) {
  require_same_length(alpha, prof.size(), op);
  return alpha.moduli();
}

void check_power_mean_exponent(double r) {
  if (!(r > 1.0 && r <= 2.0) || !std::isfinite(r)) {
    throw InvalidExponent("power_mean_cross: r must lie in (1, 2], got " + std::to_string(r));
  }
}

void check_grid(std::span<const double> grid) {
  for (double e : grid) {
    if (!(e > 1.0) || !std::isfinite(e)) {
      throw InvalidExponent("exponent grid entries must be finite and > 1, got " +
                            std::to_string(e));
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

HolderPair HolderPair::from_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw InvalidExponent("Hoelder exponent must be finite and > 1, got " + std::to_string(p));
  }
  return {p, p / (p - 1.0)};
}

HolderPair HolderPair::from_pair(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw InvalidExponent("Hoelder exponents must be finite and > 1");
  }
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw InvalidExponent("Hoelder exponents are not conjugate");
  }
  return {p, q};
}

std::string to_string(DiagChoice::Kind kind) {
  switch (kind) {
    case DiagChoice::Kind::max_weight: return "max_weight";
    case DiagChoice::Kind::holder: return "holder";
    case DiagChoice::Kind::max_norm: return "max_norm";
  }
  return "?";
}

std::string to_string(OffdiagChoice::Kind kind) {
  switch (kind) {
    case OffdiagChoice::Kind::max_weight_pair: return "max_weight_pair";
    case OffdiagChoice::Kind::holder: return "holder";
    case OffdiagChoice::Kind::max_cross: return "max_cross";
  }
  return "?";
}

double slack_ratio(double lhs_sq, double bound) {
  if (lhs_sq == 0.0) return bound > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return bound / lhs_sq;
}

BoundReport make_report(double lhs_sq, double bound, std::string name, std::string exponents,
                        std::optional<BoundConfig> config) {
  BoundReport r;
  r.lhs_sq = lhs_sq;
  r.bound = bound;
  r.name = std::move(name);
  r.exponents = std::move(exponents);
  r.config = config;
  r.slack_ratio = slack_ratio(lhs_sq, bound);
  return r;
}

std::string format_exponents(std::optional<double> p, std::optional<double> r) {
  std::string out;
  char buf[64];
  if (p) {
    std::snprintf(buf, sizeof buf, "p=%.15g", *p);
    out += buf;
  }
  if (r) {
    std::snprintf(buf, sizeof buf, "r=%.15g", *r);
    if (!out.empty()) out += ';';
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formulas

namespace formula {

double diag_term(const WeightVector& alpha, const NormProfile& prof, const DiagChoice& choice) {
  const std::vector<double> a = checked_moduli(alpha, prof, "diag_term");
  const std::vector<double>& norms = prof.norms;
  switch (choice.kind) {
    case DiagChoice::Kind::max_weight: {
      const double am = max_of(a);
      return am * am * sum_sq(norms);
    }
    case DiagChoice::Kind::holder: {
      const HolderPair hp = HolderPair::from_pair(choice.exps.p, choice.exps.q);
      const double wa = power_sum_root(a, 2.0 * hp.p);
      const double wn = power_sum_root(norms, 2.0 * hp.q);
      return wa * wa * wn * wn;
    }
    case DiagChoice::Kind::max_norm: {
      const double nm = max_of(norms);
      return sum_sq(a) * nm * nm;
    }
  }
  return 0.0;
}

double offdiag_term(const WeightVector& alpha, const NormProfile& prof,
                    const OffdiagChoice& choice) {
  const std::vector<double> a = checked_moduli(alpha, prof, "offdiag_term");
  if (choice.kind == OffdiagChoice::Kind::holder) {
    HolderPair::from_pair(choice.exps.p, choice.exps.q);
  }
  if (prof.size() < 2) return 0.0;

  const std::vector<double> pairs = weight_pairs(a);
  const std::vector<double> cross = offdiag_values(prof);
  switch (choice.kind) {
    case OffdiagChoice::Kind::max_weight_pair: {
      double cross_sum = 0.0;
      for (double c : cross) cross_sum += c;
      return max_of(pairs) * cross_sum;
    }
    case OffdiagChoice::Kind::holder:
      // (sum_{i!=j} (a_i a_j)^r)^{1/r} = [(sum a^r)^2 - sum a^{2r}]^{1/r}
      return power_sum_root(pairs, choice.exps.p) * power_sum_root(cross, choice.exps.q);
    case OffdiagChoice::Kind::max_cross: {
      // sum_{i!=j} a_i a_j = (sum a)^2 - sum a^2
      double pair_sum = 0.0;
      for (double v : pairs) pair_sum += v;
      return pair_sum * max_of(cross);
    }
  }
  return 0.0;
}

double master(const WeightVector& alpha, const NormProfile& prof, const BoundConfig& config) {
  return diag_term(alpha, prof, config.diag) + offdiag_term(alpha, prof, config.offdiag);
}

double max_weight_total(const WeightVector& alpha, const NormProfile& prof) {
  const std::vector<double> a = checked_moduli(alpha, prof, "max_weight_total");
  const double am = max_of(a);
  double total = sum_sq(prof.norms);
  for (double c : offdiag_values(prof)) total += c;
  return am * am * total;
}

double holder_uniform_cross(const WeightVector& alpha, const NormProfile& prof, HolderPair hp) {
  const std::vector<double> a = checked_moduli(alpha, prof, "holder_uniform_cross");
  hp = HolderPair::from_pair(hp.p, hp.q);
  const double n = static_cast<double>(prof.size());
  const double wa = power_sum_root(a, 2.0 * hp.p);
  const double wn = power_sum_root(prof.norms, 2.0 * hp.q);
  const double cross = power_sum_root(offdiag_values(prof), hp.q);
  return wa * wa * (wn * wn + (n - 1.0) * cross);
}

double max_cross_uniform(const WeightVector& alpha, const NormProfile& prof) {
  const std::vector<double> a = checked_moduli(alpha, prof, "max_cross_uniform");
  const double n = static_cast<double>(prof.size());
  const double nm = max_of(prof.norms);
  return sum_sq(a) * (nm * nm + (n - 1.0) * prof.max_offdiag());
}

double l2_cross(const WeightVector& alpha, const NormProfile& prof) {
  const std::vector<double> a = checked_moduli(alpha, prof, "l2_cross");
  const double nm = max_of(prof.norms);
  return sum_sq(a) * (nm * nm + power_sum_root(offdiag_values(prof), 2.0));
}

double l1_cross(const WeightVector& alpha, const NormProfile& prof) {
  const std::vector<double> a = checked_moduli(alpha, prof, "l1_cross");
  const double nm = max_of(prof.norms);
  double cross_sum = 0.0;
  for (double c : offdiag_values(prof)) cross_sum += c;
  return sum_sq(a) * (nm * nm + cross_sum);
}

double power_mean_cross(const WeightVector& alpha, const NormProfile& prof, double r) {
  const std::vector<double> a = checked_moduli(alpha, prof, "power_mean_cross");
  check_power_mean_exponent(r);
  const double s = r / (r - 1.0);
  const double n = static_cast<double>(prof.size());
  const double nm = max_of(prof.norms);
  const double factor = std::pow(n, 2.0 / r - 1.0);
  return sum_sq(a) * (nm * nm + factor * power_sum_root(offdiag_values(prof), s));
}

double orthogonal(const WeightVector& alpha, const NormProfile& prof, const DiagChoice& choice) {
  // The squared forms coincide with the diagonal bracket since every cross term vanishes.
  return diag_term(alpha, prof, choice);
}

}  // namespace formula

// ---------------------------------------------------------------------------
// Reports

double lhs_norm_sq(const WeightVector& alpha, const OperatorFamily& a) {
  const double s = opnorm(a.weighted_sum(alpha));
  return s * s;
}

double diag_term(const WeightVector& alpha, const OperatorFamily& a, const DiagChoice& choice) {
  return formula::diag_term(alpha, a.profile(), choice);
}

double offdiag_term(const WeightVector& alpha, const OperatorFamily& a,
                    const OffdiagChoice& choice) {
  return formula::offdiag_term(alpha, a.profile(), choice);
}

namespace {

std::string master_name(const BoundConfig& config) {
  return "master/" + to_string(config.diag.kind) + "/" + to_string(config.offdiag.kind);
}

std::string master_exponents(const BoundConfig& config) {
  std::optional<double> p, r;
  if (config.diag.kind == DiagChoice::Kind::holder) p = config.diag.exps.p;
  if (config.offdiag.kind == OffdiagChoice::Kind::holder) r = config.offdiag.exps.p;
  return format_exponents(p, r);
}

BoundReport master_report(const WeightVector& alpha, const NormProfile& prof, double lhs,
                          const BoundConfig& config) {
  return make_report(lhs, formula::master(alpha, prof, config), master_name(config),
                     master_exponents(config), config);
}

BoundReport orthogonal_report(const WeightVector& alpha, const NormProfile& prof, double lhs,
                              const DiagChoice& choice) {
  std::optional<double> p;
  if (choice.kind == DiagChoice::Kind::holder) p = choice.exps.p;
  return make_report(lhs, formula::orthogonal(alpha, prof, choice),
                     "orthogonal/" + to_string(choice.kind), format_exponents(p, std::nullopt));
}

}  // namespace

BoundReport master_bound(const WeightVector& alpha, const OperatorFamily& a,
                         const BoundConfig& config) {
  const double bound = formula::master(alpha, a.profile(), config);
  return make_report(lhs_norm_sq(alpha, a), bound, master_name(config), master_exponents(config),
                     config);
}

BoundReport bound_max_weight_total(const WeightVector& alpha, const OperatorFamily& a) {
  const double bound = formula::max_weight_total(alpha, a.profile());
  return make_report(lhs_norm_sq(alpha, a), bound, "max_weight_total", "");
}

BoundReport bound_holder_uniform_cross(const WeightVector& alpha, const OperatorFamily& a,
                                       HolderPair hp) {
  const double bound = formula::holder_uniform_cross(alpha, a.profile(), hp);
  return make_report(lhs_norm_sq(alpha, a), bound, "holder_uniform_cross",
                     format_exponents(hp.p, std::nullopt));
}

BoundReport bound_max_cross_uniform(const WeightVector& alpha, const OperatorFamily& a) {
  const double bound = formula::max_cross_uniform(alpha, a.profile());
  return make_report(lhs_norm_sq(alpha, a), bound, "max_cross_uniform", "");
}

BoundReport bound_l2_cross(const WeightVector& alpha, const OperatorFamily& a) {
  const double bound = formula::l2_cross(alpha, a.profile());
  return make_report(lhs_norm_sq(alpha, a), bound, "l2_cross", "");
}

BoundReport bound_l1_cross(const WeightVector& alpha, const OperatorFamily& a) {
  const double bound = formula::l1_cross(alpha, a.profile());
  return make_report(lhs_norm_sq(alpha, a), bound, "l1_cross", "");
}

BoundReport bound_power_mean_cross(const WeightVector& alpha, const OperatorFamily& a, double r) {
  const double bound = formula::power_mean_cross(alpha, a.profile(), r);
  return make_report(lhs_norm_sq(alpha, a), bound, "power_mean_cross",
                     format_exponents(std::nullopt, r));
}

bool is_orthogonal_family(const NormProfile& prof, double tol) {
  const double nm = max_of(prof.norms);
  return prof.max_offdiag() <= tol * nm * nm;
}

BoundReport bound_orthogonal(const WeightVector& alpha, const OperatorFamily& a,
                             const DiagChoice& choice, double tol) {
  if (!is_orthogonal_family(a.profile(), tol)) {
    throw NotOrthogonalFamily("bound_orthogonal: max_{i!=j} ||A_i A_j^*|| = " +
                              std::to_string(a.profile().max_offdiag()) +
                              " violates the orthogonality precondition");
  }
  return orthogonal_report(alpha, a.profile(), lhs_norm_sq(alpha, a), choice);
}

// ---------------------------------------------------------------------------
// Catalog

std::vector<BoundReport> bound_catalog(const WeightVector& alpha, const NormProfile& prof,
                                       double lhs_sq, std::span<const double> grid,
                                       bool include_orthogonal) {
  require_same_length(alpha, prof.size(), "bound_catalog");
  check_grid(grid);

  std::vector<DiagChoice> diag{DiagChoice::max_weight()};
  std::vector<OffdiagChoice> off{OffdiagChoice::max_weight_pair()};
  for (double e : grid) {
    diag.push_back(DiagChoice::holder(e));
    off.push_back(OffdiagChoice::holder(e));
  }
  diag.push_back(DiagChoice::max_norm());
  off.push_back(OffdiagChoice::max_cross());

  std::vector<BoundReport> out;
  out.reserve(diag.size() * off.size() + 2 * grid.size() + 8);
  for (const DiagChoice& dc : diag)
    for (const OffdiagChoice& oc : off) out.push_back(master_report(alpha, prof, lhs_sq, {dc, oc}));

  out.push_back(make_report(lhs_sq, formula::max_weight_total(alpha, prof), "max_weight_total", ""));
  for (double p : grid) {
    out.push_back(make_report(lhs_sq,
                              formula::holder_uniform_cross(alpha, prof, HolderPair::from_p(p)),
                              "holder_uniform_cross", format_exponents(p, std::nullopt)));
  }
  out.push_back(make_report(lhs_sq, formula::max_cross_uniform(alpha, prof), "max_cross_uniform", ""));
  out.push_back(make_report(lhs_sq, formula::l2_cross(alpha, prof), "l2_cross", ""));
  out.push_back(make_report(lhs_sq, formula::l1_cross(alpha, prof), "l1_cross", ""));
  for (double r : grid) {
    if (r > 2.0) continue;
    out.push_back(make_report(lhs_sq, formula::power_mean_cross(alpha, prof, r),
                              "power_mean_cross", format_exponents(std::nullopt, r)));
  }
  if (include_orthogonal) {
    for (const DiagChoice& dc : diag) out.push_back(orthogonal_report(alpha, prof, lhs_sq, dc));
  }
  return out;
}

const BoundReport& select_tightest(const std::vector<BoundReport>& reports) {
  if (reports.empty()) throw InvalidSpec("select_tightest: empty catalog");
  const BoundReport* best = &reports.front();
  for (const BoundReport& r : reports)
    if (r.bound < best->bound) best = &r;
  return *best;
}

BoundReport tightest_bound(const WeightVector& alpha, const OperatorFamily& a,
                           std::span<const double> grid) {
  const std::vector<BoundReport> catalog =
      bound_catalog(alpha, a.profile(), lhs_norm_sq(alpha, a), grid,
                    is_orthogonal_family(a.profile()));
  return select_tightest(catalog);
}

ProbeCheck vector_image_bound(const WeightVector& alpha, const OperatorFamily& a,
                              std::span<const Complex> x, double m) {
  if (x.size() != a.dim()) throw DimensionMismatch("vector_image_bound: probe dimension mismatch");
  const CVector image = matvec(a.weighted_sum(alpha), x);
  const double img = norm(image);
  const double xn = norm(x);
  ProbeCheck out;
  out.lhs = img * img;
  out.rhs = xn * xn * m;
  out.holds = out.lhs <= out.rhs * (1.0 + kDominanceTol);
  return out;
}

ProbeCheck bilinear_bound(const WeightVector& alpha, const OperatorFamily& a,
                          std::span<const Complex> x, std::span<const Complex> y, double m) {
  if (x.size() != a.dim() || y.size() != a.dim()) {
    throw DimensionMismatch("bilinear_bound: probe dimension mismatch");
  }
  const CVector image = matvec(a.weighted_sum(alpha), x);
  const double xn = norm(x);
  const double yn = norm(y);
  ProbeCheck out;
  out.lhs = std::norm(inner(image, y));
  out.rhs = xn * xn * yn * yn * m;
  out.holds = out.lhs <= out.rhs * (1.0 + kDominanceTol);
  return out;
}

}  // namespace cbs
