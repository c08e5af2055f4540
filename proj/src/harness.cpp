#include "cbs/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>

#include "cbs/errors.hpp"
#include "cbs/inequality.hpp"
#include "cbs/random.hpp"

namespace cbs {

namespace {

constexpr std::uint64_t kSizeSalt = 0xa0761d6478bd642fULL;
constexpr std::uint64_t kProbeSalt = 0xe7037ed1a0b428dbULL;

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Modified Gram-Schmidt on the columns of a complex normal matrix.
ComplexMatrix random_unitary(Xoshiro256& rng, std::size_t d) {
  ComplexMatrix m = random_matrix(rng, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (std::size_t i = 0; i < d; ++i) m(i, j) -= proj * m(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < d; ++i) nrm += std::norm(m(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < d; ++i) m(i, j) /= nrm;
  }
  return m;
}

WeightVector random_weights(Xoshiro256& rng, std::size_t n) {
  return WeightVector(random_vector(rng, n));
}

double violation(double lhs, double bound) {
  if (bound > 0.0) return std::max(lhs / bound - 1.0, 0.0);
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

Check make_check(std::string name, std::string exponents, double lhs, double bound, bool holds) {
  return {std::move(name), std::move(exponents), lhs, bound, holds, slack_ratio(lhs, bound)};
}

}  // namespace

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::gaussian_dense: return "gaussian_dense";
    case InstanceKind::unitary_scaled: return "unitary_scaled";
    case InstanceKind::rank_one_from_vectors: return "rank_one_from_vectors";
    case InstanceKind::block_orthogonal: return "block_orthogonal";
    case InstanceKind::orthonormal_rank_one: return "orthonormal_rank_one";
  }
  return "?";
}

InstanceKind parse_instance_kind(std::string_view name) {
  const std::string key = normalize_name(name);
  for (InstanceKind k : kAllKinds) {
    if (normalize_name(to_string(k)) == key) return k;
  }
  throw InvalidSpec("unknown instance kind '" + std::string(name) + "'");
}

void validate(const InstanceSpec& spec) {
  if (spec.dim < 1) throw InvalidSpec("instance dim must be >= 1");
  if (spec.count < 1) throw InvalidSpec("instance count must be >= 1");
  const bool needs_room = spec.kind == InstanceKind::block_orthogonal ||
                          spec.kind == InstanceKind::orthonormal_rank_one;
  if (needs_room && spec.dim < spec.count) {
    throw InvalidSpec(to_string(spec.kind) + " requires dim >= count (got dim " +
                      std::to_string(spec.dim) + ", count " + std::to_string(spec.count) + ")");
  }
}

Instance generate(const InstanceSpec& spec) {
  validate(spec);
  Xoshiro256 rng(spec.seed);
  const std::size_t d = spec.dim;
  const std::size_t n = spec.count;

  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  std::optional<VectorFamily> vectors;

  switch (spec.kind) {
    case InstanceKind::gaussian_dense:
      for (std::size_t i = 0; i < n; ++i) ops.push_back(random_matrix(rng, d));
      break;
    case InstanceKind::unitary_scaled:
      for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix u = random_unitary(rng, d);
        u *= 0.5 + 1.5 * rng.uniform();
        ops.push_back(std::move(u));
      }
      break;
    case InstanceKind::rank_one_from_vectors: {
      std::vector<CVector> ys;
      for (std::size_t i = 0; i < n; ++i) ys.push_back(random_vector(rng, d));
      vectors.emplace(std::move(ys));
      for (const CVector& y : vectors->vectors()) ops.push_back(rank_one_operator(y));
      break;
    }
    case InstanceKind::block_orthogonal: {
      const std::size_t base = d / n;
      const std::size_t extra = d % n;
      std::size_t offset = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = base + (i < extra ? 1 : 0);
        ComplexMatrix a(d);
        for (std::size_t r = 0; r < len; ++r)
          for (std::size_t c = 0; c < len; ++c) a(offset + r, offset + c) = rng.complex_normal();
        ops.push_back(std::move(a));
        offset += len;
      }
      break;
    }
    case InstanceKind::orthonormal_rank_one: {
      std::vector<std::size_t> perm(d);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = d; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.uniform_int(0, i - 1)]);
      }
      std::vector<CVector> ys;
      for (std::size_t i = 0; i < n; ++i) {
        CVector y(d);
        y[perm[i]] = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        ys.push_back(std::move(y));
      }
      vectors.emplace(std::move(ys));
      for (const CVector& y : vectors->vectors()) ops.push_back(rank_one_operator(y));
      break;
    }
  }

  WeightVector alpha = random_weights(rng, n);
  return Instance{std::move(alpha), OperatorFamily(std::move(ops)), std::move(vectors)};
}

std::vector<InstanceSpec> make_ensemble(InstanceKind kind, std::size_t instances,
                                        std::uint64_t base_seed, std::size_t dim_lo,
                                        std::size_t dim_hi, std::size_t n_lo, std::size_t n_hi) {
  if (dim_lo < 1 || dim_lo > dim_hi || n_lo < 1 || n_lo > n_hi) {
    throw InvalidSpec("make_ensemble: invalid size ranges");
  }
  const bool needs_room =
      kind == InstanceKind::block_orthogonal || kind == InstanceKind::orthonormal_rank_one;
  std::vector<InstanceSpec> out;
  out.reserve(instances);
  for (std::size_t k = 0; k < instances; ++k) {
    const std::uint64_t seed = base_seed + k;
    Xoshiro256 sizes(seed ^ kSizeSalt);
    const std::size_t n = sizes.uniform_int(n_lo, n_hi);
    std::size_t lo = dim_lo;
    if (needs_room) lo = std::max(lo, n);
    const std::size_t d = lo <= dim_hi ? sizes.uniform_int(lo, dim_hi) : lo;
    out.push_back({kind, d, n, seed});
  }
  return out;
}

VerificationResult verify_instance(const WeightVector& alpha, const OperatorFamily& a, double tol,
                                   std::uint64_t probe_seed, std::span<const double> grid) {
  if (!(tol > 0.0)) throw InvalidSpec("verify_instance: tol must be positive");
  require_same_length(alpha, a.size(), "verify_instance");

  VerificationResult out;
  std::vector<Check>& checks = out.checks;

  const PsdGapResult gap = cbs_operator_gap(alpha, a, kPsdTol);
  const double negativity = std::max(0.0, -gap.min_eigenvalue) / std::max(1.0, gap.gap_norm);
  checks.push_back(make_check("operator_order_gap", "", negativity, kPsdTol,
                              gap.holds && gap.inner_psd));

  const NormCheck nc = cbs_norm_check(alpha, a);
  checks.push_back(make_check("norm_form", "", nc.lhs, nc.rhs, nc.holds));

  const double lhs = lhs_norm_sq(alpha, a);
  const std::vector<BoundReport> catalog =
      bound_catalog(alpha, a.profile(), lhs, grid, is_orthogonal_family(a.profile()));
  for (const BoundReport& r : catalog) {
    checks.push_back(make_check(r.name, r.exponents, r.lhs_sq, r.bound,
                                r.lhs_sq <= r.bound * (1.0 + tol)));
  }

  const BoundReport& best = select_tightest(catalog);
  // Probe checks record which bound supplied M.
  const std::string m_source =
      "M=" + best.name + (best.exponents.empty() ? "" : ";" + best.exponents);
  Xoshiro256 rng(probe_seed ^ kProbeSalt);
  for (int k = 0; k <= kRandomProbes; ++k) {
    CVector x, y;
    if (k == kRandomProbes) {
      x.assign(a.dim(), Complex(1.0, 0.0));
      y = x;
    } else {
      x = random_vector(rng, a.dim());
      y = random_vector(rng, a.dim());
    }
    const ProbeCheck image = vector_image_bound(alpha, a, x, best.bound);
    checks.push_back(make_check("vector_image", m_source, image.lhs, image.rhs,
                                image.lhs <= image.rhs * (1.0 + tol)));
    const ProbeCheck bil = bilinear_bound(alpha, a, x, y, best.bound);
    checks.push_back(make_check("bilinear", m_source, bil.lhs, bil.rhs,
                                bil.lhs <= bil.rhs * (1.0 + tol)));
  }

  out.all_hold = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds; });
  for (const Check& c : checks) out.worst_violation = std::max(out.worst_violation, violation(c.lhs, c.bound));
  return out;
}

VerificationResult verify_spec(const InstanceSpec& spec, double tol, std::span<const double> grid) {
  const Instance inst = generate(spec);
  VerificationResult out = verify_instance(inst.alpha, inst.ops, tol, spec.seed, grid);
  out.spec = spec;
  return out;
}

std::vector<SweepRow> slack_sweep(std::span<const InstanceSpec> specs,
                                  std::span<const double> grid) {
  std::vector<SweepRow> rows;
  for (const InstanceSpec& spec : specs) {
    const Instance inst = generate(spec);
    const double lhs = lhs_norm_sq(inst.alpha, inst.ops);
    const std::vector<BoundReport> catalog = bound_catalog(
        inst.alpha, inst.ops.profile(), lhs, grid, is_orthogonal_family(inst.ops.profile()));
    for (const BoundReport& r : catalog) {
      rows.push_back({spec.seed, spec.kind, spec.dim, spec.count, r.name, r.exponents, r.lhs_sq,
                      r.bound, r.slack_ratio});
    }
  }
  return rows;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.seed << ',' << to_string(r.kind) << ',' << r.dim << ',' << r.count << ',' << r.bound
        << ',' << r.exponents << ',' << format_double(r.lhs) << ','
        << format_double(r.bound_value) << ',' << format_double(r.slack_ratio) << '\n';
  }
}

}  // namespace cbs
