#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbs/bounds.hpp"
#include "cbs/family.hpp"
#include "cbs/vector_bounds.hpp"

namespace cbs {

enum class InstanceKind {
  gaussian_dense,
  unitary_scaled,
  rank_one_from_vectors,
  block_orthogonal,
  orthonormal_rank_one,
};

std::string to_string(InstanceKind kind);
/// Accepts snake_case or CamelCase ("block_orthogonal", "BlockOrthogonal").
/// Throws InvalidSpec for unknown names.
InstanceKind parse_instance_kind(std::string_view name);

inline constexpr InstanceKind kAllKinds[] = {
    InstanceKind::gaussian_dense,       InstanceKind::unitary_scaled,
    InstanceKind::rank_one_from_vectors, InstanceKind::block_orthogonal,
    InstanceKind::orthonormal_rank_one,
};

struct InstanceSpec {
  InstanceKind kind = InstanceKind::gaussian_dense;
  std::size_t dim = 1;
  std::size_t count = 1;
  std::uint64_t seed = 0;
};

struct Instance {
  WeightVector alpha;
  OperatorFamily ops;
  std::optional<VectorFamily> vectors;  // set for the rank-one kinds
};

/// Throws InvalidSpec unless dim, count >= 1 (and dim >= count for
/// block_orthogonal and orthonormal_rank_one).
void validate(const InstanceSpec& spec);

/// Pure function of `spec`. Weights and entries are complex normals drawn
/// from Xoshiro256(spec.seed).
///  - gaussian_dense: i.i.d. complex normal entries.
///  - unitary_scaled: c_i U_i, U_i Haar-like unitary from Gram-Schmidt, c_i in [0.5, 2).
///  - rank_one_from_vectors: A_i = y_i y_i^H / ||y_i|| for complex normal y_i.
///  - block_orthogonal: A_i supported on the i-th of n disjoint coordinate blocks.
///  - orthonormal_rank_one: y_i = e^{i theta_i} e_{pi(i)} for a random permutation pi.
Instance generate(const InstanceSpec& spec);

/// `count` specs with consecutive seeds starting at `base_seed`; dim and
/// count drawn uniformly from the given ranges (dim raised to count where
/// the kind needs it).
std::vector<InstanceSpec> make_ensemble(InstanceKind kind, std::size_t instances,
                                        std::uint64_t base_seed, std::size_t dim_lo,
                                        std::size_t dim_hi, std::size_t n_lo, std::size_t n_hi);

struct Check {
  std::string name;
  std::string exponents;
  double lhs = 0.0;
  double bound = 0.0;
  bool holds = false;
  double slack_ratio = 1.0;
};

struct VerificationResult {
  std::optional<InstanceSpec> spec;
  std::vector<Check> checks;
  bool all_hold = false;
  double worst_violation = 0.0;  // max over checks of lhs / bound - 1, clamped at 0
};

inline constexpr int kRandomProbes = 8;

/// Runs the operator-order check, the norm-form check, every catalog bound
/// (orthogonal ones when the family qualifies), and the image / bilinear
/// probe checks with M = tightest bound: kRandomProbes seeded probes plus
/// the all-ones vector. `tol` is the relative dominance slack.
VerificationResult verify_instance(const WeightVector& alpha, const OperatorFamily& a,
                                   double tol = kDominanceTol, std::uint64_t probe_seed = 0,
                                   std::span<const double> grid = kDefaultGrid);

VerificationResult verify_spec(const InstanceSpec& spec, double tol = kDominanceTol,
                               std::span<const double> grid = kDefaultGrid);

struct SweepRow {
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::gaussian_dense;
  std::size_t dim = 0;
  std::size_t count = 0;
  std::string bound;
  std::string exponents;
  double lhs = 0.0;
  double bound_value = 0.0;
  double slack_ratio = 1.0;
};

/// One row per (instance, catalog bound), spec order then catalog order.
std::vector<SweepRow> slack_sweep(std::span<const InstanceSpec> specs,
                                  std::span<const double> grid = kDefaultGrid);

inline constexpr std::string_view kSweepHeader =
    "seed,kind,dim,count,bound,exponents,lhs,bound_value,slack_ratio";

/// Header plus rows, LF endings, floats at 17 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// %.17g, with "inf" / "-inf" / "nan" for non-finite values.
std::string format_double(double v);

}  // namespace cbs
