#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbs/family.hpp"
#include "cbs/linalg.hpp"

namespace cbs {

/// Relative slack allowed when checking lhs <= bound in floating point.
inline constexpr double kDominanceTol = 1e-9;
/// Orthogonality precondition: max_{i!=j} ||A_i A_j^*|| <= tol * max ||A_i||^2.
inline constexpr double kOrthogonalTol = 1e-12;

/// Conjugate exponents p > 1, q = p / (p - 1).
struct HolderPair {
  double p = 2.0;
  double q = 2.0;

  /// Throws InvalidExponent unless p is finite and > 1.
  static HolderPair from_p(double p);
  /// Throws InvalidExponent unless p > 1 and |1/p + 1/q - 1| <= 1e-12.
  static HolderPair from_pair(double p, double q);
};

/// First bracket: how sum |a_i|^2 ||A_i||^2 is bounded.
struct DiagChoice {
  enum class Kind { max_weight, holder, max_norm };
  Kind kind = Kind::max_weight;
  HolderPair exps{};  // used only for Kind::holder

  static DiagChoice max_weight() { return {Kind::max_weight, {}}; }
  static DiagChoice holder(double p) { return {Kind::holder, HolderPair::from_p(p)}; }
  static DiagChoice max_norm() { return {Kind::max_norm, {}}; }
};

/// Second bracket: how sum_{i!=j} |a_i||a_j| ||A_i A_j^*|| is bounded.
struct OffdiagChoice {
  enum class Kind { max_weight_pair, holder, max_cross };
  Kind kind = Kind::max_weight_pair;
  HolderPair exps{};  // r, s

  static OffdiagChoice max_weight_pair() { return {Kind::max_weight_pair, {}}; }
  static OffdiagChoice holder(double r) { return {Kind::holder, HolderPair::from_p(r)}; }
  static OffdiagChoice max_cross() { return {Kind::max_cross, {}}; }
};

struct BoundConfig {
  DiagChoice diag;
  OffdiagChoice offdiag;
};

std::string to_string(DiagChoice::Kind kind);
std::string to_string(OffdiagChoice::Kind kind);

/// One evaluated bound on ||sum alpha_i A_i||^2 (always in squared form).
struct BoundReport {
  double lhs_sq = 0.0;
  double bound = 0.0;
  std::string name;       // e.g. "master/holder/max_cross", "l2_cross"
  std::string exponents;  // e.g. "p=2;r=1.5", empty when none apply
  std::optional<BoundConfig> config;
  double slack_ratio = 1.0;
};

/// bound / lhs, +inf if lhs == 0 < bound, 1 if both are 0.
double slack_ratio(double lhs_sq, double bound);

BoundReport make_report(double lhs_sq, double bound, std::string name, std::string exponents,
                        std::optional<BoundConfig> config = std::nullopt);

/// Exponents rendered the way reports and CSV rows show them ("p=1.5;r=2").
std::string format_exponents(std::optional<double> p, std::optional<double> r);

// ---------------------------------------------------------------------------
// Formula layer. Everything here is a function of |alpha_i| and the cached
// norm profile only; no spectral norms are computed.
namespace formula {

double diag_term(const WeightVector& alpha, const NormProfile& prof, const DiagChoice& choice);
double offdiag_term(const WeightVector& alpha, const NormProfile& prof,
                    const OffdiagChoice& choice);
double master(const WeightVector& alpha, const NormProfile& prof, const BoundConfig& config);

/// max|a|^2 * sum_{i,j} ||A_i A_j^*||
double max_weight_total(const WeightVector& alpha, const NormProfile& prof);
/// (sum a^{2p})^{1/p} [ (sum ||A||^{2q})^{1/q} + (n-1)(sum_{i!=j} ||A_i A_j^*||^q)^{1/q} ]
double holder_uniform_cross(const WeightVector& alpha, const NormProfile& prof, HolderPair hp);
/// sum a^2 [ max ||A||^2 + (n-1) max_{i!=j} ||A_i A_j^*|| ]
double max_cross_uniform(const WeightVector& alpha, const NormProfile& prof);
/// sum a^2 [ max ||A||^2 + (sum_{i!=j} ||A_i A_j^*||^2)^{1/2} ]
double l2_cross(const WeightVector& alpha, const NormProfile& prof);
/// sum a^2 [ max ||A||^2 + sum_{i!=j} ||A_i A_j^*|| ]
double l1_cross(const WeightVector& alpha, const NormProfile& prof);
/// sum a^2 [ max ||A||^2 + n^{2/r-1} (sum_{i!=j} ||A_i A_j^*||^s)^{1/s} ], 1 < r <= 2.
double power_mean_cross(const WeightVector& alpha, const NormProfile& prof, double r);
/// Squared orthogonal-family bound. The precondition is not checked here.
double orthogonal(const WeightVector& alpha, const NormProfile& prof, const DiagChoice& choice);

}  // namespace formula

// ---------------------------------------------------------------------------
// Report layer over an operator family.

/// ||sum alpha_i A_i||^2 from the spectral norm of the assembled sum.
double lhs_norm_sq(const WeightVector& alpha, const OperatorFamily& a);

double diag_term(const WeightVector& alpha, const OperatorFamily& a, const DiagChoice& choice);
double offdiag_term(const WeightVector& alpha, const OperatorFamily& a,
                    const OffdiagChoice& choice);

BoundReport master_bound(const WeightVector& alpha, const OperatorFamily& a,
                         const BoundConfig& config);
BoundReport bound_max_weight_total(const WeightVector& alpha, const OperatorFamily& a);
BoundReport bound_holder_uniform_cross(const WeightVector& alpha, const OperatorFamily& a,
                                       HolderPair hp);
BoundReport bound_max_cross_uniform(const WeightVector& alpha, const OperatorFamily& a);
BoundReport bound_l2_cross(const WeightVector& alpha, const OperatorFamily& a);
BoundReport bound_l1_cross(const WeightVector& alpha, const OperatorFamily& a);
BoundReport bound_power_mean_cross(const WeightVector& alpha, const OperatorFamily& a, double r);

bool is_orthogonal_family(const NormProfile& prof, double tol = kOrthogonalTol);

/// Throws NotOrthogonalFamily when the precondition fails.
BoundReport bound_orthogonal(const WeightVector& alpha, const OperatorFamily& a,
                             const DiagChoice& choice, double tol = kOrthogonalTol);

// ---------------------------------------------------------------------------
// Catalog

inline const std::vector<double> kDefaultGrid{1.25, 1.5, 2.0, 3.0, 4.0};

/// Every bound in catalog order: the master configurations row-major
/// (diag choice outer, off-diagonal choice inner, Hoelder choices expanded over
/// the grid), then max_weight_total, holder_uniform_cross (per p),
/// max_cross_uniform, l2_cross, l1_cross, power_mean_cross (per r in (1, 2]),
/// and the orthogonal bounds when `include_orthogonal` is set.
std::vector<BoundReport> bound_catalog(const WeightVector& alpha, const NormProfile& prof,
                                       double lhs_sq, std::span<const double> grid,
                                       bool include_orthogonal);

/// First minimum of `reports`. Throws InvalidSpec on an empty list.
const BoundReport& select_tightest(const std::vector<BoundReport>& reports);

/// Minimal catalog bound; orthogonal bounds join when the precondition holds.
/// Throws InvalidExponent for grid entries <= 1.
BoundReport tightest_bound(const WeightVector& alpha, const OperatorFamily& a,
                           std::span<const double> grid = kDefaultGrid);

struct ProbeCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = ||sum alpha_i A_i x||^2, rhs = ||x||^2 M.
ProbeCheck vector_image_bound(const WeightVector& alpha, const OperatorFamily& a,
                              std::span<const Complex> x, double m);
/// lhs = |sum alpha_i (A_i x, y)|^2, rhs = ||x||^2 ||y||^2 M.
ProbeCheck bilinear_bound(const WeightVector& alpha, const OperatorFamily& a,
                          std::span<const Complex> x, std::span<const Complex> y, double m);

}  // namespace cbs
