#include <doctest.h>

#include <cmath>

#include "cbs/errors.hpp"
#include "cbs/inequality.hpp"
#include "test_support.hpp"

using namespace cbs;
using cbs::test::rel_diff;

TEST_CASE("operator gap vanishes for a single operator") {
  Xoshiro256 rng(1);
  const ComplexMatrix m = random_matrix(rng, 4);
  const PsdGapResult r = cbs_operator_gap(WeightVector{1.0}, OperatorFamily({m}));
  CHECK(r.gap.frobenius_norm() <= 1e-12 * matmul_adjoint(m, m).frobenius_norm());
  CHECK(r.holds);
  CHECK(r.inner_psd);
}

TEST_CASE("operator gap vanishes for identical identities") {
  const OperatorFamily a({ComplexMatrix::identity(2), ComplexMatrix::identity(2)});
  const PsdGapResult r = cbs_operator_gap(WeightVector{1.0, 1.0}, a);
  CHECK(r.gap.is_zero());
  CHECK(r.holds);
  CHECK(r.min_eigenvalue == 0.0);
}

TEST_CASE("operator gap is PSD on random instances") {
  Xoshiro256 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.uniform_int(0, 7);
    const std::size_t n = 1 + rng.uniform_int(0, 4);
    const OperatorFamily a(test::random_ops(rng, d, n));
    const WeightVector z = test::random_weights(rng, n);
    const PsdGapResult r = cbs_operator_gap(z, a);
    CHECK(r.holds);
    CHECK(r.inner_psd);
    CHECK(r.min_eigenvalue >= -1e-8 * std::max(1.0, r.gap_norm));
  }
}

TEST_CASE("operator gap: phase invariance and scale homogeneity") {
  Xoshiro256 rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.uniform_int(0, 3);
    const OperatorFamily a(test::random_ops(rng, 4, n));
    const WeightVector z = test::random_weights(rng, n);
    const PsdGapResult base = cbs_operator_gap(z, a);

    const double theta = 6.283185307179586 * rng.uniform();
    const Complex phase = std::polar(1.0, theta);
    const PsdGapResult rotated = cbs_operator_gap(z.scaled(phase), a);
    const double scale = base.gap.frobenius_norm();
    CHECK(test::max_entry_diff(rotated.gap, base.gap) <= 1e-12 * std::max(1.0, scale));

    const Complex c = rng.complex_normal();
    const PsdGapResult scaled = cbs_operator_gap(z.scaled(c), a);
    ComplexMatrix expected = base.gap;
    expected *= std::norm(c);
    CHECK(test::max_entry_diff(scaled.gap, expected) <=
          1e-10 * std::max(1.0, expected.frobenius_norm()));
  }
}

TEST_CASE("operator gap errors") {
  const OperatorFamily a({ComplexMatrix::identity(2)});
  CHECK_THROWS_AS(cbs_operator_gap(WeightVector{1.0, 2.0}, a), DimensionMismatch);
  CHECK_THROWS_AS(cbs_operator_gap(WeightVector{1.0}, a, 0.0), InvalidSpec);
}

TEST_CASE("norm check examples") {
  Xoshiro256 rng(4);
  const ComplexMatrix m = random_matrix(rng, 3);
  const NormCheck one = cbs_norm_check(WeightVector{1.0}, OperatorFamily({m}));
  const double norm_sq = test::jacobi_norm_sq(m);
  CHECK(rel_diff(one.lhs, norm_sq) < 1e-10);
  CHECK(rel_diff(one.rhs, norm_sq) < 1e-10);
  CHECK(one.holds);

  const ComplexMatrix m2 = random_matrix(rng, 3);
  const NormCheck dropped = cbs_norm_check(WeightVector{1.0, 0.0}, OperatorFamily({m, m2}));
  CHECK(rel_diff(dropped.lhs, norm_sq) < 1e-10);
  CHECK(dropped.lhs <= dropped.rhs);
  CHECK(dropped.holds);
}

TEST_CASE("norm check holds on random instances") {
  Xoshiro256 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.uniform_int(0, 7);
    const std::size_t n = 1 + rng.uniform_int(0, 5);
    const std::vector<ComplexMatrix> ops = test::random_ops(rng, d, n);
    const WeightVector z = test::random_weights(rng, n);
    const NormCheck r = cbs_norm_check(z, OperatorFamily(ops));
    CHECK(r.holds);

    // rhs recomputed from scratch
    double wsum = 0.0;
    ComplexMatrix s(d);
    for (std::size_t i = 0; i < n; ++i) {
      wsum += std::norm(z[i]);
      s += test::naive_matmul(ops[i], test::naive_adjoint(ops[i]));
    }
    const double rhs = wsum * std::sqrt(test::jacobi_norm_sq(s));
    CHECK(rel_diff(r.rhs, rhs) < 1e-9);
    CHECK(rel_diff(r.lhs, test::jacobi_norm_sq(test::naive_weighted_sum(z, ops))) < 1e-9);
  }
}
