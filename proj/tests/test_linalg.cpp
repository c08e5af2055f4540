#include <doctest.h>

#include <cmath>

#include "cbs/errors.hpp"
#include "cbs/linalg.hpp"
#include "cbs/random.hpp"
#include "test_support.hpp"

using namespace cbs;
using cbs::test::rel_diff;

namespace {

const Complex I{0.0, 1.0};

// Closed-form eigenvalues of [[a, b], [conj(b), c]].
std::pair<double, double> eig2(double a, Complex b, double c) {
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  return {mid - rad, mid + rad};
}

double jacobi_opnorm(const ComplexMatrix& m) {
  const ComplexMatrix h = test::naive_matmul(test::naive_adjoint(m), m);
  return std::sqrt(std::max(0.0, jacobi_eigenvalues(h, 1e-16).back()));
}

}  // namespace

TEST_CASE("adjoint") {
  CHECK(adjoint(ComplexMatrix::identity(3)) == ComplexMatrix::identity(3));

  const ComplexMatrix m = ComplexMatrix::from_rows({{0.0, I}, {0.0, 0.0}});
  const ComplexMatrix expected = ComplexMatrix::from_rows({{0.0, 0.0}, {-I, 0.0}});
  CHECK(adjoint(m) == expected);

  Xoshiro256 rng(11);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix r = random_matrix(rng, 4);
    CHECK(adjoint(adjoint(r)) == r);
    CHECK(adjoint(r) == test::naive_adjoint(r));
  }
}

TEST_CASE("matmul") {
  Xoshiro256 rng(5);
  const ComplexMatrix m = random_matrix(rng, 3);
  CHECK(matmul(ComplexMatrix::identity(3), m) == m);
  CHECK(matmul(ComplexMatrix::diagonal({2.0, 3.0}), ComplexMatrix::diagonal({5.0, 7.0})) ==
        ComplexMatrix::diagonal({10.0, 21.0}));

  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_matrix(rng, 3);
    const ComplexMatrix b = random_matrix(rng, 3);
    CHECK(test::max_entry_diff(matmul(a, b), test::naive_matmul(a, b)) < 1e-13);
    CHECK(test::max_entry_diff(matmul_adjoint(a, b), test::naive_matmul(a, test::naive_adjoint(b))) <
          1e-13);
  }

  CHECK_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(3)), DimensionMismatch);
}

TEST_CASE("from_rows rejects ragged input") {
  CHECK_THROWS_AS(ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix::from_rows({}), DimensionMismatch);
}

TEST_CASE("spectral_norm on closed-form cases") {
  CHECK(spectral_norm(ComplexMatrix::identity(5)).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spectral_norm(ComplexMatrix::diagonal({3.0, -4.0})).value ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK(spectral_norm(ComplexMatrix(4)).value == 0.0);

  // All-ones lies in the null space of this matrix.
  const ComplexMatrix null_start = ComplexMatrix::from_rows({{1.0, -1.0}, {-1.0, 1.0}});
  CHECK(spectral_norm(null_start).value == doctest::Approx(2.0).epsilon(1e-13));

  // Nilpotent, norm 1.
  const ComplexMatrix nil = ComplexMatrix::from_rows({{0.0, I}, {0.0, 0.0}});
  CHECK(spectral_norm(nil).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral_norm matches the Jacobi oracle") {
  Xoshiro256 rng(2024);
  for (std::size_t d = 1; d <= 16; ++d) {
    for (int t = 0; t < 6; ++t) {
      const ComplexMatrix m = random_matrix(rng, d);
      const SpectralNormResult r = spectral_norm(m);
      CHECK(r.residual <= 1e-12);
      CHECK(rel_diff(r.value, jacobi_opnorm(m)) < 1e-10);
    }
  }
}

TEST_CASE("spectral_norm with a nearly degenerate top singular value") {
  Xoshiro256 rng(99);
  for (double gap : {1e-3, 1e-5, 1e-8, 0.0}) {
    std::vector<double> eig{1.0, 1.0 - gap, 0.5, 0.25, 0.1, 0.0};
    const ComplexMatrix h = test::hermitian_with_spectrum(rng, eig);
    // h is PSD with ||h|| = 1.
    const SpectralNormResult r = spectral_norm(h);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("spectral_norm options and errors") {
  CHECK_THROWS_AS(spectral_norm(ComplexMatrix::identity(2), 0.0, 10), InvalidSpec);
  CHECK_THROWS_AS(spectral_norm(ComplexMatrix::identity(2), 1e-12, 0), InvalidSpec);

  ComplexMatrix bad = ComplexMatrix::identity(2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(spectral_norm(bad), NonFinite);

  Xoshiro256 rng(3);
  const ComplexMatrix m = random_matrix(rng, 12);
  try {
    spectral_norm(m, 1e-300, 3);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.iterations() == 3);
    CHECK(rel_diff(e.estimate(), jacobi_opnorm(m)) < 0.5);
  }
}

TEST_CASE("spectral_norm invariants") {
  Xoshiro256 rng(77);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + rng.uniform_int(0, 15);
    const ComplexMatrix a = random_matrix(rng, d);
    const ComplexMatrix b = random_matrix(rng, d);
    const double na = opnorm(a);

    // ||A A^*|| = ||A^* A|| = ||A||^2
    CHECK(rel_diff(opnorm(matmul_adjoint(a, a)), na * na) < 1e-9);
    CHECK(rel_diff(opnorm(matmul(adjoint(a), a)), na * na) < 1e-9);

    const Complex c = rng.complex_normal();
    CHECK(rel_diff(opnorm(c * a), std::abs(c) * na) < 1e-9);

    CHECK(opnorm(matmul(a, b)) <= na * opnorm(b) * (1.0 + 1e-9));
  }
}

TEST_CASE("jacobi eigenvalues against known spectra") {
  Xoshiro256 rng(8);
  for (int t = 0; t < 20; ++t) {
    const double a = rng.normal();
    const double c = rng.normal();
    const Complex b = rng.complex_normal();
    const ComplexMatrix h = ComplexMatrix::from_rows({{a, b}, {std::conj(b), c}});
    const auto [lo, hi] = eig2(a, b, c);
    const std::vector<double> eig = jacobi_eigenvalues(h);
    CHECK(eig[0] == doctest::Approx(lo).epsilon(1e-13));
    CHECK(eig[1] == doctest::Approx(hi).epsilon(1e-13));
  }

  for (std::size_t d = 2; d <= 12; ++d) {
    std::vector<double> spectrum(d);
    for (double& x : spectrum) x = 3.0 * rng.normal();
    const ComplexMatrix h = test::hermitian_with_spectrum(rng, spectrum);
    std::sort(spectrum.begin(), spectrum.end());
    const std::vector<double> eig = jacobi_eigenvalues(h);
    for (std::size_t k = 0; k < d; ++k) CHECK(std::abs(eig[k] - spectrum[k]) < 1e-12);
  }
}

TEST_CASE("hermitian_eigen_min") {
  CHECK(hermitian_eigen_min(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
  CHECK(hermitian_eigen_min(ComplexMatrix::diagonal({2.0, 0.0, -1.0})) == doctest::Approx(-1.0));

  Xoshiro256 rng(4);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix g = random_matrix(rng, 6);
    const ComplexMatrix h = matmul(adjoint(g), g);
    CHECK(hermitian_eigen_min(h) >= -1e-12 * opnorm(h));
  }

  const ComplexMatrix skew = ComplexMatrix::from_rows({{1.0, 1.0}, {-1.0, 1.0}});
  CHECK_THROWS_AS(hermitian_eigen_min(skew), NotHermitian);
}

TEST_CASE("is_psd") {
  CHECK(is_psd(ComplexMatrix(3)));
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1.0, -0.5})));

  Xoshiro256 rng(12);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_matrix(rng, 5);
    CHECK(is_psd(matmul_adjoint(a, a)));
  }
  CHECK_THROWS_AS(is_psd(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), NotHermitian);
}

TEST_CASE("gram") {
  std::vector<CVector> basis;
  for (std::size_t k = 0; k < 4; ++k) basis.push_back(test::basis(4, k));
  CHECK(gram(basis) == ComplexMatrix::identity(4));

  const ComplexMatrix single = gram({CVector{Complex(0.0, 2.0), 0.0}});
  CHECK(single.dim() == 1);
  CHECK(single(0, 0) == Complex(4.0, 0.0));

  // Conjugate-linear in the second slot.
  const CVector x{1.0, 0.0};
  const CVector y{I, 0.0};
  CHECK(gram({x, y})(0, 1) == std::conj(I));

  Xoshiro256 rng(21);
  for (int t = 0; t < 20; ++t) {
    std::vector<CVector> ys;
    const std::size_t n = 1 + rng.uniform_int(0, 7);
    for (std::size_t i = 0; i < n; ++i) ys.push_back(random_vector(rng, 5));
    const ComplexMatrix g = gram(ys);
    CHECK(g == adjoint(g));
    CHECK(is_psd(g, 1e-10));
  }

  CHECK_THROWS_AS(gram({}), DimensionMismatch);
  CHECK_THROWS_AS(gram({CVector{1.0}, CVector{1.0, 2.0}}), DimensionMismatch);
}
