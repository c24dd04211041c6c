#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "panelfa/errors.hpp"
#include "panelfa/factor.hpp"

using namespace panelfa;
using test_helpers::random_standardized;

TEST_CASE("covariance matches the brute-force definition") {
  const StandardizedPanel z = random_standardized(12, 60, 99);
  const Matrix s = covariance(z);
  const std::size_t q = 12, T = 60;
  REQUIRE(s.rows() == q);
  REQUIRE(s.cols() == q);

  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < T; ++t)
        acc += z.panel.values(i, t) * z.panel.values(j, t);
      acc /= static_cast<double>(T);
      CHECK(s(i, j) == doctest::Approx(acc).epsilon(1e-12));
      CHECK(s(i, j) == s(j, i));  // mirrored, not recomputed
    }

  // standardized series have unit diagonal and trace q
  double trace = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    CHECK(s(i, i) == doctest::Approx(1.0).epsilon(1e-12));
    trace += s(i, i);
  }
  CHECK(trace == doctest::Approx(static_cast<double>(q)).epsilon(1e-12));
}

TEST_CASE("estimate_factors satisfies the PCA identities") {
  const StandardizedPanel z = random_standardized(15, 90, 4242);
  const std::size_t q = 15, T = 90, r = 5;
  const EigenDecomposition eig = sym_eigen(covariance(z));
  const FactorModel m = estimate_factors(z, r, eig);

  SUBCASE("loadings are sqrt(q)-scaled eigenvectors") {
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < r; ++j)
        CHECK(m.loadings(i, j) ==
              doctest::Approx(std::sqrt(static_cast<double>(q)) *
                              eig.eigenvectors(i, j))
                  .epsilon(1e-12));
  }

  SUBCASE("loading normalization: loadings' loadings / q = I") {
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q; ++i)
          acc += m.loadings(i, a) * m.loadings(i, b);
        acc /= static_cast<double>(q);
        CHECK(std::fabs(acc - (a == b ? 1.0 : 0.0)) < 1e-8);
      }
  }

  SUBCASE("factor orthogonality: row covariances are lambda_j / q") {
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        double acc = 0.0;
        for (std::size_t t = 0; t < T; ++t)
          acc += m.factors(a, t) * m.factors(b, t);
        acc /= static_cast<double>(T);
        const double want =
            a == b ? m.eigenvalues[a] / static_cast<double>(q) : 0.0;
        CHECK(std::fabs(acc - want) < 1e-8);
      }
  }

  SUBCASE("residuals are orthogonal to the factor space") {
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < q; ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < T; ++t)
          acc += m.residuals(i, t) * m.factors(j, t);
        CHECK(std::fabs(acc / static_cast<double>(T)) < 1e-8);
      }
  }

  SUBCASE("full-rank model reconstructs the panel") {
    const FactorModel full = estimate_factors(z, q, eig);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t t = 0; t < T; ++t) {
        double fit = 0.0;
        for (std::size_t j = 0; j < q; ++j)
          fit += full.loadings(i, j) * full.factors(j, t);
        CHECK(std::fabs(fit - z.panel.values(i, t)) < 1e-10);
        CHECK(std::fabs(full.residuals(i, t)) < 1e-10);
      }
  }

  SUBCASE("residual sum of squares shrinks as r grows") {
    double prev = 1e300;
    for (std::size_t k = 1; k <= 8; ++k) {
      const FactorModel mk = estimate_factors(z, k, eig);
      double ssr = 0.0;
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t t = 0; t < T; ++t)
          ssr += mk.residuals(i, t) * mk.residuals(i, t);
      CHECK(ssr < prev + 1e-9);
      prev = ssr;
    }
  }

  SUBCASE("bounds are enforced") {
    CHECK_THROWS_AS(estimate_factors(z, 0, eig), Error);
    CHECK_THROWS_AS(estimate_factors(z, q + 1, eig), Error);
  }
}

TEST_CASE("identical runs give bit-identical results") {
  const StandardizedPanel z = random_standardized(10, 50, 31415);
  const FactorModel a = estimate_factors(z, 3);
  const FactorModel b = estimate_factors(z, 3);
  CHECK(a.loadings == b.loadings);
  CHECK(a.factors == b.factors);
  CHECK(a.residuals == b.residuals);
}

TEST_CASE("unit-variance renormalization preserves the common component") {
  const StandardizedPanel z = random_standardized(10, 80, 2718);
  const FactorModel m = estimate_factors(z, 3);
  const FactorModel u = with_unit_variance_factors(m);
  const std::size_t T = 80;

  for (std::size_t j = 0; j < 3; ++j) {
    double ss = 0.0;
    for (std::size_t t = 0; t < T; ++t) ss += u.factors(j, t) * u.factors(j, t);
    CHECK(ss / static_cast<double>(T) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      double before = 0.0, after = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        before += m.loadings(i, j) * m.factors(j, t);
        after += u.loadings(i, j) * u.factors(j, t);
      }
      CHECK(before == doctest::Approx(after).epsilon(1e-12));
    }
}

TEST_CASE("variance_explained shares and running totals") {
  const std::vector<double> lam = {4.0, 3.0, 2.0, 1.0};
  const VarianceExplained ve = variance_explained(lam);
  CHECK(ve.share[0] == doctest::Approx(0.4));
  CHECK(ve.share[3] == doctest::Approx(0.1));
  CHECK(ve.cumulative[1] == doctest::Approx(0.7));
  CHECK(ve.cumulative[3] == doctest::Approx(1.0));
  CHECK_THROWS_AS(variance_explained(std::vector<double>{}), Error);
}
