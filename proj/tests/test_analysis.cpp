#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "helpers.hpp"
#include "panelfa/analysis.hpp"
#include "panelfa/errors.hpp"

using namespace panelfa;
using test_helpers::random_standardized;

TEST_CASE("r2_by_k agrees with the orthogonal-projection oracle") {
  const StandardizedPanel z = random_standardized(14, 80, 808);
  const FactorModel m = estimate_factors(z, 5);
  const std::size_t T = 80;

  for (std::size_t i = 0; i < 14; ++i) {
    const auto r2 = r2_by_k(z, m, i);
    REQUIRE(r2.size() == 5);

    // PCA factors are mutually orthogonal, so R^2 accumulates one
    // projection per factor: sum_j (z.f_j)^2 / (f_j.f_j) / (z.z)
    auto zi = z.panel.values.row(i);
    double zz = 0.0;
    for (double v : zi) zz += v * v;
    double acc = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      double zf = 0.0, ff = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        zf += zi[t] * m.factors(j, t);
        ff += m.factors(j, t) * m.factors(j, t);
      }
      acc += zf * zf / ff;
      CHECK(r2[j] == doctest::Approx(acc / zz).epsilon(1e-10));
    }

    // monotone and bounded
    for (std::size_t j = 1; j < 5; ++j) CHECK(r2[j] >= r2[j - 1] - 1e-12);
    CHECK(r2[4] <= 1.0);
  }
}

TEST_CASE("mr2_table identities") {
  const StandardizedPanel z = random_standardized(16, 70, 161);
  const FactorModel m = estimate_factors(z, 4);
  const Mr2Table t = mr2_table(z, m);
  const std::size_t q = 16;

  SUBCASE("rows of mr2 accumulate to cumulative r2") {
    for (std::size_t i = 0; i < q; ++i) {
      double run = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        run += t.mr2(i, k);
        CHECK(run == doctest::Approx(t.r2(i, k)).epsilon(1e-10));
      }
    }
  }

  SUBCASE("averaged incremental share equals eigenvalue / q") {
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(t.avg_mr2[k] ==
            doctest::Approx(m.eigenvalues[k] / static_cast<double>(q))
                .epsilon(1e-8));
  }

  SUBCASE("averaged cumulative R^2 equals the cumulative eigenvalue share") {
    const VarianceExplained ve = variance_explained(m.eigenvalues);
    for (std::size_t k = 0; k < 4; ++k) {
      double avg = 0.0;
      for (std::size_t i = 0; i < q; ++i) avg += t.r2(i, k);
      avg /= static_cast<double>(q);
      CHECK(avg == doctest::Approx(ve.cumulative[k]).epsilon(1e-8));
    }
  }
}

TEST_CASE("average mR2 identity holds across 20 random panels") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t q = 8 + seed % 9;
    const StandardizedPanel z = random_standardized(q, 64, seed * 31);
    const FactorModel m = estimate_factors(z, 3);
    const Mr2Table t = mr2_table(z, m);
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(t.avg_mr2[k] ==
            doctest::Approx(m.eigenvalues[k] / static_cast<double>(q))
                .epsilon(1e-8));
  }
}

TEST_CASE("top_n orders by value with mnemonic tie-break") {
  Mr2Table t;
  t.mnemonic = {"DELTA", "ALPHA", "CHARLIE", "BRAVO"};
  t.group = {0, 0, 0, 0};
  t.mr2 = Matrix(4, 1);
  t.mr2(0, 0) = 0.5;
  t.mr2(1, 0) = 0.8;
  t.mr2(2, 0) = 0.5;
  t.mr2(3, 0) = 0.2;
  t.r2 = t.mr2;

  const auto top = top_n(t, 0, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].mnemonic == "ALPHA");
  CHECK(top[1].mnemonic == "CHARLIE");  // 0.5 tie: CHARLIE < DELTA
  CHECK(top[2].mnemonic == "DELTA");
  CHECK(top[0].value == 0.8);

  CHECK(top_n(t, 0, 99).size() == 4);  // n clamps to the table
  CHECK_THROWS_AS(top_n(t, 1, 2), Error);
}

TEST_CASE("r2_ranking counts series above one half") {
  Mr2Table t;
  t.mnemonic = {"A", "B", "C", "D", "E"};
  t.group = {0, 0, 0, 0, 0};
  t.mr2 = Matrix(5, 2);
  t.r2 = Matrix(5, 2);
  const double final_r2[5] = {0.9, 0.3, 0.51, 0.5, 0.7};
  for (std::size_t i = 0; i < 5; ++i) t.r2(i, 1) = final_r2[i];

  const R2Ranking rank = r2_ranking(t);
  CHECK(rank.count_above_half == 3);  // 0.5 itself does not count
  CHECK(rank.ranked[0].mnemonic == "A");
  CHECK(rank.ranked[1].mnemonic == "E");
  CHECK(rank.ranked[2].mnemonic == "C");
  CHECK(rank.ranked[4].mnemonic == "B");
}

TEST_CASE("ranking order is stable under series permutations") {
  const StandardizedPanel z = random_standardized(12, 50, 24);
  const FactorModel m = estimate_factors(z, 3);
  const Mr2Table t = mr2_table(z, m);
  const R2Ranking a = r2_ranking(t);

  // permute the table rows; the ranked mnemonic order must not change
  Mr2Table shuffled = t;
  std::vector<std::size_t> perm(12);
  for (std::size_t i = 0; i < 12; ++i) perm[i] = (i * 5 + 3) % 12;
  for (std::size_t i = 0; i < 12; ++i) {
    shuffled.mnemonic[i] = t.mnemonic[perm[i]];
    shuffled.group[i] = t.group[perm[i]];
    for (std::size_t k = 0; k < 3; ++k) {
      shuffled.mr2(i, k) = t.mr2(perm[i], k);
      shuffled.r2(i, k) = t.r2(perm[i], k);
    }
  }
  const R2Ranking b = r2_ranking(shuffled);
  REQUIRE(a.ranked.size() == b.ranked.size());
  for (std::size_t i = 0; i < a.ranked.size(); ++i)
    CHECK(a.ranked[i].mnemonic == b.ranked[i].mnemonic);
}

TEST_CASE("diffusion indexes cumulate and difference back exactly") {
  const StandardizedPanel z = random_standardized(10, 120, 7);
  const FactorModel m = estimate_factors(z, 3);
  const DiffusionIndexSet d = diffusion_indexes(m);

  SUBCASE("levels match a plain running sum to high accuracy") {
    for (std::size_t j = 0; j < 3; ++j) {
      double run = 0.0;
      for (std::size_t t = 0; t < 120; ++t) {
        run += m.factors(j, t);
        CHECK(d.levels()(j, t) == doctest::Approx(run).epsilon(1e-12));
      }
    }
  }

  SUBCASE("first difference recovers the factors bit for bit") {
    const Matrix& back = d.first_difference();
    REQUIRE(back.rows() == m.factors.rows());
    REQUIRE(back.cols() == m.factors.cols());
    CHECK(std::memcmp(back.data(), m.factors.data(),
                      sizeof(double) * 3 * 120) == 0);
  }

  SUBCASE("exactness survives adversarial magnitudes") {
    Matrix f(1, 6);
    f(0, 0) = 1e16;
    f(0, 1) = 1.0;
    f(0, 2) = -1e16;
    f(0, 3) = 1e-16;
    f(0, 4) = 3.0;
    f(0, 5) = -2.5;
    const DiffusionIndexSet dd(f);
    CHECK(std::memcmp(dd.first_difference().data(), f.data(),
                      sizeof(double) * 6) == 0);
    // and the compensated level survives the cancellation at t = 2
    CHECK(dd.levels()(0, 2) == doctest::Approx(1.0));
  }
}

TEST_CASE("scree rows carry eigenvalues, shares, cumulative shares") {
  const std::vector<double> lam = {6.0, 3.0, 1.0};
  const auto rows = scree_data(lam);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].component == 1);
  CHECK(rows[0].eigenvalue == 6.0);
  CHECK(rows[0].share == doctest::Approx(0.6));
  CHECK(rows[1].cumulative == doctest::Approx(0.9));
  CHECK(rows[2].cumulative == doctest::Approx(1.0));
  for (std::size_t j = 1; j < 3; ++j)
    CHECK(rows[j].cumulative >= rows[j - 1].cumulative);
}
