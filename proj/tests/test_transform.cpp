#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "panelfa/errors.hpp"
#include "panelfa/transform.hpp"

using namespace panelfa;

namespace {

std::vector<double> random_series(std::mt19937_64& gen, std::size_t n,
                                  bool positive) {
  std::uniform_real_distribution<double> u(positive ? 0.5 : -2.0, 2.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(gen);
  return x;
}

}  // namespace

TEST_CASE("tcode semantics on hand-computed examples") {
  const double e1 = std::exp(1.0);

  SUBCASE("code 1 is the identity") {
    auto y = apply_tcode(std::vector<double>{1.0, 2.0, 3.0},
                         TransformCode::level);
    CHECK(y == std::vector<double>{1.0, 2.0, 3.0});
  }
  SUBCASE("code 2 first-differences") {
    auto y = apply_tcode(std::vector<double>{5.0, 7.0, 4.0},
                         TransformCode::diff);
    REQUIRE(y.size() == 3);
    CHECK(is_missing(y[0]));
    CHECK(y[1] == 2.0);
    CHECK(y[2] == -3.0);
  }
  SUBCASE("code 3 double-differences") {
    auto y = apply_tcode(std::vector<double>{1.0, 4.0, 9.0, 16.0},
                         TransformCode::diff2);
    CHECK(is_missing(y[0]));
    CHECK(is_missing(y[1]));
    CHECK(y[2] == doctest::Approx(2.0));
    CHECK(y[3] == doctest::Approx(2.0));
  }
  SUBCASE("code 4 takes logs") {
    auto y = apply_tcode(std::vector<double>{1.0, e1}, TransformCode::log_level);
    CHECK(y[0] == doctest::Approx(0.0));
    CHECK(y[1] == doctest::Approx(1.0));
  }
  SUBCASE("code 5 log-differences") {
    auto y = apply_tcode(std::vector<double>{1.0, e1, e1 * e1},
                         TransformCode::log_diff);
    CHECK(is_missing(y[0]));
    CHECK(y[1] == doctest::Approx(1.0));
    CHECK(y[2] == doctest::Approx(1.0));
  }
  SUBCASE("code 6 double log-differences") {
    auto y = apply_tcode(std::vector<double>{1.0, 2.0, 4.0, 8.0},
                         TransformCode::log_diff2);
    CHECK(is_missing(y[0]));
    CHECK(is_missing(y[1]));
    CHECK(y[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(y[3] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("code 7 differences the gross growth rate") {
    auto y = apply_tcode(std::vector<double>{100.0, 110.0, 121.0},
                         TransformCode::ratio_diff);
    CHECK(is_missing(y[0]));
    CHECK(is_missing(y[1]));
    CHECK(y[2] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("transform properties") {
  std::mt19937_64 gen(42);

  SUBCASE("length is preserved and leading cells go missing per code") {
    for (int code = 1; code <= 7; ++code) {
      const TransformCode tc = transform_code_from_int(code);
      auto x = random_series(gen, 40, requires_positive(tc));
      auto y = apply_tcode(x, tc);
      REQUIRE(y.size() == x.size());
      const int lead = leading_missing(tc);
      for (int t = 0; t < lead; ++t) CHECK(is_missing(y[t]));
      for (std::size_t t = lead; t < y.size(); ++t)
        CHECK(!is_missing(y[t]));
    }
  }

  SUBCASE("code 2 round-trips by cumulation from the anchor") {
    auto x = random_series(gen, 60, false);
    auto d = apply_tcode(x, TransformCode::diff);
    double level = x[0];
    for (std::size_t t = 1; t < x.size(); ++t) {
      level += d[t];
      CHECK(level == doctest::Approx(x[t]).epsilon(1e-10));
    }
  }

  SUBCASE("code 5 round-trips by exponential cumulation") {
    auto x = random_series(gen, 60, true);
    auto d = apply_tcode(x, TransformCode::log_diff);
    double level = x[0];
    for (std::size_t t = 1; t < x.size(); ++t) {
      level *= std::exp(d[t]);
      CHECK(level == doctest::Approx(x[t]).epsilon(1e-10));
    }
  }

  SUBCASE("missing values propagate through differencing") {
    std::vector<double> x = {1.0, 2.0, missing_value(), 4.0, 5.0};
    auto y = apply_tcode(x, TransformCode::diff);
    CHECK(is_missing(y[0]));
    CHECK(y[1] == 1.0);
    CHECK(is_missing(y[2]));
    CHECK(is_missing(y[3]));
    CHECK(y[4] == 1.0);
  }

  SUBCASE("codes needing positivity reject non-positive values") {
    std::vector<double> x = {1.0, -1.0, 2.0};
    for (int code = 4; code <= 7; ++code)
      CHECK_THROWS_AS(apply_tcode(x, transform_code_from_int(code)), Error);
    std::vector<double> zero = {1.0, 0.0, 2.0};
    CHECK_THROWS_AS(apply_tcode(zero, TransformCode::log_level), Error);
    // missing cells are exempt from the positivity requirement
    std::vector<double> with_gap = {1.0, missing_value(), 2.0};
    CHECK_NOTHROW(apply_tcode(with_gap, TransformCode::log_level));
  }
}

TEST_CASE("transform_panel applies each series' own code") {
  Panel p;
  p.dates = {Month{2020, 1}, Month{2020, 2}, Month{2020, 3}};
  p.series.resize(2);
  p.series[0] = {1, "A", TransformCode::level, 0, ""};
  p.series[1] = {2, "B", TransformCode::log_diff, 0, ""};
  p.values = Matrix(2, 3);
  p.values(0, 0) = 5.0;
  p.values(0, 1) = 6.0;
  p.values(0, 2) = 7.0;
  p.values(1, 0) = 1.0;
  p.values(1, 1) = std::exp(1.0);
  p.values(1, 2) = std::exp(2.0);

  Panel tx = transform_panel(p);
  CHECK(tx.n_series() == 2);
  CHECK(tx.n_periods() == 3);
  CHECK(tx.values(0, 0) == 5.0);
  CHECK(is_missing(tx.values(1, 0)));
  CHECK(tx.values(1, 1) == doctest::Approx(1.0));
  CHECK(tx.series[1].tcode == TransformCode::log_diff);

  // positivity failures carry the series name
  p.values(1, 1) = -3.0;
  try {
    transform_panel(p);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'B'") != std::string::npos);
  }
}
