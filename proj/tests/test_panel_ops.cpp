#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "panelfa/errors.hpp"
#include "panelfa/transform.hpp"

using namespace panelfa;

namespace {

// 4 series over 2020-01..2020-12; "GAPPY" is missing mid-year.
Panel sample_panel() {
  Panel p;
  Month m{2020, 1};
  for (int t = 0; t < 12; ++t) {
    p.dates.push_back(m);
    m = m.next();
  }
  const std::vector<std::string> names = {"AAA", "BBB", "CCC", "GAPPY"};
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  p.series.resize(4);
  p.values = Matrix(4, 12);
  for (std::size_t i = 0; i < 4; ++i) {
    p.series[i].mnemonic = names[i];
    p.series[i].tcode = TransformCode::level;
    for (std::size_t t = 0; t < 12; ++t)
      p.values(i, t) = u(gen) + static_cast<double>(i);
  }
  p.values(3, 5) = missing_value();
  return p;
}

}  // namespace

TEST_CASE("extract_balanced windows, drops, and demands completeness") {
  const Panel p = sample_panel();
  const std::vector<std::string> drop = {"GAPPY"};

  SUBCASE("happy path keeps order and subsets dates") {
    Panel w = extract_balanced(p, Month{2020, 3}, Month{2020, 8}, drop);
    CHECK(w.n_series() == 3);
    CHECK(w.n_periods() == 6);
    CHECK(w.dates.front() == Month{2020, 3});
    CHECK(w.dates.back() == Month{2020, 8});
    CHECK(w.series[0].mnemonic == "AAA");
    CHECK(w.series[2].mnemonic == "CCC");
    CHECK(w.values(1, 0) == p.values(1, 2));
    CHECK(w.values(2, 5) == p.values(2, 7));
  }

  SUBCASE("a missing cell inside the window fails with the series named") {
    try {
      extract_balanced(p, Month{2020, 3}, Month{2020, 8}, {});
      FAIL("expected Error");
    } catch (const Error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("GAPPY") != std::string::npos);
      CHECK(msg.find("not balanced") != std::string::npos);
    }
  }

  SUBCASE("window touching only complete months needs no drop") {
    Panel w = extract_balanced(p, Month{2020, 7}, Month{2020, 12}, {});
    CHECK(w.n_series() == 4);
    CHECK(w.n_periods() == 6);
  }

  SUBCASE("precondition violations are config errors") {
    CHECK_THROWS_AS(
        extract_balanced(p, Month{2020, 8}, Month{2020, 3}, drop),
        ConfigError);
    CHECK_THROWS_AS(
        extract_balanced(p, Month{2019, 12}, Month{2020, 8}, drop),
        ConfigError);
    CHECK_THROWS_AS(
        extract_balanced(p, Month{2020, 3}, Month{2021, 1}, drop),
        ConfigError);
    const std::vector<std::string> unknown = {"NOPE"};
    CHECK_THROWS_AS(
        extract_balanced(p, Month{2020, 3}, Month{2020, 8}, unknown),
        ConfigError);
    const std::vector<std::string> all = {"AAA", "BBB", "CCC", "GAPPY"};
    CHECK_THROWS_AS(extract_balanced(p, Month{2020, 3}, Month{2020, 8}, all),
                    ConfigError);
  }
}

TEST_CASE("standardize centers and scales in the 1/T convention") {
  const Panel p = sample_panel();
  const std::vector<std::string> drop_gappy = {"GAPPY"};
  Panel w = extract_balanced(p, Month{2020, 1}, Month{2020, 12}, drop_gappy);
  StandardizedPanel z = standardize(w);
  const std::size_t T = w.n_periods();

  for (std::size_t i = 0; i < z.panel.n_series(); ++i) {
    double sum = 0.0, ss = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      sum += z.panel.values(i, t);
      ss += z.panel.values(i, t) * z.panel.values(i, t);
    }
    CHECK(sum / static_cast<double>(T) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ss / static_cast<double>(T) == doctest::Approx(1.0).epsilon(1e-12));

    // moments recorded match a direct computation
    double mean = 0.0;
    for (std::size_t t = 0; t < T; ++t) mean += w.values(i, t);
    mean /= static_cast<double>(T);
    double var = 0.0;
    for (std::size_t t = 0; t < T; ++t)
      var += (w.values(i, t) - mean) * (w.values(i, t) - mean);
    CHECK(z.mean[i] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(z.sd[i] ==
          doctest::Approx(std::sqrt(var / static_cast<double>(T)))
              .epsilon(1e-12));
  }

  SUBCASE("un-standardizing recovers the input") {
    for (std::size_t i = 0; i < z.panel.n_series(); ++i)
      for (std::size_t t = 0; t < T; ++t) {
        const double back = z.panel.values(i, t) * z.sd[i] + z.mean[i];
        CHECK(back == doctest::Approx(w.values(i, t)).epsilon(1e-10));
      }
  }

  SUBCASE("constant series are rejected") {
    Panel flat = w;
    for (std::size_t t = 0; t < T; ++t) flat.values(0, t) = 3.25;
    CHECK_THROWS_AS(standardize(flat), Error);
  }

  SUBCASE("missing values are rejected") {
    Panel holey = w;
    holey.values(1, 4) = missing_value();
    CHECK_THROWS_AS(standardize(holey), Error);
  }
}
