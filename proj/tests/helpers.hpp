#pragma once

// Small builders shared by the unit tests.

#include <cstdio>
#include <random>
#include <string>

#include "panelfa/panel.hpp"
#include "panelfa/transform.hpp"

namespace test_helpers {

inline panelfa::Panel random_panel(std::size_t q, std::size_t T,
                                   std::uint64_t seed) {
  panelfa::Panel p;
  panelfa::Month m{2000, 1};
  for (std::size_t t = 0; t < T; ++t) {
    p.dates.push_back(m);
    m = m.next();
  }
  p.series.resize(q);
  char buf[32];
  for (std::size_t i = 0; i < q; ++i) {
    std::snprintf(buf, sizeof buf, "X%03zu", i + 1);
    p.series[i].mnemonic = buf;
    p.series[i].tcode = panelfa::TransformCode::level;
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  p.values = panelfa::Matrix(q, T);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t t = 0; t < T; ++t) p.values(i, t) = n(gen);
  return p;
}

inline panelfa::StandardizedPanel random_standardized(std::size_t q,
                                                      std::size_t T,
                                                      std::uint64_t seed) {
  return panelfa::standardize(random_panel(q, T, seed));
}

// Panel driven by `r` common factors plus iid noise of scale noise_sd.
inline panelfa::Panel factor_panel(std::size_t q, std::size_t T,
                                   std::size_t r, double noise_sd,
                                   std::uint64_t seed) {
  panelfa::Panel p = random_panel(q, T, seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> n(0.0, 1.0);
  panelfa::Matrix lambda(q, r), f(r, T);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < r; ++j) lambda(i, j) = n(gen);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t t = 0; t < T; ++t) f(j, t) = n(gen);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      double acc = 0.0;
      for (std::size_t j = 0; j < r; ++j) acc += lambda(i, j) * f(j, t);
      p.values(i, t) = acc + noise_sd * p.values(i, t);
    }
  return p;
}

}  // namespace test_helpers
