#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "panelfa/matrix.hpp"
#include "panelfa/month.hpp"
#include "panelfa/types.hpp"

namespace panelfa {

// Missing observations are stored as quiet NaN.
inline double missing_value() {
  return std::numeric_limits<double>::quiet_NaN();
}

inline bool is_missing(double v) { return std::isnan(v); }

// A panel of monthly series: values(i, t) is series i at dates[t].
// Invariants: dates are consecutive months, mnemonics are unique,
// values is n_series x n_periods.
struct Panel {
  std::vector<Month> dates;
  std::vector<SeriesMeta> series;
  Matrix values;

  std::size_t n_series() const { return series.size(); }
  std::size_t n_periods() const { return dates.size(); }

  std::optional<std::size_t> find(std::string_view mnemonic) const {
    for (std::size_t i = 0; i < series.size(); ++i)
      if (series[i].mnemonic == mnemonic) return i;
    return std::nullopt;
  }

  std::size_t missing_count(std::size_t i) const {
    std::size_t n = 0;
    for (std::size_t t = 0; t < n_periods(); ++t)
      if (is_missing(values(i, t))) ++n;
    return n;
  }

  // Throws Error if any structural invariant is broken.
  void check_invariants() const;
};

// Result of standardize(): panel.values holds z-scores (zero mean, unit
// variance in the 1/T convention), mean/sd hold the removed moments.
struct StandardizedPanel {
  Panel panel;
  std::vector<double> mean;
  std::vector<double> sd;
};

}  // namespace panelfa
