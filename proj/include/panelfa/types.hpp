#pragma once

#include <string>

#include "panelfa/errors.hpp"

namespace panelfa {

// FRED-MD stationarity transform codes.
//   1: x            2: dx           3: d^2 x
//   4: log x        5: d log x      6: d^2 log x
//   7: d(x_t / x_{t-1} - 1)
enum class TransformCode : int {
  level = 1,
  diff = 2,
  diff2 = 3,
  log_level = 4,
  log_diff = 5,
  log_diff2 = 6,
  ratio_diff = 7,
};

inline TransformCode transform_code_from_int(int v) {
  if (v < 1 || v > 7)
    throw Error("invalid transform code " + std::to_string(v) +
                " (expected 1..7)");
  return static_cast<TransformCode>(v);
}

inline int to_int(TransformCode c) { return static_cast<int>(c); }

// Observations consumed from the front of a series by differencing.
inline int leading_missing(TransformCode c) {
  switch (c) {
    case TransformCode::level:
    case TransformCode::log_level:
      return 0;
    case TransformCode::diff:
    case TransformCode::log_diff:
      return 1;
    case TransformCode::diff2:
    case TransformCode::log_diff2:
    case TransformCode::ratio_diff:
      return 2;
  }
  return 0;
}

// Codes 4..7 take logs or ratios and need strictly positive input.
inline bool requires_positive(TransformCode c) { return to_int(c) >= 4; }

struct SeriesMeta {
  int id = 0;  // 0 when no sidecar metadata was attached
  std::string mnemonic;
  TransformCode tcode = TransformCode::level;
  int group = 0;  // 0 when no sidecar metadata was attached
  std::string description;
};

}  // namespace panelfa
