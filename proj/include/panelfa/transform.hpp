#pragma once

#include <span>
#include <vector>

#include "panelfa/panel.hpp"

namespace panelfa {

// Applies one transform code to a series. Output has the same length as the
// input; observations consumed by differencing come back missing, and
// missing inputs propagate. Codes 4..7 throw Error on a non-positive
// non-missing value.
std::vector<double> apply_tcode(std::span<const double> x, TransformCode code);

// Applies each series' own tcode. Shape and metadata are preserved.
// Transformation happens on the full sample, before any windowing, so
// differences may draw on observations outside a later analysis window.
Panel transform_panel(const Panel& raw);

// Window [start, end] inclusive, minus the dropped mnemonics, in original
// series order. Preconditions: start <= end, both inside the panel's date
// range, every drop entry names a known series. Fails if any missing value
// remains in the result (the panel would not be balanced).
Panel extract_balanced(const Panel& transformed, Month start, Month end,
                       std::span<const std::string> drop);

// Removes per-series mean and scales by the 1/T standard deviation, so a
// q-series result has covariance trace q. Throws on missing values or on a
// series with vanishing variance.
StandardizedPanel standardize(const Panel& balanced);

}  // namespace panelfa
