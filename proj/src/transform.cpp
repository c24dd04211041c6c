#include "panelfa/transform.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

void check_positive(std::span<const double> x, TransformCode code) {
  if (!requires_positive(code)) return;
  for (std::size_t t = 0; t < x.size(); ++t)
    if (!is_missing(x[t]) && x[t] <= 0.0)
      throw Error("transform code " + std::to_string(to_int(code)) +
                  " needs strictly positive values, got " +
                  std::to_string(x[t]) + " at position " + std::to_string(t));
}

}  // namespace

std::vector<double> apply_tcode(std::span<const double> x,
                                TransformCode code) {
  check_positive(x, code);
  const std::size_t n = x.size();
  std::vector<double> out(n, missing_value());
  switch (code) {
    case TransformCode::level:
      std::copy(x.begin(), x.end(), out.begin());
      break;
    case TransformCode::diff:
      for (std::size_t t = 1; t < n; ++t) out[t] = x[t] - x[t - 1];
      break;
    case TransformCode::diff2:
      for (std::size_t t = 2; t < n; ++t)
        out[t] = x[t] - 2.0 * x[t - 1] + x[t - 2];
      break;
    case TransformCode::log_level:
      for (std::size_t t = 0; t < n; ++t)
        out[t] = is_missing(x[t]) ? missing_value() : std::log(x[t]);
      break;
    case TransformCode::log_diff:
      for (std::size_t t = 1; t < n; ++t)
        out[t] = std::log(x[t]) - std::log(x[t - 1]);
      break;
    case TransformCode::log_diff2:
      for (std::size_t t = 2; t < n; ++t)
        out[t] = std::log(x[t]) - 2.0 * std::log(x[t - 1]) +
                 std::log(x[t - 2]);
      break;
    case TransformCode::ratio_diff:
      for (std::size_t t = 2; t < n; ++t)
        out[t] = x[t] / x[t - 1] - x[t - 1] / x[t - 2];
      break;
  }
  return out;
}

Panel transform_panel(const Panel& raw) {
  raw.check_invariants();
  Panel out;
  out.dates = raw.dates;
  out.series = raw.series;
  out.values = Matrix(raw.n_series(), raw.n_periods());
  for (std::size_t i = 0; i < raw.n_series(); ++i) {
    std::vector<double> tx;
    try {
      tx = apply_tcode(raw.values.row(i), raw.series[i].tcode);
    } catch (const Error& e) {
      throw Error("series '" + raw.series[i].mnemonic + "': " + e.what());
    }
    for (std::size_t t = 0; t < tx.size(); ++t) out.values(i, t) = tx[t];
  }
  return out;
}

Panel extract_balanced(const Panel& transformed, Month start, Month end,
                       std::span<const std::string> drop) {
  transformed.check_invariants();
  if (transformed.n_periods() == 0) throw ConfigError("panel has no periods");
  if (start > end)
    throw ConfigError("window start " + start.to_string() +
                      " is after end " + end.to_string());
  const Month first = transformed.dates.front();
  const Month last = transformed.dates.back();
  if (start < first || end > last)
    throw ConfigError("window " + start.to_string() + ".." + end.to_string() +
                      " is outside the panel range " + first.to_string() +
                      ".." + last.to_string());

  std::set<std::string> dropset;
  for (const auto& d : drop) {
    if (!transformed.find(d))
      throw ConfigError("drop list names unknown series '" + d + "'");
    dropset.insert(d);
  }

  const std::size_t t0 =
      static_cast<std::size_t>(months_between(first, start));
  const std::size_t T =
      static_cast<std::size_t>(months_between(start, end)) + 1;

  Panel out;
  out.dates.assign(transformed.dates.begin() + t0,
                   transformed.dates.begin() + t0 + T);
  for (std::size_t i = 0; i < transformed.n_series(); ++i)
    if (!dropset.contains(transformed.series[i].mnemonic))
      out.series.push_back(transformed.series[i]);
  if (out.series.empty())
    throw ConfigError("drop list removes every series");

  out.values = Matrix(out.series.size(), T);
  std::size_t row = 0;
  std::vector<std::string> incomplete;
  for (std::size_t i = 0; i < transformed.n_series(); ++i) {
    if (dropset.contains(transformed.series[i].mnemonic)) continue;
    std::size_t holes = 0;
    for (std::size_t t = 0; t < T; ++t) {
      double v = transformed.values(i, t0 + t);
      out.values(row, t) = v;
      if (is_missing(v)) ++holes;
    }
    if (holes > 0)
      incomplete.push_back(transformed.series[i].mnemonic + " (" +
                           std::to_string(holes) + " missing)");
    ++row;
  }
  if (!incomplete.empty()) {
    std::string msg = "window " + start.to_string() + ".." + end.to_string() +
                      " is not balanced; " +
                      std::to_string(incomplete.size()) +
                      " series have missing values:";
    for (const auto& s : incomplete) msg += " " + s;
    throw Error(msg);
  }
  return out;
}

StandardizedPanel standardize(const Panel& balanced) {
  balanced.check_invariants();
  const std::size_t q = balanced.n_series();
  const std::size_t T = balanced.n_periods();
  if (T == 0) throw Error("cannot standardize an empty panel");

  StandardizedPanel out;
  out.panel.dates = balanced.dates;
  out.panel.series = balanced.series;
  out.panel.values = Matrix(q, T);
  out.mean.resize(q);
  out.sd.resize(q);

  for (std::size_t i = 0; i < q; ++i) {
    auto row = balanced.values.row(i);
    double sum = 0.0;
    for (double v : row) {
      if (is_missing(v))
        throw Error("cannot standardize series '" +
                    balanced.series[i].mnemonic +
                    "' with missing values");
      sum += v;
    }
    const double mean = sum / static_cast<double>(T);
    double ss = 0.0;
    for (double v : row) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(T));
    if (!(sd > 1e-12))
      throw Error("series '" + balanced.series[i].mnemonic +
                  "' is (numerically) constant and cannot be standardized");
    out.mean[i] = mean;
    out.sd[i] = sd;
    for (std::size_t t = 0; t < T; ++t)
      out.panel.values(i, t) = (row[t] - mean) / sd;
  }
  return out;
}

}  // namespace panelfa
