#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "panelfa/factor.hpp"
#include "panelfa/panel.hpp"

namespace panelfa {

// R^2 of series i regressed on the first k factors, for k = 1..r. Genuine
// least squares on the factor block (normal equations via Cholesky), not an
// eigenvalue shortcut, so it stays meaningful for any regressor set.
std::vector<double> r2_by_k(const StandardizedPanel& z, const FactorModel& m,
                            std::size_t i);

// Per-series variance attribution. mr2(i, k) is the increment from adding
// factor k+1; r2(i, k) is the cumulative R^2 through that factor. Rows of
// mr2 sum to the final column of r2.
struct Mr2Table {
  std::vector<std::string> mnemonic;
  std::vector<int> group;
  Matrix mr2;
  Matrix r2;
  std::vector<double> avg_mr2;  // per factor, averaged over series
};

Mr2Table mr2_table(const StandardizedPanel& z, const FactorModel& m);

struct TopEntry {
  std::size_t index = 0;
  std::string mnemonic;
  double value = 0.0;
};

// Largest incremental shares for factor k (0-based), ordered by value
// descending with ties broken by mnemonic. n is clamped to the table size.
std::vector<TopEntry> top_n(const Mr2Table& table, std::size_t k,
                            std::size_t n);

// All series ordered by final cumulative R^2, plus how many exceed one half.
struct R2Ranking {
  std::vector<TopEntry> ranked;
  std::size_t count_above_half = 0;
};

R2Ranking r2_ranking(const Mr2Table& table);

// Cumulative sums of each factor series. Levels are accumulated with
// compensated summation; the exact one-period differences are retained so
// differencing the indexes reproduces the factors bit for bit.
class DiffusionIndexSet {
 public:
  explicit DiffusionIndexSet(Matrix factors);

  const Matrix& levels() const { return levels_; }
  const Matrix& first_difference() const { return steps_; }

  std::size_t num_factors() const { return steps_.rows(); }
  std::size_t n_periods() const { return steps_.cols(); }

 private:
  Matrix steps_;   // the factor series themselves
  Matrix levels_;  // running compensated sums
};

DiffusionIndexSet diffusion_indexes(const FactorModel& m);

// One scree plot row per component.
struct ScreeRow {
  std::size_t component = 0;  // 1-based
  double eigenvalue = 0.0;
  double share = 0.0;
  double cumulative = 0.0;
};

std::vector<ScreeRow> scree_data(std::span<const double> eigenvalues);

}  // namespace panelfa
