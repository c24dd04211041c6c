#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "panelfa/factor.hpp"
#include "panelfa/panel.hpp"

namespace panelfa {

enum class Penalty { g1, g2, g3 };

const char* penalty_name(Penalty p);
Penalty penalty_from_name(const std::string& name);

// Penalty weight g(q, T) used by the information criterion:
//   g1 = (q+T)/(qT) * log(qT/(q+T))
//   g2 = (q+T)/(qT) * log(min(q,T))
//   g3 = log(min(q,T)) / min(q,T)
double penalty_value(Penalty p, std::size_t q, std::size_t T);

// Mean squared residual below which a fit counts as exact: the criterion
// value is then -infinity (reported as such, never passed through log).
inline constexpr double kExactFitThreshold = 1e-10;

// IC(r) = log(SSR(r) / (qT)) + r * g(q, T) with SSR from the r-factor
// residuals. Returns -infinity on an exact fit.
double ic_value(const StandardizedPanel& z, std::size_t r, Penalty p);
double ic_value(const StandardizedPanel& z, std::size_t r, Penalty p,
                const EigenDecomposition& eig);

// IC curves over r = 1..rmax and their minimizers. Ties take the smallest r,
// so a run of exact fits selects the first rank that attains one.
struct IcReport {
  std::size_t q = 0;
  std::size_t T = 0;
  std::size_t rmax = 0;
  std::vector<double> ic_g1, ic_g2, ic_g3;  // index r-1
  std::size_t rhat_g1 = 0, rhat_g2 = 0, rhat_g3 = 0;
  std::size_t selected = 0;  // rhat under g1, the default choice

  std::size_t rhat(Penalty p) const;
  const std::vector<double>& curve(Penalty p) const;
};

// Precondition: 1 <= rmax <= min(q, T) - 1.
IcReport select_num_factors(const StandardizedPanel& z, std::size_t rmax);
IcReport select_num_factors(const StandardizedPanel& z, std::size_t rmax,
                            const EigenDecomposition& eig);

}  // namespace panelfa
