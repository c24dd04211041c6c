#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "panelfa/eigen_sym.hpp"
#include "panelfa/panel.hpp"

namespace panelfa {

// Sample covariance S = Z Z' / T of the standardized panel. Each unordered
// pair is accumulated once and mirrored.
Matrix covariance(const StandardizedPanel& z);

// Principal-component factor estimates for a q x T standardized panel:
//   loadings  = sqrt(q) * U_r          (q x r)
//   factors   = loadings' Z / q        (r x T)
//   residuals = Z - loadings * factors (q x T)
// eigenvalues keeps the full spectrum of S for downstream diagnostics.
struct FactorModel {
  std::size_t num_factors = 0;
  Matrix loadings;
  Matrix factors;
  Matrix residuals;
  std::vector<double> eigenvalues;
};

// Estimates an r-factor model; 1 <= r <= min(q, T). The second overload
// reuses a decomposition of covariance(z) computed by the caller.
FactorModel estimate_factors(const StandardizedPanel& z, std::size_t r);
FactorModel estimate_factors(const StandardizedPanel& z, std::size_t r,
                             const EigenDecomposition& eig);

// Optional post-hoc renormalization: factor rows rescaled to unit 1/T
// variance with loadings scaled inversely, leaving loadings * factors
// unchanged. Off by default everywhere; the plain estimates above follow
// the eigenvalue scaling.
FactorModel with_unit_variance_factors(FactorModel m);

// Per-component shares lambda_j / sum(lambda) and their running total.
struct VarianceExplained {
  std::vector<double> share;
  std::vector<double> cumulative;
};

VarianceExplained variance_explained(std::span<const double> eigenvalues);

}  // namespace panelfa
