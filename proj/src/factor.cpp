#include "panelfa/factor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "panelfa/errors.hpp"

namespace panelfa {

Matrix covariance(const StandardizedPanel& z) {
  const Matrix& zv = z.panel.values;
  const std::size_t q = zv.rows();
  const std::size_t T = zv.cols();
  if (q == 0 || T == 0) throw Error("covariance of an empty panel");

  Matrix s(q, q);
  for (std::size_t i = 0; i < q; ++i) {
    auto ri = zv.row(i);
    for (std::size_t j = i; j < q; ++j) {  // once per unordered pair
      auto rj = zv.row(j);
      double acc = 0.0;
      for (std::size_t t = 0; t < T; ++t) acc += ri[t] * rj[t];
      const double v = acc / static_cast<double>(T);
      s(i, j) = s(j, i) = v;
    }
  }
  return s;
}

FactorModel estimate_factors(const StandardizedPanel& z, std::size_t r) {
  return estimate_factors(z, r, sym_eigen(covariance(z)));
}

FactorModel estimate_factors(const StandardizedPanel& z, std::size_t r,
                             const EigenDecomposition& eig) {
  const Matrix& zv = z.panel.values;
  const std::size_t q = zv.rows();
  const std::size_t T = zv.cols();
  if (r == 0) throw Error("estimate_factors needs r >= 1");
  if (r > std::min(q, T))
    throw Error("estimate_factors: r = " + std::to_string(r) +
                " exceeds min(q, T) = " + std::to_string(std::min(q, T)));
  if (eig.eigenvalues.size() != q)
    throw Error("estimate_factors: eigendecomposition size mismatch");

  FactorModel m;
  m.num_factors = r;
  m.eigenvalues = eig.eigenvalues;

  const double sq = std::sqrt(static_cast<double>(q));
  m.loadings = Matrix(q, r);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < r; ++j)
      m.loadings(i, j) = sq * eig.eigenvectors(i, j);

  m.factors = Matrix(r, T);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t t = 0; t < T; ++t) {
      double acc = 0.0;
      for (std::size_t i = 0; i < q; ++i)
        acc += m.loadings(i, j) * zv(i, t);
      m.factors(j, t) = acc / static_cast<double>(q);
    }

  m.residuals = Matrix(q, T);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      double fit = 0.0;
      for (std::size_t j = 0; j < r; ++j)
        fit += m.loadings(i, j) * m.factors(j, t);
      m.residuals(i, t) = zv(i, t) - fit;
    }
  return m;
}

FactorModel with_unit_variance_factors(FactorModel m) {
  const std::size_t T = m.factors.cols();
  for (std::size_t j = 0; j < m.num_factors; ++j) {
    double ss = 0.0;
    for (std::size_t t = 0; t < T; ++t)
      ss += m.factors(j, t) * m.factors(j, t);
    const double sd = std::sqrt(ss / static_cast<double>(T));
    if (!(sd > 0.0))
      throw Error("factor " + std::to_string(j + 1) +
                  " has zero variance; cannot renormalize");
    for (std::size_t t = 0; t < T; ++t) m.factors(j, t) /= sd;
    for (std::size_t i = 0; i < m.loadings.rows(); ++i)
      m.loadings(i, j) *= sd;
  }
  return m;
}

VarianceExplained variance_explained(std::span<const double> eigenvalues) {
  if (eigenvalues.empty()) throw Error("variance_explained of empty spectrum");
  double total = 0.0;
  for (double v : eigenvalues) total += v;
  if (!(total > 0.0)) throw Error("variance_explained: non-positive trace");

  VarianceExplained out;
  out.share.reserve(eigenvalues.size());
  out.cumulative.reserve(eigenvalues.size());
  double run = 0.0;
  for (double v : eigenvalues) {
    const double s = v / total;
    run += s;
    out.share.push_back(s);
    out.cumulative.push_back(std::min(run, 1.0));
  }
  return out;
}

}  // namespace panelfa
