#include "panelfa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

// Cholesky solve of the leading k x k block of g. Returns false if the
// block is not positive definite.
bool solve_leading(const Matrix& g, std::span<const double> rhs,
                   std::size_t k, std::vector<double>& sol) {
  Matrix l(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = g(i, j);
      for (std::size_t m = 0; m < j; ++m) acc -= l(i, m) * l(j, m);
      if (i == j) {
        if (acc <= 0.0) return false;
        l(i, i) = std::sqrt(acc);
      } else {
        l(i, j) = acc / l(j, j);
      }
    }
  }
  sol.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double acc = rhs[i];
    for (std::size_t m = 0; m < i; ++m) acc -= l(i, m) * sol[m];
    sol[i] = acc / l(i, i);
  }
  for (std::size_t ii = k; ii-- > 0;) {
    double acc = sol[ii];
    for (std::size_t m = ii + 1; m < k; ++m) acc -= l(m, ii) * sol[m];
    sol[ii] = acc / l(ii, ii);
  }
  return true;
}

}  // namespace

std::vector<double> r2_by_k(const StandardizedPanel& z, const FactorModel& m,
                            std::size_t i) {
  const Matrix& zv = z.panel.values;
  const std::size_t T = zv.cols();
  const std::size_t r = m.num_factors;
  if (i >= zv.rows()) throw Error("r2_by_k: series index out of range");
  if (m.factors.cols() != T)
    throw Error("r2_by_k: factor block and panel disagree on T");

  Matrix gram(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      double acc = 0.0;
      for (std::size_t t = 0; t < T; ++t)
        acc += m.factors(a, t) * m.factors(b, t);
      gram(a, b) = gram(b, a) = acc;
    }

  std::vector<double> rhs(r, 0.0);
  auto zi = zv.row(i);
  for (std::size_t a = 0; a < r; ++a) {
    double acc = 0.0;
    for (std::size_t t = 0; t < T; ++t) acc += m.factors(a, t) * zi[t];
    rhs[a] = acc;
  }
  double total = 0.0;
  for (double v : zi) total += v * v;
  if (!(total > 0.0)) throw Error("r2_by_k: series has zero variance");

  std::vector<double> out(r, 0.0);
  std::vector<double> beta;
  for (std::size_t k = 1; k <= r; ++k) {
    if (!solve_leading(gram, rhs, k, beta))
      throw Error("r2_by_k: factor Gram matrix is singular at k = " +
                  std::to_string(k));
    double explained = 0.0;
    for (std::size_t a = 0; a < k; ++a) explained += beta[a] * rhs[a];
    out[k - 1] = std::clamp(explained / total, 0.0, 1.0);
  }
  return out;
}

Mr2Table mr2_table(const StandardizedPanel& z, const FactorModel& m) {
  const std::size_t q = z.panel.n_series();
  const std::size_t r = m.num_factors;

  Mr2Table t;
  t.mnemonic.reserve(q);
  t.group.reserve(q);
  t.mr2 = Matrix(q, r);
  t.r2 = Matrix(q, r);
  t.avg_mr2.assign(r, 0.0);

  for (std::size_t i = 0; i < q; ++i) {
    t.mnemonic.push_back(z.panel.series[i].mnemonic);
    t.group.push_back(z.panel.series[i].group);
    const auto r2 = r2_by_k(z, m, i);
    double prev = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      t.r2(i, k) = r2[k];
      t.mr2(i, k) = r2[k] - prev;
      prev = r2[k];
      t.avg_mr2[k] += t.mr2(i, k);
    }
  }
  for (std::size_t k = 0; k < r; ++k)
    t.avg_mr2[k] /= static_cast<double>(q);
  return t;
}

std::vector<TopEntry> top_n(const Mr2Table& table, std::size_t k,
                            std::size_t n) {
  const std::size_t q = table.mnemonic.size();
  if (k >= table.mr2.cols()) throw Error("top_n: factor index out of range");
  std::vector<std::size_t> order(q);
  for (std::size_t i = 0; i < q; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (table.mr2(a, k) != table.mr2(b, k))
      return table.mr2(a, k) > table.mr2(b, k);
    return table.mnemonic[a] < table.mnemonic[b];
  });
  std::vector<TopEntry> out;
  for (std::size_t i = 0; i < std::min(n, q); ++i)
    out.push_back({order[i], table.mnemonic[order[i]],
                   table.mr2(order[i], k)});
  return out;
}

R2Ranking r2_ranking(const Mr2Table& table) {
  const std::size_t q = table.mnemonic.size();
  const std::size_t last = table.r2.cols() - 1;
  std::vector<std::size_t> order(q);
  for (std::size_t i = 0; i < q; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (table.r2(a, last) != table.r2(b, last))
      return table.r2(a, last) > table.r2(b, last);
    return table.mnemonic[a] < table.mnemonic[b];
  });
  R2Ranking out;
  for (std::size_t i : order) {
    const double v = table.r2(i, last);
    out.ranked.push_back({i, table.mnemonic[i], v});
    if (v > 0.5) ++out.count_above_half;
  }
  return out;
}

DiffusionIndexSet::DiffusionIndexSet(Matrix factors)
    : steps_(std::move(factors)), levels_(steps_.rows(), steps_.cols()) {
  // Neumaier running sums: levels stay accurate for long samples while the
  // original one-period steps are kept verbatim for exact differencing.
  for (std::size_t j = 0; j < steps_.rows(); ++j) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t t = 0; t < steps_.cols(); ++t) {
      const double x = steps_(j, t);
      const double next = sum + x;
      if (std::fabs(sum) >= std::fabs(x))
        comp += (sum - next) + x;
      else
        comp += (x - next) + sum;
      sum = next;
      levels_(j, t) = sum + comp;
    }
  }
}

DiffusionIndexSet diffusion_indexes(const FactorModel& m) {
  return DiffusionIndexSet(m.factors);
}

std::vector<ScreeRow> scree_data(std::span<const double> eigenvalues) {
  const VarianceExplained ve = variance_explained(eigenvalues);
  std::vector<ScreeRow> rows;
  rows.reserve(eigenvalues.size());
  for (std::size_t j = 0; j < eigenvalues.size(); ++j)
    rows.push_back({j + 1, eigenvalues[j], ve.share[j], ve.cumulative[j]});
  return rows;
}

}  // namespace panelfa
