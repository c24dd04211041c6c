#include "panelfa/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffdiagTol = 1e-12;

double threshold_scale(const Matrix& a) {
  const std::size_t n = a.rows();
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag += std::fabs(a(i, i));
  if (diag > 0.0) return diag / static_cast<double>(n);
  double mx = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mx = std::max(mx, std::fabs(a(i, j)));
  return mx;  // zero only for the all-zero matrix
}

void check_input(const Matrix& s) {
  if (s.rows() != s.cols())
    throw Error("sym_eigen needs a square matrix, got " +
                std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  if (s.rows() == 0) throw Error("sym_eigen needs a non-empty matrix");
  double mx = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (!std::isfinite(s(i, j)))
        throw Error("sym_eigen input has a non-finite entry at (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
      mx = std::max(mx, std::fabs(s(i, j)));
    }
  const double tol = 1e-8 * std::max(1.0, mx);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      if (std::fabs(s(i, j) - s(j, i)) > tol)
        throw Error("sym_eigen input is not symmetric at (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix& s) {
  check_input(s);
  const std::size_t n = s.rows();

  Matrix a = s;
  // enforce exact symmetry so the rotations stay consistent
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = v;
    }

  Matrix v(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const double thresh = kOffdiagTol * threshold_scale(a);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= thresh) continue;
        ++rotations;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) /
            (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - sn * akq;
          a(k, q) = a(q, k) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
    if (rotations == 0) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return a(x, x) > a(y, y);
                   });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a(src, src);
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::fabs(v(i, src));
      if (mag > best) {  // strict: ties keep the lowest index
        best = mag;
        arg = i;
      }
    }
    const double flip = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, j) = flip * v(i, src);
  }
  return out;
}

}  // namespace panelfa
