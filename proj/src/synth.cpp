#include "panelfa/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "panelfa/eigen_sym.hpp"
#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

// Box-Muller on 53-bit uniforms from mt19937_64. Fixing the generator and
// the mapping (rather than std::normal_distribution, whose stream is
// implementation-defined) makes panels reproducible from the seed alone.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Matrix draw(NormalSource& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng();
  return m;
}

// Solves g * x = rhs for symmetric positive definite g via its spectrum.
// Throws if g is numerically rank deficient.
Matrix spd_solve(const Matrix& g, const Matrix& rhs) {
  const EigenDecomposition eig = sym_eigen(g);
  const std::size_t n = g.rows();
  const double cutoff = 1e-12 * eig.eigenvalues.front();
  for (double v : eig.eigenvalues)
    if (!(v > cutoff))
      throw Error("subspace_fit: factor block is rank deficient");

  // x = V diag(1/lambda) V' rhs
  Matrix vt_rhs(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.eigenvectors(k, i) * rhs(k, j);
      vt_rhs(i, j) = acc / eig.eigenvalues[i];
    }
  Matrix x(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.eigenvectors(i, k) * vt_rhs(k, j);
      x(i, j) = acc;
    }
  return x;
}

Matrix cross(const Matrix& a, const Matrix& b) {  // (1/T) A B'
  const std::size_t T = a.cols();
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < T; ++t) acc += a(i, t) * b(j, t);
      c(i, j) = acc / static_cast<double>(T);
    }
  return c;
}

}  // namespace

SynthPanel generate(const SynthSpec& spec) {
  if (spec.q == 0 || spec.T == 0)
    throw ConfigError("generate: q and T must be positive");
  if (spec.r == 0 || spec.r > std::min(spec.q, spec.T))
    throw ConfigError("generate: r must satisfy 1 <= r <= min(q, T)");
  if (spec.noise_sd < 0.0)
    throw ConfigError("generate: noise_sd must be non-negative");

  NormalSource rng(spec.seed);
  SynthPanel out;
  out.loadings = draw(rng, spec.q, spec.r);
  out.factors = draw(rng, spec.r, spec.T);

  out.panel.values = Matrix(spec.q, spec.T);
  for (std::size_t i = 0; i < spec.q; ++i)
    for (std::size_t t = 0; t < spec.T; ++t) {
      double acc = 0.0;
      for (std::size_t j = 0; j < spec.r; ++j)
        acc += out.loadings(i, j) * out.factors(j, t);
      out.panel.values(i, t) = acc;
    }
  if (spec.noise_sd > 0.0)
    for (std::size_t i = 0; i < spec.q; ++i)
      for (std::size_t t = 0; t < spec.T; ++t)
        out.panel.values(i, t) += spec.noise_sd * rng();

  out.panel.dates.reserve(spec.T);
  Month m{2000, 1};
  for (std::size_t t = 0; t < spec.T; ++t) {
    out.panel.dates.push_back(m);
    m = m.next();
  }
  out.panel.series.resize(spec.q);
  char buf[32];
  for (std::size_t i = 0; i < spec.q; ++i) {
    std::snprintf(buf, sizeof buf, "S%04zu", i + 1);
    out.panel.series[i].mnemonic = buf;
    out.panel.series[i].id = static_cast<int>(i + 1);
    out.panel.series[i].tcode = TransformCode::level;
  }
  return out;
}

Matrix center_rows(const Matrix& f) {
  Matrix out = f;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double mean = 0.0;
    for (std::size_t t = 0; t < out.cols(); ++t) mean += out(i, t);
    mean /= static_cast<double>(out.cols());
    for (std::size_t t = 0; t < out.cols(); ++t) out(i, t) -= mean;
  }
  return out;
}

double subspace_fit(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 || b.rows() == 0)
    throw Error("subspace_fit: empty factor block");
  if (a.cols() != b.cols())
    throw Error("subspace_fit: factor blocks disagree on T");

  const Matrix ga = cross(a, a);
  const Matrix gb = cross(b, b);
  const Matrix cab = cross(a, b);  // r_a x r_b

  // trace(Ga^{-1} Cab Gb^{-1} Cab') / r_a
  Matrix cab_t(cab.cols(), cab.rows());
  for (std::size_t i = 0; i < cab.rows(); ++i)
    for (std::size_t j = 0; j < cab.cols(); ++j) cab_t(j, i) = cab(i, j);

  const Matrix x = spd_solve(gb, cab_t);  // Gb^{-1} Cab'
  Matrix y(cab.rows(), cab.rows());
  for (std::size_t i = 0; i < cab.rows(); ++i)
    for (std::size_t j = 0; j < cab.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < cab.cols(); ++k)
        acc += cab(i, k) * x(k, j);
      y(i, j) = acc;
    }
  const Matrix z = spd_solve(ga, y);  // Ga^{-1} Cab Gb^{-1} Cab'
  double tr = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i) tr += z(i, i);
  const double fit = tr / static_cast<double>(a.rows());
  return std::min(1.0, std::max(0.0, fit));
}

}  // namespace panelfa
