#include "panelfa/ic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

double mean_squared_residual(const StandardizedPanel& z, std::size_t r,
                             const EigenDecomposition& eig) {
  FactorModel m = estimate_factors(z, r, eig);
  const Matrix& e = m.residuals;
  double ssr = 0.0;
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t t = 0; t < e.cols(); ++t)
      ssr += e(i, t) * e(i, t);
  return ssr / static_cast<double>(e.rows() * e.cols());
}

double ic_from_msr(double msr, std::size_t r, double g) {
  if (msr < kExactFitThreshold)
    return -std::numeric_limits<double>::infinity();
  return std::log(msr) + static_cast<double>(r) * g;
}

}  // namespace

const char* penalty_name(Penalty p) {
  switch (p) {
    case Penalty::g1: return "g1";
    case Penalty::g2: return "g2";
    case Penalty::g3: return "g3";
  }
  return "?";
}

Penalty penalty_from_name(const std::string& name) {
  if (name == "g1") return Penalty::g1;
  if (name == "g2") return Penalty::g2;
  if (name == "g3") return Penalty::g3;
  throw ConfigError("unknown penalty '" + name + "' (expected g1, g2 or g3)");
}

double penalty_value(Penalty p, std::size_t q, std::size_t T) {
  if (q < 2 || T < 2) throw Error("penalty_value needs q, T >= 2");
  const double nq = static_cast<double>(q);
  const double nt = static_cast<double>(T);
  const double mn = std::min(nq, nt);
  switch (p) {
    case Penalty::g1:
      return (nq + nt) / (nq * nt) * std::log(nq * nt / (nq + nt));
    case Penalty::g2:
      return (nq + nt) / (nq * nt) * std::log(mn);
    case Penalty::g3:
      return std::log(mn) / mn;
  }
  throw Error("invalid penalty");
}

double ic_value(const StandardizedPanel& z, std::size_t r, Penalty p) {
  return ic_value(z, r, p, sym_eigen(covariance(z)));
}

double ic_value(const StandardizedPanel& z, std::size_t r, Penalty p,
                const EigenDecomposition& eig) {
  const std::size_t q = z.panel.n_series();
  const std::size_t T = z.panel.n_periods();
  return ic_from_msr(mean_squared_residual(z, r, eig), r,
                     penalty_value(p, q, T));
}

std::size_t IcReport::rhat(Penalty p) const {
  switch (p) {
    case Penalty::g1: return rhat_g1;
    case Penalty::g2: return rhat_g2;
    case Penalty::g3: return rhat_g3;
  }
  return 0;
}

const std::vector<double>& IcReport::curve(Penalty p) const {
  switch (p) {
    case Penalty::g2: return ic_g2;
    case Penalty::g3: return ic_g3;
    default: return ic_g1;
  }
}

IcReport select_num_factors(const StandardizedPanel& z, std::size_t rmax) {
  return select_num_factors(z, rmax, sym_eigen(covariance(z)));
}

IcReport select_num_factors(const StandardizedPanel& z, std::size_t rmax,
                            const EigenDecomposition& eig) {
  const std::size_t q = z.panel.n_series();
  const std::size_t T = z.panel.n_periods();
  if (rmax < 1) throw ConfigError("rmax must be at least 1");
  if (rmax >= std::min(q, T))
    throw ConfigError("rmax = " + std::to_string(rmax) +
                      " must stay below min(q, T) = " +
                      std::to_string(std::min(q, T)));

  IcReport rep;
  rep.q = q;
  rep.T = T;
  rep.rmax = rmax;
  const double g1 = penalty_value(Penalty::g1, q, T);
  const double g2 = penalty_value(Penalty::g2, q, T);
  const double g3 = penalty_value(Penalty::g3, q, T);

  for (std::size_t r = 1; r <= rmax; ++r) {
    const double msr = mean_squared_residual(z, r, eig);
    rep.ic_g1.push_back(ic_from_msr(msr, r, g1));
    rep.ic_g2.push_back(ic_from_msr(msr, r, g2));
    rep.ic_g3.push_back(ic_from_msr(msr, r, g3));
  }

  auto argmin = [](const std::vector<double>& c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] < c[best]) best = i;  // strict: ties keep the smallest r
    return best + 1;
  };
  rep.rhat_g1 = argmin(rep.ic_g1);
  rep.rhat_g2 = argmin(rep.ic_g2);
  rep.rhat_g3 = argmin(rep.ic_g3);
  rep.selected = rep.rhat_g1;
  return rep;
}

}  // namespace panelfa
