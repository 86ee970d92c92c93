#include "homsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace homsim::stats {

double chi_squared_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::chi_squared(dof), p);
}

double two_sided_z(double alpha) {
  return boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
}

double sidak_z(double alpha, std::size_t tests) {
  if (tests == 0) throw std::invalid_argument("need at least one test");
  const double per_test = -std::expm1(std::log1p(-alpha) / static_cast<double>(tests));
  return two_sided_z(per_test);
}

std::vector<Cell> pool_cells(std::span<const Cell> cells, double min_expected) {
  std::vector<Cell> pooled;
  Cell acc;
  bool open = false;
  for (const auto& c : cells) {
    acc.observed += c.observed;
    acc.expected += c.expected;
    acc.variance += c.variance;
    open = true;
    if (acc.expected >= min_expected) {
      pooled.push_back(acc);
      acc = {};
      open = false;
    }
  }
  if (open) {
    if (pooled.empty()) {
      pooled.push_back(acc);
    } else {
      pooled.back().observed += acc.observed;
      pooled.back().expected += acc.expected;
      pooled.back().variance += acc.variance;
    }
  }
  return pooled;
}

ChiSquareTest chi_square_test(std::span<const Cell> cells, double alpha) {
  if (cells.empty()) throw std::invalid_argument("chi-square test needs cells");
  ChiSquareTest t;
  for (const auto& c : cells) {
    if (!(c.variance > 0.0)) throw std::invalid_argument("cell variance must be positive");
    const double z = (c.observed - c.expected) / std::sqrt(c.variance);
    t.statistic += z * z;
    t.max_abs_z = std::max(t.max_abs_z, std::abs(z));
  }
  t.dof = static_cast<double>(cells.size());
  t.critical = chi_squared_quantile(1.0 - alpha, t.dof);
  t.z_bound = sidak_z(alpha, cells.size());
  return t;
}

double ks_uniform_statistic(std::span<const double> sample, double lo, double hi) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> u(sample.begin(), sample.end());
  std::sort(u.begin(), u.end());
  const auto n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double f = std::clamp((u[k] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, f - static_cast<double>(k) / n, static_cast<double>(k + 1) / n - f});
  }
  return d;
}

double ks_p_value(double d, std::size_t n) {
  // Kolmogorov limiting distribution with the Stephens small-sample correction.
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

MeanStderr mean_and_stderr(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("need at least two values");
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("bad sample sizes");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace homsim::stats
