#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Small statistical toolkit for checking Monte Carlo output against references.

namespace homsim::stats {

/// Upper quantile of chi-squared with `dof` degrees of freedom: P(X <= q) = p.
double chi_squared_quantile(double p, double dof);

/// Two-sided standard-normal bound z with P(|Z| <= z) = 1 - alpha.
double two_sided_z(double alpha);

/// Per-test two-sided bound keeping the family-wise false-alarm rate at
/// alpha over `tests` independent tests (Sidak).
double sidak_z(double alpha, std::size_t tests);

/// alpha of a two-sided 3-sigma test.
inline constexpr double kThreeSigmaAlpha = 0.0026997960632601866;

/// One observed quantity with its expectation and the variance of the observation.
struct Cell {
  double observed = 0.0;
  double expected = 0.0;
  double variance = 0.0;
};

/// Merges neighbouring cells until each expected count reaches `min_expected`;
/// a short tail is folded into the last full cell.
std::vector<Cell> pool_cells(std::span<const Cell> cells, double min_expected = 50.0);

struct ChiSquareTest {
  double statistic = 0.0;
  double dof = 0.0;
  double critical = 0.0;
  double max_abs_z = 0.0;
  double z_bound = 0.0;  // Sidak bound for max_abs_z at the same alpha
  bool pass() const { return statistic <= critical && max_abs_z <= z_bound; }
};

/// sum (O - E)^2 / Var over the cells, compared with the chi-squared quantile
/// at 1 - alpha, together with the largest single |z| against its Sidak bound.
ChiSquareTest chi_square_test(std::span<const Cell> cells, double alpha = kThreeSigmaAlpha);

/// Kolmogorov-Smirnov distance of a sample from Uniform[lo, hi). Sorts a copy.
double ks_uniform_statistic(std::span<const double> sample, double lo, double hi);

/// Asymptotic p-value of a one-sample KS distance d for n observations.
double ks_p_value(double d, std::size_t n);

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

MeanStderr mean_and_stderr(std::span<const double> values);

/// Pearson correlation coefficient. Zero if either sample has no spread.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace homsim::stats
