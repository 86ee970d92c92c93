#include "homsim/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace homsim::sim {

namespace {

struct LineFit {
  double mean_g = 0.0;
  double sxx = 0.0;
  double intercept = 0.0;  // fitted rate at g = 0
  double slope = 0.0;      // d rate / d g
  double sse = 0.0;
};

// Ordinary least squares of rate against the squared envelope g.
LineFit fit_against(std::span<const double> g, std::span<const double> rate) {
  const auto n = static_cast<double>(g.size());
  LineFit f;
  double mean_r = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    f.mean_g += g[k];
    mean_r += rate[k];
  }
  f.mean_g /= n;
  mean_r /= n;
  double sxy = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double dg = g[k] - f.mean_g;
    f.sxx += dg * dg;
    sxy += dg * (rate[k] - mean_r);
  }
  if (f.sxx <= 0.0) {
    f.sse = std::numeric_limits<double>::infinity();
    return f;
  }
  f.slope = sxy / f.sxx;
  f.intercept = mean_r - f.slope * f.mean_g;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double res = rate[k] - (f.intercept + f.slope * g[k]);
    f.sse += res * res;
  }
  return f;
}

std::vector<double> envelope_squared(std::span<const ScanPoint> curve, Length center,
                                     const field::SpectralModel& spectrum) {
  std::vector<double> g(curve.size());
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const double gamma = field::coherence_envelope(
        Length::meters(curve[k].delta_l.in_meters() - center.in_meters()), spectrum);
    g[k] = gamma * gamma;
  }
  return g;
}

}  // namespace

VisibilityEstimate estimate_visibility(std::span<const ScanPoint> curve,
                                       const field::SpectralModel& spectrum,
                                       const VisibilityOptions& options) {
  if (curve.size() < 3) {
    throw std::invalid_argument("visibility estimate needs at least three scan points");
  }
  std::vector<double> rate(curve.size());
  std::transform(curve.begin(), curve.end(), rate.begin(),
                 [](const ScanPoint& p) { return p.rate(); });

  Length center;
  if (options.dip_center) {
    center = *options.dip_center;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : curve) {
      const auto g = envelope_squared(curve, p.delta_l, spectrum);
      const double sse = fit_against(g, rate).sse;
      if (sse < best) {
        best = sse;
        center = p.delta_l;
      }
    }
  }

  const double lc = spectrum.coherence_length().in_meters();
  const double reach = options.baseline_exclusion * lc;
  const auto [lo, hi] = std::minmax_element(
      curve.begin(), curve.end(),
      [](const ScanPoint& a, const ScanPoint& b) { return a.delta_l < b.delta_l; });
  if (lo->delta_l.in_meters() > center.in_meters() - reach ||
      hi->delta_l.in_meters() < center.in_meters() + reach) {
    throw InsufficientBaseline("scan does not span the baseline region on both sides of the dip");
  }

  std::vector<double> baseline_weight(curve.size(), 0.0);
  std::size_t n_base = 0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (std::abs(curve[k].delta_l.in_meters() - center.in_meters()) > reach) {
      baseline_weight[k] = 1.0;
      ++n_base;
    }
  }
  if (n_base < options.min_baseline_points) {
    throw InsufficientBaseline("too few baseline points outside the dip");
  }

  const auto g = envelope_squared(curve, center, spectrum);
  const LineFit fit = fit_against(g, rate);
  if (!(fit.sxx > 0.0)) {
    throw std::invalid_argument("scan points do not resolve the dip shape");
  }

  const auto n = static_cast<double>(curve.size());
  double base = 0.0;
  double floor = 0.0;
  double var_base = 0.0;
  double var_floor = 0.0;
  double cov = 0.0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    baseline_weight[k] /= static_cast<double>(n_base);
    // Weight of point k in the fitted value at g = 1.
    const double w_floor = 1.0 / n + (1.0 - fit.mean_g) * (g[k] - fit.mean_g) / fit.sxx;
    const double var_k = curve[k].coincidence_rate_stderr * curve[k].coincidence_rate_stderr;
    base += baseline_weight[k] * rate[k];
    floor += w_floor * rate[k];
    var_base += baseline_weight[k] * baseline_weight[k] * var_k;
    var_floor += w_floor * w_floor * var_k;
    cov += baseline_weight[k] * w_floor * var_k;
  }
  if (base == 0.0) {
    throw std::domain_error("visibility undefined for a zero baseline rate");
  }

  VisibilityEstimate est;
  est.visibility = (base - floor) / base;
  const double var_v = var_floor / (base * base) +
                       floor * floor * var_base / (base * base * base * base) -
                       2.0 * floor * cov / (base * base * base);
  est.standard_error = std::sqrt(std::max(0.0, var_v));
  est.baseline_rate = base;
  est.floor_rate = floor;
  est.dip_center = center;
  est.baseline_points = n_base;
  return est;
}

}  // namespace homsim::sim
