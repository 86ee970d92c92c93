#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "homsim/click_sim.hpp"
#include "homsim/field.hpp"

namespace homsim::sim {

/// The scan does not reach far enough from the dip to measure a baseline.
class InsufficientBaseline : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VisibilityOptions {
  /// Zero-delay position, when known from calibration. Otherwise the centre
  /// is located by fitting the dip shape at every scan position.
  std::optional<Length> dip_center;
  /// Baseline points lie further than this many coherence lengths from the centre.
  double baseline_exclusion = 3.0;
  std::size_t min_baseline_points = 5;
};

struct VisibilityEstimate {
  double visibility = 0.0;
  double standard_error = 0.0;
  double baseline_rate = 0.0;
  double floor_rate = 0.0;
  Length dip_center;
  std::size_t baseline_points = 0;
};

/// V = (C_base - C_min) / C_base.
///
/// C_base is the mean coincidence rate of the points beyond the exclusion
/// distance. C_min is the value at the centre of a least-squares fit of
/// rate = B - D * gamma(dl - centre)^2 over the whole scan, the dip shape a
/// field-level coherence envelope gives. The standard error is propagated
/// linearly from the per-point binomial errors, including the correlation
/// between baseline and fitted floor.
///
/// Throws InsufficientBaseline when the scan does not extend
/// baseline_exclusion * l_c to both sides of the centre or has fewer than
/// min_baseline_points baseline points; std::invalid_argument when the scan
/// cannot resolve the dip shape; std::domain_error for a zero baseline.
VisibilityEstimate estimate_visibility(std::span<const ScanPoint> curve,
                                       const field::SpectralModel& spectrum,
                                       const VisibilityOptions& options = {});

}  // namespace homsim::sim
