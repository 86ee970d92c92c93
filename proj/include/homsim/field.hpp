#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "homsim/units.hpp"

// Classical field mathematics for a lossless symmetric 50:50 beamsplitter.
//
// Conventions used throughout the library:
//   * Intensities are mean photon numbers per pulse slot (dimensionless).
//   * The relative phase of a slot is dphi = phase(B) - phase(A) + 2*pi*dl/lambda.
//   * Output C (detector D1) carries I_C = (I_A + I_B)/2 - g*sqrt(I_A*I_B)*sin(dphi),
//     output D (detector D2) carries the same with the cross term added.
//   * The field unitary E_C = (E_A + i*E_B)/sqrt2, E_D = (i*E_A + E_B)/sqrt2
//     reproduces that sign when g = 1.

namespace homsim::field {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduce an angle to [0, 2*pi).
double wrap_phase(double radians);

/// Single pulse-slot field: intensity (photon number) and absolute phase.
class OpticalField {
 public:
  OpticalField() = default;
  /// Throws std::invalid_argument on negative or non-finite intensity.
  OpticalField(double intensity, double phase);

  static OpticalField from_amplitude(std::complex<double> amplitude);

  double intensity() const { return intensity_; }
  double phase() const { return phase_; }
  std::complex<double> amplitude() const;

 private:
  double intensity_ = 0.0;
  double phase_ = 0.0;
};

enum class SpectralShape { gaussian };

/// Pulse spectrum. Only the Gaussian shape is modelled.
class SpectralModel {
 public:
  /// Requires 0 < fwhm_bandwidth < center_wavelength.
  SpectralModel(Length center_wavelength, Length fwhm_bandwidth,
                SpectralShape shape = SpectralShape::gaussian);

  Length center_wavelength() const { return center_; }
  Length fwhm_bandwidth() const { return fwhm_; }
  SpectralShape shape() const { return shape_; }

  /// Half width at half maximum of the first-order coherence in optical delay:
  /// (2 ln2 / pi) * lambda^2 / dlambda.
  Length coherence_length() const;

 private:
  Length center_;
  Length fwhm_;
  SpectralShape shape_;
};

/// Optical and electronic delay settings of one scan point.
///
/// The coincidence window pairs D1 in slot s with D2 in slot s + slot_offset,
/// so the electronic delay is tau_d = slot_offset * slot_period.
class DelayGeometry {
 public:
  /// Throws std::invalid_argument when slot_period <= 0, wavelength <= 0,
  /// slot_offset < 0, or |delta_l| reaches 1% of the slot spacing c*T_p
  /// (the optical scan must never bridge adjacent slots).
  DelayGeometry(Length delta_l, Duration slot_period, int slot_offset, Length wavelength);

  Length delta_l() const { return delta_l_; }
  Duration slot_period() const { return slot_period_; }
  int slot_offset() const { return slot_offset_; }
  Length wavelength() const { return wavelength_; }

  Duration electronic_delay() const { return slot_period_ * static_cast<double>(slot_offset_); }
  DelayGeometry with_delta_l(Length delta_l) const;

 private:
  Length delta_l_;
  Duration slot_period_;
  int slot_offset_;
  Length wavelength_;
};

struct OutputIntensities {
  double c = 0.0;  // detector D1
  double d = 0.0;  // detector D2
};

/// dphi_ab + 2*pi*delta_l/wavelength, reduced to [0, 2*pi).
/// Throws std::invalid_argument on non-finite input or wavelength <= 0.
double relative_phase(double dphi_ab, Length delta_l, Length wavelength);

/// Output intensities with the cross term scaled by the mutual coherence gamma.
/// Throws std::invalid_argument if gamma is outside [0, 1].
OutputIntensities beamsplitter_intensities(const OpticalField& a, const OpticalField& b,
                                           double dphi, double gamma);

/// Same operation on raw intensities; no validation, used in the trial loop.
inline OutputIntensities beamsplitter_intensities_unchecked(double i_a, double i_b, double dphi,
                                                            double gamma) {
  const double mean = 0.5 * (i_a + i_b);
  const double cross = gamma * std::sqrt(i_a * i_b) * std::sin(dphi);
  // Rounding can push an exactly-cancelled output a few ulps below zero.
  return {std::max(0.0, mean - cross), std::max(0.0, mean + cross)};
}

/// Complex-amplitude form of the beamsplitter.
std::pair<OpticalField, OpticalField> beamsplitter_fields(const OpticalField& a,
                                                          const OpticalField& b);

/// gamma(dl) = exp(-(dl/l_c)^2 ln2); even in dl, 1 at zero delay.
double coherence_envelope(Length delta_l, const SpectralModel& spectrum);

}  // namespace homsim::field
