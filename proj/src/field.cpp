#include "homsim/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace homsim::field {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

double wrap_phase(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

OpticalField::OpticalField(double intensity, double phase) {
  require_finite(intensity, "intensity");
  require_finite(phase, "phase");
  if (intensity < 0.0) {
    throw std::invalid_argument("intensity must be non-negative");
  }
  intensity_ = intensity;
  phase_ = wrap_phase(phase);
}

OpticalField OpticalField::from_amplitude(std::complex<double> amplitude) {
  return OpticalField(std::norm(amplitude), std::arg(amplitude));
}

std::complex<double> OpticalField::amplitude() const {
  return std::polar(std::sqrt(intensity_), phase_);
}

SpectralModel::SpectralModel(Length center_wavelength, Length fwhm_bandwidth, SpectralShape shape)
    : center_(center_wavelength), fwhm_(fwhm_bandwidth), shape_(shape) {
  require_finite(center_.in_meters(), "center wavelength");
  require_finite(fwhm_.in_meters(), "bandwidth");
  if (!(fwhm_.in_meters() > 0.0) || !(fwhm_ < center_)) {
    throw std::invalid_argument("spectral bandwidth must satisfy 0 < fwhm < center wavelength");
  }
}

Length SpectralModel::coherence_length() const {
  const double lambda = center_.in_meters();
  return Length::meters(2.0 * std::numbers::ln2 / std::numbers::pi * lambda * lambda /
                        fwhm_.in_meters());
}

DelayGeometry::DelayGeometry(Length delta_l, Duration slot_period, int slot_offset,
                             Length wavelength)
    : delta_l_(delta_l),
      slot_period_(slot_period),
      slot_offset_(slot_offset),
      wavelength_(wavelength) {
  require_finite(delta_l.in_meters(), "delta_l");
  require_finite(slot_period.in_seconds(), "slot period");
  require_finite(wavelength.in_meters(), "wavelength");
  if (!(slot_period.in_seconds() > 0.0)) {
    throw std::invalid_argument("slot period must be positive");
  }
  if (!(wavelength.in_meters() > 0.0)) {
    throw std::invalid_argument("wavelength must be positive");
  }
  if (slot_offset < 0) {
    throw std::invalid_argument("slot offset must be non-negative");
  }
  const double slot_spacing = kSpeedOfLight * slot_period.in_seconds();
  if (std::abs(delta_l.in_meters()) >= 0.01 * slot_spacing) {
    throw std::invalid_argument("optical delay must stay far below the slot spacing");
  }
}

DelayGeometry DelayGeometry::with_delta_l(Length delta_l) const {
  return DelayGeometry(delta_l, slot_period_, slot_offset_, wavelength_);
}

double relative_phase(double dphi_ab, Length delta_l, Length wavelength) {
  require_finite(dphi_ab, "phase difference");
  require_finite(delta_l.in_meters(), "delta_l");
  require_finite(wavelength.in_meters(), "wavelength");
  if (!(wavelength.in_meters() > 0.0)) {
    throw std::invalid_argument("wavelength must be positive");
  }
  return wrap_phase(dphi_ab + kTwoPi * (delta_l.in_meters() / wavelength.in_meters()));
}

OutputIntensities beamsplitter_intensities(const OpticalField& a, const OpticalField& b,
                                           double dphi, double gamma) {
  require_finite(dphi, "phase difference");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("coherence factor must lie in [0, 1]");
  }
  return beamsplitter_intensities_unchecked(a.intensity(), b.intensity(), dphi, gamma);
}

std::pair<OpticalField, OpticalField> beamsplitter_fields(const OpticalField& a,
                                                          const OpticalField& b) {
  constexpr std::complex<double> i{0.0, 1.0};
  const double s = std::numbers::sqrt2 / 2.0;
  const auto ea = a.amplitude();
  const auto eb = b.amplitude();
  return {OpticalField::from_amplitude(s * (ea + i * eb)),
          OpticalField::from_amplitude(s * (i * ea + eb))};
}

double coherence_envelope(Length delta_l, const SpectralModel& spectrum) {
  const double x = delta_l.in_meters() / spectrum.coherence_length().in_meters();
  return std::exp(-x * x * std::numbers::ln2);
}

}  // namespace homsim::field
