#pragma once

#include <string_view>
#include <variant>

#include "homsim/trial_stream.hpp"
#include "homsim/units.hpp"

namespace homsim::phase {

/// Both AOM drivers share one RF source: the A-B phase never changes.
struct Synchronized {
  double phi0 = 0.0;
};

/// Independent RF drivers: the A-B phase is uniformly random per trial, but
/// pulses i and j of the same input stay coherent, so slot j trails slot i by
/// the constant dphi_ij.
struct IndependentRF {
  double dphi_ij = 0.0;
};

/// Independent RF drivers with broadband noise on one driver's FM input.
/// Over the electronic delay the noise accumulates an extra phase that breaks
/// the i-j relation.
struct IndependentRFWithFMNoise {
  double dphi_ij = 0.0;
  Frequency rf_frequency = Frequency::megahertz(40.0);
  double deviation_fraction = 0.5;
};

/// Stochastic model of the A-B phase pair seen in one trial.
class PhaseProcess {
 public:
  using Variant = std::variant<Synchronized, IndependentRF, IndependentRFWithFMNoise>;

  static PhaseProcess synchronized(double phi0);
  static PhaseProcess independent_rf(double dphi_ij = 0.0);
  /// Throws std::invalid_argument unless rf > 0 and deviation in [0, 1].
  static PhaseProcess independent_rf_with_fm_noise(double dphi_ij, Frequency rf_frequency,
                                                   double deviation_fraction);

  const Variant& variant() const { return variant_; }
  bool randomizes_ab_phase() const { return !std::holds_alternative<Synchronized>(variant_); }
  std::string_view kind_name() const;

 private:
  explicit PhaseProcess(Variant v) : variant_(v) {}
  Variant variant_;
};

struct PhasePair {
  double slot_i = 0.0;  // dphi_AB(i)
  double slot_j = 0.0;  // dphi_AB(j)
};

/// Standard deviation of the phase a frequency offset, uniform on
/// +/- deviation_fraction * rf, accumulates over tau_d:
/// 2*pi * deviation_fraction * rf / sqrt(3) * tau_d.
/// Throws std::invalid_argument on negative arguments.
double phase_diffusion_sigma(Frequency rf_frequency, double deviation_fraction, Duration tau_d);

/// Draws (dphi_AB(i), dphi_AB(j)) for one trial. Both values are in [0, 2*pi).
/// Throws std::invalid_argument if tau_d < 0.
PhasePair sample_phase_pair(const PhaseProcess& process, Duration tau_d, const TrialKey& key);

/// Same, drawing from a caller-owned stream.
PhasePair sample_phase_pair(const PhaseProcess& process, double fm_sigma, TrialStream& stream);

/// Noise sigma the process applies at electronic delay tau_d (0 unless FM noise).
double fm_noise_sigma(const PhaseProcess& process, Duration tau_d);

}  // namespace homsim::phase
