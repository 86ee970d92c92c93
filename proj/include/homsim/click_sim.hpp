#pragma once

#include <cstdint>
#include <vector>

#include "homsim/field.hpp"
#include "homsim/phase_process.hpp"
#include "homsim/trial_fields.hpp"
#include "homsim/trial_stream.hpp"
#include "homsim/units.hpp"

namespace homsim::sim {

/// Physical parameters of the two input pulse trains.
struct PulseTrainConfig {
  Length wavelength = Length::nanometers(780.0);
  Length bandwidth = Length::nanometers(15.0);  // FWHM
  Frequency repetition_rate = Frequency::megahertz(85.0);
  double mean_photons = 0.1;     // per pulse at input A
  double intensity_ratio = 1.0;  // mu_B / mu_A

  /// Throws std::invalid_argument on non-physical values.
  void validate() const;

  double mu_a() const { return mean_photons; }
  double mu_b() const { return mean_photons * intensity_ratio; }
  field::SpectralModel spectrum() const { return {wavelength, bandwidth}; }
  Duration slot_period() const { return repetition_rate.period(); }
};

/// Non-photon-number-resolving detector with no dark counts or dead time.
struct DetectorModel {
  double efficiency = 0.6;

  /// Throws std::invalid_argument unless efficiency is in (0, 1].
  void validate() const;
};

/// Counts accumulated at one optical delay.
struct ScanPoint {
  Length delta_l;
  std::uint64_t singles_c = 0;     // D1, slot i
  std::uint64_t singles_d = 0;     // D2, slot i (zero delay) or j
  std::uint64_t coincidences = 0;  // D1(i) and D2(s)
  std::uint64_t trials = 0;
  double coincidence_rate_stderr = 0.0;  // binomial
  // Conditional expectations given each trial's fields, averaged over trials.
  double mean_click_product = 0.0;        // <p(I_C) p(I_D)>
  double mean_intensity_product = 0.0;    // <eta^2 I_C I_D>
  double intensity_product_stderr = 0.0;  // of mean_intensity_product
  double click_count_variance = 0.0;      // sum of p(1 - p) over trials, p = p(I_C) p(I_D)

  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(coincidences) / static_cast<double>(trials);
  }
};

/// Beamsplitter used in the trial loop; swappable so tests can inject faults.
using BeamsplitterKernel = field::OutputIntensities (*)(double i_a, double i_b, double dphi,
                                                       double gamma);

struct PointKey {
  std::uint64_t seed = 0;
  std::uint64_t scan_point = 0;
};

/// p = 1 - exp(-efficiency * intensity). Throws std::invalid_argument if intensity < 0.
double click_probability(double intensity, const DetectorModel& detector);

/// Input pulses and slot phases of one trial. Both slots share the delay term
/// 2*pi*dl/lambda because the delay stage moves the whole B train.
TrialFields synthesize_trial(const PulseTrainConfig& config, const phase::PhaseProcess& process,
                             const field::DelayGeometry& geometry, const TrialKey& key);

/// Simulates `trials` coincidence windows at one delay.
/// Throws std::invalid_argument if trials == 0 or any model is invalid.
ScanPoint run_point(const PulseTrainConfig& config, const phase::PhaseProcess& process,
                    const field::DelayGeometry& geometry, const DetectorModel& detector,
                    std::uint64_t trials, PointKey key,
                    BeamsplitterKernel kernel = &field::beamsplitter_intensities_unchecked);

/// Inclusive arithmetic grid of optical delays in micrometres.
struct ScanRange {
  double start_um = -60.0;
  double stop_um = 60.0;
  double step_um = 1.0;

  /// Throws std::invalid_argument unless step > 0 and start < stop.
  void validate() const;
  std::vector<Length> points() const;
};

struct ScanSettings {
  PulseTrainConfig pulses;
  phase::PhaseProcess process = phase::PhaseProcess::independent_rf();
  DetectorModel detector;
  int slot_offset = 0;
  std::vector<Length> delays;
  std::uint64_t trials_per_point = 100000;
  std::uint64_t seed = 42;
  BeamsplitterKernel kernel = &field::beamsplitter_intensities_unchecked;

  field::DelayGeometry geometry_at(Length delta_l) const {
    return {delta_l, pulses.slot_period(), slot_offset, pulses.wavelength};
  }
};

/// Runs every delay of the scan. Point k uses TrialKey{seed, k, trial}; the
/// result is identical for any thread count.
std::vector<ScanPoint> run_scan_points(const ScanSettings& settings, unsigned threads = 1);

}  // namespace homsim::sim
