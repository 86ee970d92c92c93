#include "homsim/click_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace homsim::sim {

void PulseTrainConfig::validate() const {
  // SpectralModel checks 0 < bandwidth < wavelength.
  (void)spectrum();
  if (!(repetition_rate.in_hertz() > 0.0) || !std::isfinite(repetition_rate.in_hertz())) {
    throw std::invalid_argument("repetition rate must be positive");
  }
  if (!(mean_photons > 0.0) || !std::isfinite(mean_photons)) {
    throw std::invalid_argument("mean photon number must be positive");
  }
  if (!(intensity_ratio >= 0.0) || !std::isfinite(intensity_ratio)) {
    throw std::invalid_argument("intensity ratio must be non-negative");
  }
}

void DetectorModel::validate() const {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in (0, 1]");
  }
}

double click_probability(double intensity, const DetectorModel& detector) {
  if (!(intensity >= 0.0)) {
    throw std::invalid_argument("intensity must be non-negative");
  }
  return -std::expm1(-detector.efficiency * intensity);
}

namespace {

TrialFields synthesize(const PulseTrainConfig& config, const phase::PhaseProcess& process,
                       double delay_phase, double fm_sigma, const TrialKey& key) {
  TrialStream stream(key, StreamDomain::phase);
  const auto pair = phase::sample_phase_pair(process, fm_sigma, stream);
  const double mu_a = config.mu_a();
  const double mu_b = config.mu_b();
  return {mu_a,
          mu_a,
          mu_b,
          mu_b,
          field::wrap_phase(pair.slot_i + delay_phase),
          field::wrap_phase(pair.slot_j + delay_phase)};
}

double delay_phase_of(const field::DelayGeometry& g) {
  return field::relative_phase(0.0, g.delta_l(), g.wavelength());
}

}  // namespace

TrialFields synthesize_trial(const PulseTrainConfig& config, const phase::PhaseProcess& process,
                             const field::DelayGeometry& geometry, const TrialKey& key) {
  config.validate();
  return synthesize(config, process, delay_phase_of(geometry),
                    phase::fm_noise_sigma(process, geometry.electronic_delay()), key);
}

ScanPoint run_point(const PulseTrainConfig& config, const phase::PhaseProcess& process,
                    const field::DelayGeometry& geometry, const DetectorModel& detector,
                    std::uint64_t trials, PointKey key, BeamsplitterKernel kernel) {
  config.validate();
  detector.validate();
  if (trials == 0) {
    throw std::invalid_argument("a scan point needs at least one trial");
  }
  if (trials - 1 > TrialKey::kMaxTrial) {
    throw std::invalid_argument("too many trials for one scan point");
  }

  const double delay_phase = delay_phase_of(geometry);
  const double fm_sigma = phase::fm_noise_sigma(process, geometry.electronic_delay());
  const double gamma = field::coherence_envelope(geometry.delta_l(), config.spectrum());
  const bool same_slot = geometry.slot_offset() == 0;
  const double eta = detector.efficiency;

  ScanPoint point;
  point.delta_l = geometry.delta_l();
  point.trials = trials;
  double click_product = 0.0;
  double click_product_sq = 0.0;
  // Welford running mean and sum of squared deviations of eta^2 I_C I_D.
  double intensity_mean = 0.0;
  double intensity_m2 = 0.0;

  for (std::uint64_t t = 0; t < trials; ++t) {
    const TrialKey tk{key.seed, key.scan_point, t};
    const TrialFields f = synthesize(config, process, delay_phase, fm_sigma, tk);

    const auto slot_i = kernel(f.i_a_i, f.i_b_i, f.dphi_i, gamma);
    const double i_d = same_slot ? slot_i.d : kernel(f.i_a_j, f.i_b_j, f.dphi_j, gamma).d;

    const double p1 = -std::expm1(-eta * slot_i.c);
    const double p2 = -std::expm1(-eta * i_d);
    TrialStream clicks(tk, StreamDomain::clicks);
    const bool d1 = clicks.uniform() < p1;
    const bool d2 = clicks.uniform() < p2;

    point.singles_c += d1;
    point.singles_d += d2;
    point.coincidences += d1 && d2;
    const double q = p1 * p2;
    const double x = eta * eta * slot_i.c * i_d;
    click_product += q;
    click_product_sq += q * q;
    const double delta = x - intensity_mean;
    intensity_mean += delta / static_cast<double>(t + 1);
    intensity_m2 += delta * (x - intensity_mean);
  }

  const double n = static_cast<double>(trials);
  const double r = point.rate();
  point.coincidence_rate_stderr = std::sqrt(r * (1.0 - r) / n);
  point.mean_click_product = click_product / n;
  point.mean_intensity_product = intensity_mean;
  point.click_count_variance = click_product - click_product_sq;
  if (trials > 1) {
    point.intensity_product_stderr = std::sqrt(intensity_m2 / (n - 1.0) / n);
  }
  return point;
}

void ScanRange::validate() const {
  if (!std::isfinite(start_um) || !std::isfinite(stop_um) || !std::isfinite(step_um)) {
    throw std::invalid_argument("scan range must be finite");
  }
  if (!(step_um > 0.0)) {
    throw std::invalid_argument("scan step must be positive");
  }
  if (!(start_um < stop_um)) {
    throw std::invalid_argument("scan start must be below scan stop");
  }
}

std::vector<Length> ScanRange::points() const {
  validate();
  // Tolerance keeps the stop value when (stop - start) / step is integral up to rounding.
  const auto count =
      static_cast<std::size_t>(std::floor((stop_um - start_um) / step_um + 1e-9)) + 1;
  std::vector<Length> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(Length::micrometers(start_um + static_cast<double>(k) * step_um));
  }
  return out;
}

std::vector<ScanPoint> run_scan_points(const ScanSettings& settings, unsigned threads) {
  settings.pulses.validate();
  settings.detector.validate();
  if (settings.delays.size() > TrialKey::kMaxScanPoint + 1) {
    throw std::invalid_argument("too many scan points");
  }
  std::vector<field::DelayGeometry> geometries;
  geometries.reserve(settings.delays.size());
  for (const Length dl : settings.delays) {
    geometries.push_back(settings.geometry_at(dl));
  }

  std::vector<ScanPoint> points(geometries.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t k = next++; k < geometries.size(); k = next++) {
      try {
        points[k] = run_point(settings.pulses, settings.process, geometries[k], settings.detector,
                              settings.trials_per_point, PointKey{settings.seed, k},
                              settings.kernel);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(geometries.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return points;
}

}  // namespace homsim::sim
