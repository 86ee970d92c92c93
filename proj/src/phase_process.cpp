#include "homsim/phase_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "homsim/field.hpp"

namespace homsim::phase {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double checked_angle(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
  return field::wrap_phase(v);
}

}  // namespace

PhaseProcess PhaseProcess::synchronized(double phi0) {
  return PhaseProcess(Synchronized{checked_angle(phi0, "phi0")});
}

PhaseProcess PhaseProcess::independent_rf(double dphi_ij) {
  return PhaseProcess(IndependentRF{checked_angle(dphi_ij, "dphi_ij")});
}

PhaseProcess PhaseProcess::independent_rf_with_fm_noise(double dphi_ij, Frequency rf_frequency,
                                                        double deviation_fraction) {
  if (!(rf_frequency.in_hertz() > 0.0) || !std::isfinite(rf_frequency.in_hertz())) {
    throw std::invalid_argument("RF frequency must be positive");
  }
  if (!(deviation_fraction >= 0.0 && deviation_fraction <= 1.0)) {
    throw std::invalid_argument("FM deviation fraction must lie in [0, 1]");
  }
  return PhaseProcess(IndependentRFWithFMNoise{checked_angle(dphi_ij, "dphi_ij"), rf_frequency,
                                               deviation_fraction});
}

std::string_view PhaseProcess::kind_name() const {
  return std::visit(overloaded{
                        [](const Synchronized&) { return std::string_view("synchronized"); },
                        [](const IndependentRF&) { return std::string_view("independent_rf"); },
                        [](const IndependentRFWithFMNoise&) {
                          return std::string_view("independent_rf_fm_noise");
                        },
                    },
                    variant_);
}

double phase_diffusion_sigma(Frequency rf_frequency, double deviation_fraction, Duration tau_d) {
  if (rf_frequency.in_hertz() < 0.0 || deviation_fraction < 0.0 || tau_d.in_seconds() < 0.0) {
    throw std::invalid_argument("phase diffusion arguments must be non-negative");
  }
  return field::kTwoPi * deviation_fraction * rf_frequency.in_hertz() / std::sqrt(3.0) *
         tau_d.in_seconds();
}

double fm_noise_sigma(const PhaseProcess& process, Duration tau_d) {
  if (tau_d.in_seconds() < 0.0) {
    throw std::invalid_argument("electronic delay must be non-negative");
  }
  if (const auto* fm = std::get_if<IndependentRFWithFMNoise>(&process.variant())) {
    return phase_diffusion_sigma(fm->rf_frequency, fm->deviation_fraction, tau_d);
  }
  return 0.0;
}

PhasePair sample_phase_pair(const PhaseProcess& process, double fm_sigma, TrialStream& stream) {
  return std::visit(
      overloaded{
          [](const Synchronized& s) { return PhasePair{s.phi0, s.phi0}; },
          [&](const IndependentRF& p) {
            const double base = field::kTwoPi * stream.uniform();
            return PhasePair{base, field::wrap_phase(base + p.dphi_ij)};
          },
          [&](const IndependentRFWithFMNoise& p) {
            const double base = field::kTwoPi * stream.uniform();
            // Drawn even at zero sigma: the uniform phases then match
            // IndependentRF key for key.
            const double xi = fm_sigma * stream.normal();
            return PhasePair{base, field::wrap_phase(base + p.dphi_ij + xi)};
          },
      },
      process.variant());
}

PhasePair sample_phase_pair(const PhaseProcess& process, Duration tau_d, const TrialKey& key) {
  TrialStream stream(key, StreamDomain::phase);
  return sample_phase_pair(process, fm_noise_sigma(process, tau_d), stream);
}

}  // namespace homsim::phase
