#include "homsim/correlator.hpp"

#include <cmath>
#include <variant>

namespace homsim::correlation {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be a finite non-negative number");
  }
}

}  // namespace

IntensityMoments IntensityMoments::constant(double mu_a, double mu_b) {
  IntensityMoments m{mu_a, mu_b, mu_a * mu_a, mu_b * mu_b};
  m.validate();
  return m;
}

IntensityMoments IntensityMoments::thermal(double mu_a, double mu_b) {
  IntensityMoments m{mu_a, mu_b, 2.0 * mu_a * mu_a, 2.0 * mu_b * mu_b};
  m.validate();
  return m;
}

void IntensityMoments::validate() const {
  require_nonnegative(mean_a, "<I_A>");
  require_nonnegative(mean_b, "<I_B>");
  require_nonnegative(second_a, "<I_A^2>");
  require_nonnegative(second_b, "<I_B^2>");
  // Relative slack for moments computed in floating point.
  constexpr double kSlack = 1e-12;
  if (second_a < mean_a * mean_a * (1.0 - kSlack) || second_b < mean_b * mean_b * (1.0 - kSlack)) {
    throw std::invalid_argument("second moment below squared mean");
  }
}

double sin_product_mean(double dphi_ij) { return 0.5 * std::cos(dphi_ij); }

double coincidence_sin_product(const phase::PhaseProcess& process,
                               const field::DelayGeometry& geometry) {
  const bool same_slot = geometry.slot_offset() == 0;
  if (const auto* s = std::get_if<phase::Synchronized>(&process.variant())) {
    const double dphi = field::relative_phase(s->phi0, geometry.delta_l(), geometry.wavelength());
    const double sn = std::sin(dphi);
    return sn * sn;
  }
  if (same_slot) {
    return 0.5;
  }
  if (const auto* p = std::get_if<phase::IndependentRF>(&process.variant())) {
    return sin_product_mean(p->dphi_ij);
  }
  const auto& fm = std::get<phase::IndependentRFWithFMNoise>(process.variant());
  // The wrapped Gaussian shares the first Fourier coefficient of the unwrapped one.
  const double sigma = phase::fm_noise_sigma(process, geometry.electronic_delay());
  return sin_product_mean(fm.dphi_ij) * std::exp(-0.5 * sigma * sigma);
}

double same_slot_correlation(const IntensityMoments& m, double sin_product, double gamma) {
  m.validate();
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("coherence factor must lie in [0, 1]");
  }
  if (!(sin_product >= -1.0 && sin_product <= 1.0)) {
    throw std::invalid_argument("sin product mean must lie in [-1, 1]");
  }
  return 0.25 * m.second_a + 0.25 * m.second_b +
         (0.5 - gamma * gamma * sin_product) * m.mean_a * m.mean_b;
}

double classical_visibility(const IntensityMoments& m) {
  m.validate();
  const double cross = 2.0 * m.mean_a * m.mean_b;
  const double denom = m.second_a + m.second_b + cross;
  if (denom == 0.0) {
    throw UndefinedVisibility("visibility undefined for all-zero intensity moments");
  }
  return cross / denom;
}

void TrialEnsemble::add(const TrialFields& f, double weight) {
  require_nonnegative(f.i_a_i, "I_A(i)");
  require_nonnegative(f.i_a_j, "I_A(j)");
  require_nonnegative(f.i_b_i, "I_B(i)");
  require_nonnegative(f.i_b_j, "I_B(j)");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("ensemble weight must be positive");
  }
  entries_.push_back({f, weight});
  total_weight_ += weight;
}

TrialEnsemble TrialEnsemble::coherent_product(std::span<const LawPoint> law_a,
                                              std::span<const LawPoint> law_b, int phase_points,
                                              double phase_offset, double dphi_ij) {
  if (law_a.empty() || law_b.empty() || phase_points < 1) {
    throw std::invalid_argument("product ensemble needs non-empty laws and phase grid");
  }
  TrialEnsemble e;
  for (const auto& a : law_a) {
    for (const auto& b : law_b) {
      for (int k = 0; k < phase_points; ++k) {
        const double phi_j = field::wrap_phase(phase_offset + field::kTwoPi * k / phase_points);
        TrialFields f{a.value, a.value, b.value, b.value,
                      field::wrap_phase(phi_j + dphi_ij), phi_j};
        e.add(f, a.weight * b.weight / phase_points);
      }
    }
  }
  return e;
}

CrossSlotTerms cross_slot_terms(const TrialEnsemble& ensemble) {
  if (ensemble.empty()) {
    throw std::invalid_argument("empty trial ensemble");
  }
  CrossSlotTerms t;
  for (const auto& [f, w] : ensemble.entries()) {
    t.aa += w * f.i_a_i * f.i_a_j;
    t.ab += w * f.i_a_i * f.i_b_j;
    t.ba += w * f.i_b_i * f.i_a_j;
    t.bb += w * f.i_b_i * f.i_b_j;
    t.amplitude += w * std::sqrt(f.i_a_i * f.i_a_j * f.i_b_i * f.i_b_j);
    t.sin_product += w * std::sin(f.dphi_i) * std::sin(f.dphi_j);
    t.mean_a += w * f.i_a_i;
    t.mean_b += w * f.i_b_i;
    t.second_a += w * f.i_a_i * f.i_a_i;
    t.second_b += w * f.i_b_i * f.i_b_i;
    const double s = std::sin(f.dphi_i);
    t.sin2_i += w * s * s;
  }
  const double inv = 1.0 / ensemble.total_weight();
  for (double* v : {&t.aa, &t.ab, &t.ba, &t.bb, &t.amplitude, &t.sin_product, &t.mean_a,
                    &t.mean_b, &t.second_a, &t.second_b, &t.sin2_i}) {
    *v *= inv;
  }
  return t;
}

double cross_slot_correlation(const TrialEnsemble& ensemble, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("coherence factor must lie in [0, 1]");
  }
  const CrossSlotTerms t = cross_slot_terms(ensemble);
  return 0.25 * (t.aa + t.ab + t.ba + t.bb) - gamma * gamma * t.amplitude * t.sin_product;
}

MeanOutputs singles_expectation(double mu_a, double mu_b, const phase::PhaseProcess& process,
                                const field::DelayGeometry& geometry,
                                const field::SpectralModel& spectrum) {
  require_nonnegative(mu_a, "mu_a");
  require_nonnegative(mu_b, "mu_b");
  const double mean = 0.5 * (mu_a + mu_b);
  if (process.randomizes_ab_phase()) {
    return {mean, mean};
  }
  const auto& s = std::get<phase::Synchronized>(process.variant());
  const double dphi = field::relative_phase(s.phi0, geometry.delta_l(), geometry.wavelength());
  const double gamma = field::coherence_envelope(geometry.delta_l(), spectrum);
  const auto out = field::beamsplitter_intensities_unchecked(mu_a, mu_b, dphi, gamma);
  return {out.c, out.d};
}

double coincidence_correlation(double mu_a, double mu_b, const phase::PhaseProcess& process,
                               const field::DelayGeometry& geometry,
                               const field::SpectralModel& spectrum) {
  const double gamma = field::coherence_envelope(geometry.delta_l(), spectrum);
  return same_slot_correlation(IntensityMoments::constant(mu_a, mu_b),
                               coincidence_sin_product(process, geometry), gamma);
}

}  // namespace homsim::correlation
