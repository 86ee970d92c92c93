#include "homsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "homsim/correlator.hpp"
#include "homsim/field.hpp"
#include "homsim/quantum_oracle.hpp"
#include "homsim/stats.hpp"
#include "homsim/trial_stream.hpp"
#include "homsim/visibility.hpp"

namespace homsim::validation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPropertySamples = 10000;

// Independent stream per check so adding a check never shifts another.
TrialStream property_stream(const Options& o, std::uint64_t check, std::uint64_t sample) {
  return TrialStream(TrialKey{o.seed, check, sample}, StreamDomain::phase);
}

std::vector<Length> coarse_delays() { return sim::ScanRange{-60.0, 60.0, 10.0}.points(); }

struct Comparison {
  stats::ChiSquareTest test;
  double worst_exact = 0.0;  // largest relative error among zero-variance cells
  bool pass(double exact_tolerance = 1e-12) const {
    return test.pass() && worst_exact <= exact_tolerance;
  }
};

// Cells with vanishing variance are deterministic and compared exactly.
Comparison compare(std::span<const stats::Cell> cells, double min_expected) {
  std::vector<stats::Cell> noisy;
  Comparison c;
  for (const auto& cell : cells) {
    if (cell.variance > 1e-30 * std::max(1.0, cell.expected * cell.expected)) {
      noisy.push_back(cell);
    } else {
      const double scale = std::max(std::abs(cell.expected), 1e-300);
      c.worst_exact = std::max(c.worst_exact, std::abs(cell.observed - cell.expected) / scale);
    }
  }
  if (min_expected > 0.0) noisy = stats::pool_cells(noisy, min_expected);
  if (!noisy.empty()) c.test = stats::chi_square_test(noisy);
  return c;
}

std::string describe(const Comparison& c) {
  return fmt::format("chi2={:.1f}/{:.1f} (dof {}), max|z|={:.2f}/{:.2f}", c.test.statistic,
                     c.test.critical, c.test.dof, c.test.max_abs_z, c.test.z_bound);
}

sim::ScanSettings base_settings(const Options& o) {
  sim::ScanSettings s;
  s.trials_per_point = o.trials;
  s.seed = o.seed;
  s.kernel = o.kernel;
  return s;
}

// Intensity products against eta^2 times the analytic correlation, and
// coincidence counts against the sum of per-trial click probabilities.
std::pair<Comparison, Comparison> layer_comparisons(const sim::ScanSettings& s,
                                                    std::span<const sim::ScanPoint> points) {
  const double eta2 = s.detector.efficiency * s.detector.efficiency;
  std::vector<stats::Cell> field_cells;
  std::vector<stats::Cell> click_cells;
  for (const auto& p : points) {
    const double c = correlation::coincidence_correlation(
        s.pulses.mu_a(), s.pulses.mu_b(), s.process, s.geometry_at(p.delta_l),
        s.pulses.spectrum());
    field_cells.push_back({p.mean_intensity_product, eta2 * c,
                           p.intensity_product_stderr * p.intensity_product_stderr});
    click_cells.push_back({static_cast<double>(p.coincidences),
                           static_cast<double>(p.trials) * p.mean_click_product,
                           p.click_count_variance});
  }
  return {compare(field_cells, 0.0), compare(click_cells, 50.0)};
}

}  // namespace

CheckResult check_energy_conservation(const Options& o) {
  double worst = 0.0;
  for (int k = 0; k < kPropertySamples; ++k) {
    auto r = property_stream(o, 1, k);
    const double ia = 5.0 * r.uniform();
    const double ib = 5.0 * r.uniform();
    const double dphi = kTwoPi * r.uniform();
    const double gamma = r.uniform();
    const auto out = o.kernel(ia, ib, dphi, gamma);
    worst = std::max(worst, std::abs(out.c + out.d - (ia + ib)) / std::max(ia + ib, 1e-300));
  }
  return {"energy_conservation", worst <= 1e-12,
          fmt::format("max relative error {:.2e} over {} inputs", worst, kPropertySamples)};
}

CheckResult check_nonnegativity(const Options& o) {
  double lowest = 0.0;
  for (int k = 0; k < kPropertySamples; ++k) {
    auto r = property_stream(o, 2, k);
    const double ia = 5.0 * r.uniform();
    const double ib = 5.0 * r.uniform();
    const auto out = o.kernel(ia, ib, kTwoPi * r.uniform(), r.uniform());
    lowest = std::min({lowest, out.c, out.d});
  }
  return {"nonnegativity", lowest >= 0.0, fmt::format("lowest output {:.3e}", lowest)};
}

CheckResult check_field_intensity_consistency(const Options& o) {
  double worst = 0.0;
  for (int k = 0; k < kPropertySamples; ++k) {
    auto r = property_stream(o, 3, k);
    const field::OpticalField a(5.0 * r.uniform(), kTwoPi * r.uniform());
    const field::OpticalField b(5.0 * r.uniform(), kTwoPi * r.uniform());
    const auto [c, d] = field::beamsplitter_fields(a, b);
    const auto out =
        o.kernel(a.intensity(), b.intensity(), field::wrap_phase(b.phase() - a.phase()), 1.0);
    const double scale = std::max(a.intensity() + b.intensity(), 1e-300);
    worst = std::max({worst, std::abs(out.c - c.intensity()) / scale,
                      std::abs(out.d - d.intensity()) / scale});
  }
  return {"field_intensity_consistency", worst <= 1e-12,
          fmt::format("max relative error {:.2e}", worst)};
}

CheckResult check_classical_ceiling(const Options& o) {
  double highest = 0.0;
  for (int k = 0; k < kPropertySamples; ++k) {
    auto r = property_stream(o, 4, k);
    correlation::IntensityMoments m;
    m.mean_a = 3.0 * r.uniform();
    m.mean_b = 3.0 * r.uniform();
    // Excess variance from none to a few times the thermal value.
    m.second_a = m.mean_a * m.mean_a * (1.0 + 3.0 * r.uniform() * r.uniform());
    m.second_b = m.mean_b * m.mean_b * (1.0 + 3.0 * r.uniform() * r.uniform());
    if (m.mean_a == 0.0 && m.mean_b == 0.0) continue;
    highest = std::max(highest, correlation::classical_visibility(m));
  }
  const double equal = correlation::classical_visibility(
      correlation::IntensityMoments::constant(0.37, 0.37));
  return {"classical_ceiling", highest <= 0.5 + 1e-12 && std::abs(equal - 0.5) <= 1e-15,
          fmt::format("max V_c {:.15f}, equal constant inputs {:.15f}", highest, equal)};
}

CheckResult check_reduction(const Options& o) {
  using correlation::TrialEnsemble;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    auto r = property_stream(o, 5, k);
    auto law = [&r] {
      std::vector<TrialEnsemble::LawPoint> points(1 + (r() % 3));
      for (auto& p : points) p = {2.0 * r.uniform(), 0.1 + r.uniform()};
      return points;
    };
    const auto la = law();
    const auto lb = law();
    const int phase_points = 3 + static_cast<int>(r() % 14);
    const double offset = kTwoPi * r.uniform();
    const double dphi_ij = kTwoPi * r.uniform();
    const double gamma = r.uniform();
    const auto ensemble = TrialEnsemble::coherent_product(la, lb, phase_points, offset, dphi_ij);
    const auto terms = correlation::cross_slot_terms(ensemble);
    const correlation::IntensityMoments m{terms.mean_a, terms.mean_b, terms.second_a,
                                          terms.second_b};
    const double cross = correlation::cross_slot_correlation(ensemble, gamma);
    const double same =
        correlation::same_slot_correlation(m, correlation::sin_product_mean(dphi_ij), gamma);
    worst = std::max(worst, std::abs(cross - same) / std::max(std::abs(same), 1e-300));
  }

  // Dip contrast against dphi_ij follows |cos dphi_ij| exactly.
  double worst_cos = 0.0;
  const std::vector<TrialEnsemble::LawPoint> unit{{1.0, 1.0}};
  for (int k = 0; k <= 36; ++k) {
    const double dphi_ij = std::numbers::pi * k / 36.0;
    const auto ens = TrialEnsemble::coherent_product(unit, unit, 8, 0.0, dphi_ij);
    const double base = correlation::cross_slot_correlation(ens, 0.0);
    const double floor = correlation::cross_slot_correlation(ens, 1.0);
    const double v = (base - floor) / base;
    worst_cos = std::max(worst_cos, std::abs(std::abs(v) - 0.5 * std::abs(std::cos(dphi_ij))));
  }
  return {"cross_slot_reduction", worst <= 1e-12 && worst_cos <= 1e-12,
          fmt::format("max relative gap {:.2e} over 1000 ensembles; |cos| law error {:.2e}",
                      worst, worst_cos)};
}

CheckResult check_oracle_separation(const Options&) {
  using namespace quantum;
  const double single = oracle_visibility({SingleHeralded{}, true});
  const double coherent = oracle_visibility({WeakCoherent{0.1}, true});
  const double incoherent = oracle_visibility({WeakCoherent{0.1}, false});
  const bool ok = std::abs(single - 1.0) <= 1e-12 && std::abs(coherent - 0.5) <= 1e-12 &&
                  std::abs(incoherent) <= 1e-12;
  return {"oracle_separation", ok,
          fmt::format("single {:.12f}, coherent {:.12f}, incoherent {:.12f}", single, coherent,
                      incoherent)};
}

CheckResult check_phase_uniformity(const Options& o) {
  const auto process = phase::PhaseProcess::independent_rf();
  const auto n = static_cast<std::size_t>(o.trials);
  std::vector<double> phases(n);
  double sum_sin = 0.0;
  double sum_sin2 = 0.0;
  bool locked = true;
  for (std::size_t t = 0; t < n; ++t) {
    const auto pair = phase::sample_phase_pair(process, Duration{}, TrialKey{o.seed, 6, t});
    phases[t] = pair.slot_i;
    locked = locked && pair.slot_j == pair.slot_i;
    const double s = std::sin(pair.slot_i);
    sum_sin += s;
    sum_sin2 += s * s;
  }
  const double tol = 3.0 / std::sqrt(static_cast<double>(n));
  const double mean_sin = sum_sin / static_cast<double>(n);
  const double mean_sin2 = sum_sin2 / static_cast<double>(n);
  const double p = stats::ks_p_value(stats::ks_uniform_statistic(phases, 0.0, kTwoPi), n);
  const bool ok = locked && std::abs(mean_sin) <= tol && std::abs(mean_sin2 - 0.5) <= tol &&
                  p >= 0.01;
  return {"phase_uniformity", ok,
          fmt::format("<sin>={:.4f}, <sin^2>={:.4f} (tol {:.4f}), KS p={:.3f}, i-j locked: {}",
                      mean_sin, mean_sin2, tol, p, locked)};
}

CheckResult check_fringe_phase(const Options& o) {
  auto s = base_settings(o);
  s.process = phase::PhaseProcess::synchronized(0.0);
  const double lambda_um = s.pulses.wavelength.in_micrometers();
  for (int k = 0; k < 16; ++k) s.delays.push_back(Length::micrometers(k * lambda_um / 8.0));
  const auto points = sim::run_scan_points(s, o.threads);

  std::vector<stats::Cell> cells;
  for (const auto& p : points) {
    const auto mean = correlation::singles_expectation(
        s.pulses.mu_a(), s.pulses.mu_b(), s.process, s.geometry_at(p.delta_l),
        s.pulses.spectrum());
    const double n = static_cast<double>(p.trials);
    for (const auto& [count, intensity] :
         {std::pair{p.singles_c, mean.c}, std::pair{p.singles_d, mean.d}}) {
      const double q = sim::click_probability(intensity, s.detector);
      cells.push_back({static_cast<double>(count), n * q, n * q * (1.0 - q)});
    }
  }
  const auto cmp = compare(cells, 50.0);
  return {"mc_fringe_phase", cmp.pass(), describe(cmp)};
}

CheckResult check_dip_agreement(const Options& o, int slot_offset) {
  auto s = base_settings(o);
  s.slot_offset = slot_offset;
  s.delays = coarse_delays();
  const auto points = sim::run_scan_points(s, o.threads);
  const auto [field_cmp, click_cmp] = layer_comparisons(s, points);
  return {fmt::format("mc_dip_agreement_m{}", slot_offset), field_cmp.pass() && click_cmp.pass(),
          fmt::format("intensity products: {}; clicks: {}", describe(field_cmp),
                      describe(click_cmp))};
}

CheckResult check_fm_delayed_flat(const Options& o) {
  auto s = base_settings(o);
  s.process = phase::PhaseProcess::independent_rf_with_fm_noise(0.0, Frequency::megahertz(40.0),
                                                                0.5);
  s.slot_offset = 18;
  s.delays = coarse_delays();
  const auto points = sim::run_scan_points(s, o.threads);

  double spread = 0.0;
  const double c0 = correlation::coincidence_correlation(
      s.pulses.mu_a(), s.pulses.mu_b(), s.process, s.geometry_at(Length{}), s.pulses.spectrum());
  for (const auto dl : s.delays) {
    const double c = correlation::coincidence_correlation(
        s.pulses.mu_a(), s.pulses.mu_b(), s.process, s.geometry_at(dl), s.pulses.spectrum());
    spread = std::max(spread, std::abs(c - c0) / c0);
  }
  const auto [field_cmp, click_cmp] = layer_comparisons(s, points);
  return {"mc_fm_delayed_flat", spread <= 1e-12 && field_cmp.pass() && click_cmp.pass(),
          fmt::format("analytic spread {:.1e}; intensity products: {}; clicks: {}", spread,
                      describe(field_cmp), describe(click_cmp))};
}

CheckResult check_visibility_vs_oracle(const Options& o) {
  auto s = base_settings(o);
  s.delays = sim::ScanRange{}.points();
  const auto points = sim::run_scan_points(s, o.threads);
  sim::VisibilityOptions vo;
  vo.dip_center = Length{};
  const auto est = sim::estimate_visibility(points, s.pulses.spectrum(), vo);
  const double oracle = quantum::oracle_visibility({quantum::WeakCoherent{s.pulses.mu_a()}, true});
  const double z = (est.visibility - oracle) / est.standard_error;
  return {"mc_visibility_vs_oracle", std::abs(z) <= 3.0,
          fmt::format("V = {:.4f} +- {:.4f}, oracle {:.4f}, z = {:.2f}", est.visibility,
                      est.standard_error, oracle, z)};
}

CheckResult check_thread_determinism(const Options& o) {
  auto s = base_settings(o);
  s.trials_per_point = std::min<std::uint64_t>(o.trials, 20000);
  s.slot_offset = 18;
  s.delays = coarse_delays();
  const auto one = sim::run_scan_points(s, 1);
  const auto many = sim::run_scan_points(s, 4);
  bool same = one.size() == many.size();
  for (std::size_t k = 0; same && k < one.size(); ++k) {
    same = one[k].singles_c == many[k].singles_c && one[k].singles_d == many[k].singles_d &&
           one[k].coincidences == many[k].coincidences &&
           one[k].mean_click_product == many[k].mean_click_product;
  }
  return {"thread_determinism", same, same ? "1 and 4 threads agree" : "results differ"};
}

std::vector<CheckResult> run_all(const Options& o) {
  return {
      check_energy_conservation(o),
      check_nonnegativity(o),
      check_field_intensity_consistency(o),
      check_classical_ceiling(o),
      check_reduction(o),
      check_oracle_separation(o),
      check_phase_uniformity(o),
      check_fringe_phase(o),
      check_dip_agreement(o, 0),
      check_dip_agreement(o, 18),
      check_fm_delayed_flat(o),
      check_visibility_vs_oracle(o),
      check_thread_determinism(o),
  };
}

}  // namespace homsim::validation
