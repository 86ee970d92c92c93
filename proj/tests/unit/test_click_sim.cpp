#include <doctest.h>

#include <cmath>
#include <numbers>

#include "homsim/click_sim.hpp"
#include "homsim/correlator.hpp"

using namespace homsim;
using namespace homsim::sim;

namespace {

constexpr double pi = std::numbers::pi;

field::DelayGeometry geometry(const PulseTrainConfig& c, double dl_um, int m = 0) {
  return {Length::micrometers(dl_um), c.slot_period(), m, c.wavelength};
}

double p_click(double eta_i) { return 1.0 - std::exp(-eta_i); }

}  // namespace

TEST_CASE("click probability") {
  CHECK(click_probability(0.0, {0.6}) == 0.0);
  CHECK(click_probability(1e3, {1.0}) == 1.0);
  CHECK(click_probability(1e3, {1.0}) <= 1.0);
  // 1 - e^-0.06 by direct evaluation, frozen.
  CHECK(p_click(0.06) == doctest::Approx(0.05823546641575129).epsilon(1e-13));
  CHECK(click_probability(0.1, {0.6}) == doctest::Approx(0.05823546641575129).epsilon(1e-14));
  CHECK_THROWS_AS(click_probability(-0.1, {0.6}), std::invalid_argument);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS((DetectorModel{0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DetectorModel{1.1}.validate()), std::invalid_argument);
  PulseTrainConfig c;
  c.mean_photons = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.bandwidth = Length::nanometers(900.0);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  CHECK_THROWS_AS(run_point(c, phase::PhaseProcess::independent_rf(), geometry(c, 0.0), {}, 0, {}),
                  std::invalid_argument);
}

TEST_CASE("default configuration") {
  const PulseTrainConfig c;
  CHECK(c.wavelength.in_nanometers() == doctest::Approx(780.0));
  CHECK(c.bandwidth.in_nanometers() == doctest::Approx(15.0));
  CHECK(c.slot_period().in_nanoseconds() == doctest::Approx(11.7647058823529));
  CHECK(c.mu_a() == 0.1);
  CHECK(c.mu_b() == 0.1);
  CHECK(DetectorModel{}.efficiency == 0.6);
}

TEST_CASE("synthesize_trial examples") {
  const PulseTrainConfig c;
  const auto sync = phase::PhaseProcess::synchronized(0.0);
  const auto f = synthesize_trial(c, sync, geometry(c, 0.0), TrialKey{1, 0, 0});
  CHECK(f.dphi_i == 0.0);
  CHECK(f.dphi_j == 0.0);
  CHECK(f.i_a_i == 0.1);
  CHECK(f.i_a_j == 0.1);
  CHECK(f.i_b_i == 0.1);
  CHECK(f.i_b_j == 0.1);

  const auto rf = phase::PhaseProcess::independent_rf();
  double first = -1.0;
  bool varies = false;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto g = synthesize_trial(c, rf, geometry(c, 3.0, 18), TrialKey{1, 0, t});
    REQUIRE(g.dphi_i == g.dphi_j);
    if (first < 0.0) first = g.dphi_i;
    varies = varies || g.dphi_i != first;
  }
  CHECK(varies);

  // A quarter-wave delay adds pi/2 to both slots.
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto g0 = synthesize_trial(c, rf, geometry(c, 0.0), TrialKey{2, 0, t});
    const auto g1 = synthesize_trial(c, rf, geometry(c, 0.195), TrialKey{2, 0, t});
    REQUIRE(field::wrap_phase(g1.dphi_i - g0.dphi_i) == doctest::Approx(pi / 2.0).epsilon(1e-9));
    REQUIRE(field::wrap_phase(g1.dphi_j - g0.dphi_j) == doctest::Approx(pi / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("one dark input: rate p(mu/2)^2, flat in delay") {
  PulseTrainConfig c;
  c.intensity_ratio = 0.0;
  const DetectorModel det{0.6};
  const double p = p_click(0.6 * 0.05);
  for (double dl : {-50.0, 0.0, 7.0}) {
    const auto pt = run_point(c, phase::PhaseProcess::independent_rf(), geometry(c, dl), det,
                              100000, {42, 0});
    CHECK(pt.mean_click_product == doctest::Approx(p * p).epsilon(1e-12));
    const double n = static_cast<double>(pt.trials);
    CHECK(std::abs(static_cast<double>(pt.coincidences) - n * p * p) <=
          4.0 * std::sqrt(n * p * p));
  }
}

TEST_CASE("overlapped independent RF: dip-to-baseline ratio near one half") {
  PulseTrainConfig c;
  const DetectorModel det{1.0};
  const auto rf = phase::PhaseProcess::independent_rf();
  const auto dip = run_point(c, rf, geometry(c, 0.0), det, 100000, {42, 0});
  const auto far = run_point(c, rf, geometry(c, 200.0), det, 100000, {42, 1});

  // Expected-rate ratio: converges to the analytic 0.5 up to O(mu^2).
  const double expected_ratio = dip.mean_click_product / far.mean_click_product;
  CHECK(std::abs(expected_ratio - 0.5) <= 0.02);

  // Observed ratio within 3 sigma of it.
  const double r = dip.rate() / far.rate();
  const double sigma = r * std::sqrt(1.0 / static_cast<double>(dip.coincidences) +
                                     1.0 / static_cast<double>(far.coincidences));
  CHECK(std::abs(r - expected_ratio) <= 3.0 * sigma);
}

TEST_CASE("FM noise at 18 slots: coincidence rate flat within 3 stderr") {
  const PulseTrainConfig c;
  const auto fm = phase::PhaseProcess::independent_rf_with_fm_noise(0.0, Frequency::megahertz(40.0), 0.5);
  std::vector<ScanPoint> pts;
  double mean = 0.0;
  const std::vector<double> delays{-60.0, -30.0, 0.0, 30.0, 60.0};
  for (std::size_t k = 0; k < delays.size(); ++k) {
    pts.push_back(run_point(c, fm, geometry(c, delays[k], 18), {}, 100000, {42, k}));
    mean += pts.back().rate() / static_cast<double>(delays.size());
  }
  for (const auto& p : pts) CHECK(std::abs(p.rate() - mean) <= 3.0 * p.coincidence_rate_stderr);
}

TEST_CASE("count invariants") {
  const PulseTrainConfig c;
  for (int m : {0, 18}) {
    const auto pt = run_point(c, phase::PhaseProcess::independent_rf(), geometry(c, 4.0, m), {},
                              20000, {3, 0});
    CHECK(pt.singles_c <= pt.trials);
    CHECK(pt.singles_d <= pt.trials);
    CHECK(pt.coincidences <= std::min(pt.singles_c, pt.singles_d));
    CHECK(pt.coincidence_rate_stderr ==
          doctest::Approx(std::sqrt(pt.rate() * (1.0 - pt.rate()) / 20000.0)));
  }
}

TEST_CASE("zero and 18-slot windows see the same fields when i-j is locked") {
  const PulseTrainConfig c;
  const auto rf = phase::PhaseProcess::independent_rf();
  const auto a = run_point(c, rf, geometry(c, 2.0, 0), {}, 5000, {4, 0});
  const auto b = run_point(c, rf, geometry(c, 2.0, 18), {}, 5000, {4, 0});
  CHECK(a.coincidences == b.coincidences);
  CHECK(a.mean_click_product == b.mean_click_product);

  // A non-zero dphi_ij only changes the delayed window.
  const auto shifted = phase::PhaseProcess::independent_rf(pi / 2.0);
  const auto c0 = run_point(c, shifted, geometry(c, 2.0, 0), {}, 5000, {4, 0});
  const auto c18 = run_point(c, shifted, geometry(c, 2.0, 18), {}, 5000, {4, 0});
  CHECK(c0.mean_click_product == a.mean_click_product);
  CHECK(c18.mean_click_product != a.mean_click_product);
}

TEST_CASE("scan range grid") {
  const auto pts = ScanRange{}.points();
  REQUIRE(pts.size() == 121);
  CHECK(pts.front().in_micrometers() == doctest::Approx(-60.0));
  CHECK(pts.back().in_micrometers() == doctest::Approx(60.0));
  CHECK(ScanRange{-3.0, 3.0, 0.05}.points().size() == 121);
  CHECK_THROWS_AS((ScanRange{0.0, 1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ScanRange{1.0, 1.0, 0.1}.validate()), std::invalid_argument);
}

TEST_CASE("property: scans are identical for any thread count") {
  ScanSettings s;
  s.trials_per_point = 5000;
  s.slot_offset = 18;
  s.process = phase::PhaseProcess::independent_rf_with_fm_noise(0.3, Frequency::megahertz(40.0), 0.5);
  s.delays = ScanRange{-20.0, 20.0, 2.0}.points();
  const auto one = run_scan_points(s, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = run_scan_points(s, threads);
    REQUIRE(many.size() == one.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
      REQUIRE(many[k].coincidences == one[k].coincidences);
      REQUIRE(many[k].singles_c == one[k].singles_c);
      REQUIRE(many[k].singles_d == one[k].singles_d);
      REQUIRE(many[k].mean_click_product == one[k].mean_click_product);
    }
  }
}

TEST_CASE("property: per-trial expectations match the analytic correlation") {
  // The mean of eta^2 I_C I_D over trials estimates eta^2 <I_C I_D> with no click noise.
  const PulseTrainConfig c;
  const DetectorModel det{};
  const auto rf = phase::PhaseProcess::independent_rf();
  for (double dl : {0.0, 10.0, 25.0}) {
    const auto g = geometry(c, dl, 18);
    const auto pt = run_point(c, rf, g, det, 50000, {5, 0});
    const double ref = det.efficiency * det.efficiency *
                       correlation::coincidence_correlation(c.mu_a(), c.mu_b(), rf, g, c.spectrum());
    CHECK(std::abs(pt.mean_intensity_product - ref) <= 4.0 * pt.intensity_product_stderr);
  }
}
