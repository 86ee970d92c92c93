#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "homsim/stats.hpp"

using namespace homsim::stats;

// Reference values computed with SciPy (scipy.stats.chi2.ppf, norm.isf) and frozen.

TEST_CASE("chi-squared quantiles") {
  CHECK(chi_squared_quantile(0.95, 1.0) == doctest::Approx(3.841458820694124).epsilon(1e-12));
  CHECK(chi_squared_quantile(1.0 - kThreeSigmaAlpha, 10.0) ==
        doctest::Approx(26.901119405801232).epsilon(1e-10));
}

TEST_CASE("normal bounds") {
  CHECK(two_sided_z(kThreeSigmaAlpha) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sidak_z(kThreeSigmaAlpha, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sidak_z(kThreeSigmaAlpha, 121) == doctest::Approx(4.240097336498777).epsilon(1e-10));
}

TEST_CASE("pooling reaches the minimum expectation") {
  std::vector<Cell> cells(10, Cell{2.0, 12.0, 12.0});
  const auto pooled = pool_cells(cells, 50.0);
  REQUIRE(pooled.size() == 2);
  CHECK(pooled[0].expected == 60.0);
  CHECK(pooled[1].expected == 60.0);
  CHECK(pooled[0].observed + pooled[1].observed == 20.0);

  // The 12-count tail is folded into the last full cell.
  std::vector<Cell> eleven(11, Cell{1.0, 12.0, 12.0});
  const auto folded = pool_cells(eleven, 50.0);
  REQUIRE(folded.size() == 2);
  CHECK(folded[1].expected == 72.0);

  // Too little in total: a single cell.
  CHECK(pool_cells(std::vector<Cell>(3, Cell{1.0, 1.0, 1.0}), 50.0).size() == 1);
}

TEST_CASE("chi-square test on exact and shifted data") {
  std::vector<Cell> exact(10, Cell{100.0, 100.0, 100.0});
  const auto t = chi_square_test(exact);
  CHECK(t.statistic == 0.0);
  CHECK(t.dof == 10.0);
  CHECK(t.pass());

  std::vector<Cell> shifted(10, Cell{140.0, 100.0, 100.0});
  CHECK_FALSE(chi_square_test(shifted).pass());
  CHECK(chi_square_test(shifted).max_abs_z == doctest::Approx(4.0));
}

TEST_CASE("property: chi-square test false-alarm rate on Poisson data") {
  std::mt19937_64 rng(51);
  std::poisson_distribution<int> pois(200.0);
  int failures = 0;
  const int repeats = 2000;
  for (int r = 0; r < repeats; ++r) {
    std::vector<Cell> cells;
    for (int k = 0; k < 20; ++k) cells.push_back({static_cast<double>(pois(rng)), 200.0, 200.0});
    failures += chi_square_test(cells).pass() ? 0 : 1;
  }
  // Two tests at alpha each: the combined rate stays below 2 alpha, ~0.0054.
  CHECK(failures <= 25);
}

TEST_CASE("Kolmogorov-Smirnov") {
  CHECK(ks_uniform_statistic(std::vector<double>{0.5}, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(ks_uniform_statistic(std::vector<double>{0.25, 0.75}, 0.0, 1.0) == doctest::Approx(0.25));
  CHECK(ks_p_value(0.1, 100) == doctest::Approx(0.25622118507010405).epsilon(1e-8));
  CHECK(ks_p_value(0.0, 100) == doctest::Approx(1.0));
  CHECK(ks_p_value(0.5, 1000) < 1e-12);

  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> sample(5000);
  for (auto& x : sample) x = u(rng);
  CHECK(ks_p_value(ks_uniform_statistic(sample, 0.0, 2.0), sample.size()) > 0.001);
  CHECK(ks_p_value(ks_uniform_statistic(sample, 0.0, 2.5), sample.size()) < 1e-6);
}

TEST_CASE("summary statistics") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto m = mean_and_stderr(x);
  CHECK(m.mean == 2.5);
  CHECK(m.stderr_of_mean == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(correlation(x, std::vector<double>{2.0, 4.0, 6.0, 8.0}) == doctest::Approx(1.0));
  CHECK(correlation(x, std::vector<double>{4.0, 3.0, 2.0, 1.0}) == doctest::Approx(-1.0));
  CHECK(correlation(x, std::vector<double>{1.0, 1.0, 1.0, 1.0}) == 0.0);
}
