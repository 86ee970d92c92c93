#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "homsim/trial_stream.hpp"

using namespace homsim;

TEST_CASE("identical keys give identical streams") {
  TrialStream a(TrialKey{42, 7, 12345}, StreamDomain::phase);
  TrialStream b(TrialKey{42, 7, 12345}, StreamDomain::phase);
  for (int k = 0; k < 100; ++k) CHECK(a() == b());
}

TEST_CASE("distinct keys and domains start from distinct states") {
  std::set<std::uint64_t> first;
  for (std::uint64_t point = 0; point < 40; ++point) {
    for (std::uint64_t trial = 0; trial < 250; ++trial) {
      first.insert(TrialStream(TrialKey{42, point, trial}, StreamDomain::phase)());
    }
  }
  CHECK(first.size() == 40 * 250);
  CHECK(TrialStream(TrialKey{1, 0, 0}, StreamDomain::phase)() !=
        TrialStream(TrialKey{1, 0, 0}, StreamDomain::clicks)());
  CHECK(TrialStream(TrialKey{1, 0, 0}, StreamDomain::phase)() !=
        TrialStream(TrialKey{2, 0, 0}, StreamDomain::phase)());
}

TEST_CASE("keys beyond the packed widths are rejected") {
  CHECK_NOTHROW(TrialStream(TrialKey{0, TrialKey::kMaxScanPoint, TrialKey::kMaxTrial},
                            StreamDomain::phase));
  CHECK_THROWS_AS(TrialStream(TrialKey{0, TrialKey::kMaxScanPoint + 1, 0}, StreamDomain::phase),
                  std::out_of_range);
  CHECK_THROWS_AS(TrialStream(TrialKey{0, 0, TrialKey::kMaxTrial + 1}, StreamDomain::phase),
                  std::out_of_range);
}

TEST_CASE("uniform and normal deviates have the right moments") {
  TrialStream s(TrialKey{9, 0, 0}, StreamDomain::phase);
  const int n = 200000;
  double su = 0.0, su2 = 0.0, sn = 0.0, sn2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double o = s.uniform_open_zero();
    REQUIRE(o > 0.0);
    REQUIRE(o <= 1.0);
    su += u;
    su2 += u * u;
    const double z = s.normal();
    sn += z;
    sn2 += z * z;
  }
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(su / n - 0.5) < tol * std::sqrt(1.0 / 12.0));
  CHECK(std::abs(su2 / n - 1.0 / 3.0) < tol * 0.3);
  CHECK(std::abs(sn / n) < tol);
  CHECK(std::abs(sn2 / n - 1.0) < tol * std::sqrt(2.0));
}
