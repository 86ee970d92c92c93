#include <doctest.h>

#include <cmath>
#include <numbers>

#include "homsim/fock.hpp"
#include "homsim/quantum_oracle.hpp"

using namespace homsim::quantum;

TEST_CASE("two-photon transitions: HOM cancellation and bunching") {
  CHECK(std::abs(beamsplitter_transition(1, 1, 1, 1)) < 1e-15);
  CHECK(std::norm(beamsplitter_transition(1, 1, 2, 0)) == doctest::Approx(0.5));
  CHECK(std::norm(beamsplitter_transition(1, 1, 0, 2)) == doctest::Approx(0.5));
  CHECK(beamsplitter_transition(1, 0, 1, 0) == std::complex<double>(std::sqrt(0.5), 0.0));
  CHECK(std::abs(beamsplitter_transition(1, 0, 0, 1) - std::complex<double>(0.0, std::sqrt(0.5))) <
        1e-15);
  CHECK(beamsplitter_transition(2, 0, 0, 1) == std::complex<double>{});
}

TEST_CASE("truncated states") {
  CHECK(TwoModeState::basis(2, 1, 3).probability(2, 1) == 1.0);
  CHECK_THROWS_AS(TwoModeState::basis(3, 1, 3), std::out_of_range);
  CHECK_THROWS_AS(TwoModeState(-1), std::invalid_argument);
  const auto s = TwoModeState::coherent(0.3, std::complex<double>(0.0, 0.2), 10);
  CHECK(s.total_probability() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("property: the beamsplitter is unitary within each photon-number sector") {
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; n + m <= 6; ++m) {
      const auto out = apply_beamsplitter(TwoModeState::basis(n, m, 6));
      REQUIRE(out.total_probability() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  const auto in = TwoModeState::coherent(0.5, std::polar(0.5, 1.1), 8);
  CHECK(apply_beamsplitter(in).total_probability() ==
        doctest::Approx(in.total_probability()).epsilon(1e-10));
}

TEST_CASE("Fock amplitudes agree with the path picture to O(mu^2)") {
  const double mu = 0.01;
  for (const SlotPhases ph : {SlotPhases{0.0, 0.0}, SlotPhases{0.3, 0.3}, SlotPhases{1.0, 2.5}}) {
    const auto fock = fock_path_amplitudes(mu, ph);
    const auto paths = enumerate_paths({WeakCoherent{mu}, true}, ph);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(fock[k] - paths[k].amplitude) <= mu * mu);
    }
  }
}

TEST_CASE("Fock coincidence visibility approaches one half") {
  const double v01 = fock_coincidence_visibility(0.1);
  const double v001 = fock_coincidence_visibility(0.01);
  CHECK(std::abs(v001 - 0.5) <= 0.01 * 0.01);
  CHECK(std::abs(v01 - 0.5) <= 0.1 * 0.1);
  // Deviation shrinks quadratically in mu.
  const double ratio = std::abs(v01 - 0.5) / std::abs(v001 - 0.5);
  CHECK(ratio >= 50.0);
  CHECK(ratio <= 200.0);
  CHECK(v01 == doctest::Approx(oracle_visibility({WeakCoherent{0.1}, true})).epsilon(0.02));
  CHECK_THROWS_AS(fock_coincidence_visibility(0.0), std::invalid_argument);
}
