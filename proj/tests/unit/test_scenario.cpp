#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "homsim/scenario.hpp"

using namespace homsim;
using namespace homsim::scenario;
using nlohmann::json;

TEST_CASE("scenario names round-trip") {
  for (auto n : {ScenarioName::mz_synchronized, ScenarioName::mz_independent,
                 ScenarioName::hom_overlapped, ScenarioName::hom_delayed,
                 ScenarioName::hom_fm_overlapped, ScenarioName::hom_fm_delayed,
                 ScenarioName::custom}) {
    CHECK(parse_scenario_name(to_string(n)) == n);
  }
  CHECK_THROWS_AS(parse_scenario_name("hom"), ConfigError);
}

TEST_CASE("defaults match the reference experiment") {
  const auto c = scenario_defaults(ScenarioName::hom_fm_delayed);
  CHECK(c.pulses.wavelength.in_nanometers() == doctest::Approx(780.0));
  CHECK(c.pulses.bandwidth.in_nanometers() == doctest::Approx(15.0));
  CHECK(c.pulses.slot_period().in_nanoseconds() == doctest::Approx(11.76).epsilon(1e-3));
  CHECK(c.pulses.mean_photons == 0.1);
  CHECK(c.detector.efficiency == 0.6);
  CHECK(c.slot_offset == 18);
  CHECK(c.phase.kind == PhaseKind::independent_rf_fm_noise);
  CHECK(c.phase.rf_frequency_mhz == 40.0);
  CHECK(c.phase.deviation_fraction == 0.5);
  CHECK(c.trials_per_point == 100000);
  CHECK(c.seed == 42);
  CHECK(c.scan.points().size() == 121);

  CHECK(scenario_defaults(ScenarioName::hom_overlapped).slot_offset == 0);
  CHECK(scenario_defaults(ScenarioName::hom_delayed).slot_offset == 18);
  CHECK(scenario_defaults(ScenarioName::hom_fm_overlapped).slot_offset == 0);
  CHECK(scenario_defaults(ScenarioName::mz_synchronized).phase.kind == PhaseKind::synchronized);
  CHECK(scenario_defaults(ScenarioName::mz_independent).phase.kind == PhaseKind::independent_rf);
  for (auto n : {ScenarioName::mz_synchronized, ScenarioName::hom_overlapped,
                 ScenarioName::hom_fm_delayed}) {
    CHECK_NOTHROW(scenario_defaults(n).validate());
  }
}

TEST_CASE("JSON round-trip preserves the configuration") {
  auto c = scenario_defaults(ScenarioName::hom_delayed);
  c.pulses.mean_photons = 0.05;
  c.phase.dphi_ij = 0.25;
  c.scan = {-10.0, 10.0, 0.5};
  c.seed = 7;
  c.dip_center_um = 1.5;
  const auto back = from_json(to_json(c));
  CHECK(back.scenario == ScenarioName::hom_delayed);
  CHECK(back.pulses.mean_photons == 0.05);
  CHECK(back.phase.dphi_ij == 0.25);
  CHECK(back.scan.step_um == 0.5);
  CHECK(back.seed == 7);
  CHECK(back.dip_center_um == 1.5);
  CHECK(to_json(back) == to_json(c));
}

TEST_CASE("partial documents override scenario defaults") {
  const json doc = {{"schema_version", 1},
                    {"scenario", "hom_fm_delayed"},
                    {"pulses", {{"mean_photons", 0.2}}},
                    {"trials_per_point", 1000}};
  const auto c = from_json(doc);
  CHECK(c.slot_offset == 18);
  CHECK(c.pulses.mean_photons == 0.2);
  CHECK(c.trials_per_point == 1000);
  CHECK(from_json(doc, ScenarioName::hom_overlapped).slot_offset == 0);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(from_json(json{{"scenario", "hom_delayed"}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 2}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 1}, {"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 1}, {"pulses", {{"colour", 1}}}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 1}, {"seed", -1}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 1}, {"seed", "x"}}), ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 1}, {"geometry", {{"slot_offset", 1.5}}}}),
                  ConfigError);
  CHECK_THROWS_AS(from_json(json{{"schema_version", 1}, {"phase", {{"kind", "laser"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(from_json(json::array()), ConfigError);
}

TEST_CASE("validation rejects unphysical values") {
  auto c = scenario_defaults(ScenarioName::hom_overlapped);
  c.detector.efficiency = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = scenario_defaults(ScenarioName::hom_overlapped);
  c.slot_offset = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = scenario_defaults(ScenarioName::hom_overlapped);
  c.trials_per_point = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = scenario_defaults(ScenarioName::hom_fm_delayed);
  c.phase.deviation_fraction = 2.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = scenario_defaults(ScenarioName::hom_overlapped);
  c.scan.step_um = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("reading config files") {
  const auto dir = std::filesystem::temp_directory_path() / "homsim_test_scenario";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  std::ofstream(good) << to_json(scenario_defaults(ScenarioName::hom_delayed)).dump(2);
  CHECK(from_json(read_json_file(good)).slot_offset == 18);

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(read_json_file(bad), ConfigError);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}
