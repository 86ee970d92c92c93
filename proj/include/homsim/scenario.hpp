#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "homsim/click_sim.hpp"
#include "homsim/phase_process.hpp"

// Named experimental configurations and their JSON representation.

namespace homsim::scenario {

/// Malformed or physically invalid configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioName {
  mz_synchronized,    // synchronized RF, singles fringes
  mz_independent,     // independent RF, fringes washed out
  hom_overlapped,     // independent RF, zero electronic delay
  hom_delayed,        // independent RF, 18-slot electronic delay
  hom_fm_overlapped,  // FM noise on one driver, zero delay
  hom_fm_delayed,     // FM noise, 18-slot delay
  custom,
};

std::string_view to_string(ScenarioName name);
/// Throws ConfigError for an unknown name.
ScenarioName parse_scenario_name(std::string_view name);

enum class PhaseKind { synchronized, independent_rf, independent_rf_fm_noise };

struct PhaseSettings {
  PhaseKind kind = PhaseKind::independent_rf;
  double phi0 = 0.0;
  double dphi_ij = 0.0;
  double rf_frequency_mhz = 40.0;
  double deviation_fraction = 0.5;

  /// Throws ConfigError on invalid parameters.
  phase::PhaseProcess process() const;
};

inline constexpr int kSchemaVersion = 1;
inline constexpr int kDelayedSlotOffset = 18;

struct ScenarioConfig {
  ScenarioName scenario = ScenarioName::custom;
  sim::PulseTrainConfig pulses;
  PhaseSettings phase;
  sim::DetectorModel detector;
  int slot_offset = 0;
  sim::ScanRange scan;
  std::uint64_t trials_per_point = 100000;
  std::uint64_t seed = 42;
  /// Calibrated zero-delay position used by the visibility estimate.
  double dip_center_um = 0.0;

  /// Throws ConfigError when any part is invalid.
  void validate() const;
  sim::ScanSettings scan_settings() const;
};

ScenarioConfig scenario_defaults(ScenarioName name);

nlohmann::json to_json(const ScenarioConfig& config);

/// Starts from the defaults of `name_override`, else of the document's
/// "scenario" key, else of custom, and applies every other key present.
/// Unknown keys and a schema_version other than kSchemaVersion are errors.
ScenarioConfig from_json(const nlohmann::json& doc,
                         std::optional<ScenarioName> name_override = std::nullopt);

/// Throws IoError if the file cannot be read, ConfigError if it does not parse.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace homsim::scenario
