#include "homsim/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <type_traits>
#include <utility>

namespace homsim::scenario {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<ScenarioName, std::string_view>, 7> kNames{{
    {ScenarioName::mz_synchronized, "mz_synchronized"},
    {ScenarioName::mz_independent, "mz_independent"},
    {ScenarioName::hom_overlapped, "hom_overlapped"},
    {ScenarioName::hom_delayed, "hom_delayed"},
    {ScenarioName::hom_fm_overlapped, "hom_fm_overlapped"},
    {ScenarioName::hom_fm_delayed, "hom_fm_delayed"},
    {ScenarioName::custom, "custom"},
}};

constexpr std::array<std::pair<PhaseKind, std::string_view>, 3> kPhaseKinds{{
    {PhaseKind::synchronized, "synchronized"},
    {PhaseKind::independent_rf, "independent_rf"},
    {PhaseKind::independent_rf_fm_noise, "independent_rf_fm_noise"},
}};

std::string_view to_string(PhaseKind kind) {
  for (const auto& [k, name] : kPhaseKinds) {
    if (k == kind) return name;
  }
  return "?";
}

PhaseKind parse_phase_kind(std::string_view name) {
  for (const auto& [k, n] : kPhaseKinds) {
    if (n == name) return k;
  }
  throw ConfigError("unknown phase kind '" + std::string(name) + "'");
}

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
void read_if(const json& obj, const char* key, T& target) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
        throw ConfigError(std::string(key) + " must be non-negative");
      }
    }
  }
  target = v.get<T>();
}

}  // namespace

std::string_view to_string(ScenarioName name) {
  for (const auto& [n, text] : kNames) {
    if (n == name) return text;
  }
  return "?";
}

ScenarioName parse_scenario_name(std::string_view name) {
  for (const auto& [n, text] : kNames) {
    if (text == name) return n;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

phase::PhaseProcess PhaseSettings::process() const {
  try {
    switch (kind) {
      case PhaseKind::synchronized: return phase::PhaseProcess::synchronized(phi0);
      case PhaseKind::independent_rf: return phase::PhaseProcess::independent_rf(dphi_ij);
      case PhaseKind::independent_rf_fm_noise:
        return phase::PhaseProcess::independent_rf_with_fm_noise(
            dphi_ij, Frequency::megahertz(rf_frequency_mhz), deviation_fraction);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("phase: ") + e.what());
  }
  throw ConfigError("phase: invalid kind");
}

void ScenarioConfig::validate() const {
  try {
    pulses.validate();
    detector.validate();
    scan.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  (void)phase.process();
  if (slot_offset < 0) throw ConfigError("slot_offset must be non-negative");
  if (trials_per_point == 0 || trials_per_point - 1 > TrialKey::kMaxTrial) {
    throw ConfigError("trials_per_point out of range");
  }
  if (!std::isfinite(dip_center_um)) throw ConfigError("dip_center_um must be finite");
  const auto delays = scan.points();
  if (delays.size() - 1 > TrialKey::kMaxScanPoint) throw ConfigError("too many scan points");
  try {
    (void)scan_settings().geometry_at(delays.front());
    (void)scan_settings().geometry_at(delays.back());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

sim::ScanSettings ScenarioConfig::scan_settings() const {
  sim::ScanSettings s;
  s.pulses = pulses;
  s.process = phase.process();
  s.detector = detector;
  s.slot_offset = slot_offset;
  s.delays = scan.points();
  s.trials_per_point = trials_per_point;
  s.seed = seed;
  return s;
}

ScenarioConfig scenario_defaults(ScenarioName name) {
  ScenarioConfig c;
  c.scenario = name;
  switch (name) {
    case ScenarioName::mz_synchronized:
      c.phase.kind = PhaseKind::synchronized;
      c.scan = {-3.0, 3.0, 0.05};
      break;
    case ScenarioName::mz_independent:
      c.scan = {-3.0, 3.0, 0.05};
      break;
    case ScenarioName::hom_overlapped:
    case ScenarioName::custom:
      break;
    case ScenarioName::hom_delayed:
      c.slot_offset = kDelayedSlotOffset;
      break;
    case ScenarioName::hom_fm_overlapped:
      c.phase.kind = PhaseKind::independent_rf_fm_noise;
      break;
    case ScenarioName::hom_fm_delayed:
      c.phase.kind = PhaseKind::independent_rf_fm_noise;
      c.slot_offset = kDelayedSlotOffset;
      break;
  }
  return c;
}

nlohmann::json to_json(const ScenarioConfig& c) {
  return json{
      {"schema_version", kSchemaVersion},
      {"scenario", to_string(c.scenario)},
      {"pulses",
       {{"wavelength_nm", c.pulses.wavelength.in_nanometers()},
        {"bandwidth_nm", c.pulses.bandwidth.in_nanometers()},
        {"repetition_rate_mhz", c.pulses.repetition_rate.in_megahertz()},
        {"mean_photons", c.pulses.mean_photons},
        {"intensity_ratio", c.pulses.intensity_ratio}}},
      {"phase",
       {{"kind", to_string(c.phase.kind)},
        {"phi0", c.phase.phi0},
        {"dphi_ij", c.phase.dphi_ij},
        {"rf_frequency_mhz", c.phase.rf_frequency_mhz},
        {"deviation_fraction", c.phase.deviation_fraction}}},
      {"detector", {{"efficiency", c.detector.efficiency}}},
      {"geometry", {{"slot_offset", c.slot_offset}}},
      {"scan", {{"start_um", c.scan.start_um}, {"stop_um", c.scan.stop_um},
                {"step_um", c.scan.step_um}}},
      {"trials_per_point", c.trials_per_point},
      {"seed", c.seed},
      {"dip_center_um", c.dip_center_um},
  };
}

ScenarioConfig from_json(const nlohmann::json& doc, std::optional<ScenarioName> name_override) {
  try {
    reject_unknown_keys(doc, "config",
                        {"schema_version", "scenario", "pulses", "phase", "detector", "geometry",
                         "scan", "trials_per_point", "seed", "dip_center_um"});
    if (!doc.contains("schema_version")) throw ConfigError("missing schema_version");
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw ConfigError("unsupported schema_version");
    }

    ScenarioName name = ScenarioName::custom;
    if (name_override) {
      name = *name_override;
    } else if (doc.contains("scenario")) {
      name = parse_scenario_name(doc.at("scenario").get<std::string>());
    }
    ScenarioConfig c = scenario_defaults(name);

    if (doc.contains("pulses")) {
      const json& p = doc.at("pulses");
      reject_unknown_keys(p, "pulses",
                          {"wavelength_nm", "bandwidth_nm", "repetition_rate_mhz", "mean_photons",
                           "intensity_ratio"});
      if (p.contains("wavelength_nm")) {
        c.pulses.wavelength = Length::nanometers(p.at("wavelength_nm").get<double>());
      }
      if (p.contains("bandwidth_nm")) {
        c.pulses.bandwidth = Length::nanometers(p.at("bandwidth_nm").get<double>());
      }
      if (p.contains("repetition_rate_mhz")) {
        c.pulses.repetition_rate = Frequency::megahertz(p.at("repetition_rate_mhz").get<double>());
      }
      read_if(p, "mean_photons", c.pulses.mean_photons);
      read_if(p, "intensity_ratio", c.pulses.intensity_ratio);
    }
    if (doc.contains("phase")) {
      const json& p = doc.at("phase");
      reject_unknown_keys(p, "phase",
                          {"kind", "phi0", "dphi_ij", "rf_frequency_mhz", "deviation_fraction"});
      if (p.contains("kind")) c.phase.kind = parse_phase_kind(p.at("kind").get<std::string>());
      read_if(p, "phi0", c.phase.phi0);
      read_if(p, "dphi_ij", c.phase.dphi_ij);
      read_if(p, "rf_frequency_mhz", c.phase.rf_frequency_mhz);
      read_if(p, "deviation_fraction", c.phase.deviation_fraction);
    }
    if (doc.contains("detector")) {
      const json& d = doc.at("detector");
      reject_unknown_keys(d, "detector", {"efficiency"});
      read_if(d, "efficiency", c.detector.efficiency);
    }
    if (doc.contains("geometry")) {
      const json& g = doc.at("geometry");
      reject_unknown_keys(g, "geometry", {"slot_offset"});
      read_if(g, "slot_offset", c.slot_offset);
    }
    if (doc.contains("scan")) {
      const json& s = doc.at("scan");
      reject_unknown_keys(s, "scan", {"start_um", "stop_um", "step_um"});
      read_if(s, "start_um", c.scan.start_um);
      read_if(s, "stop_um", c.scan.stop_um);
      read_if(s, "step_um", c.scan.step_um);
    }
    read_if(doc, "trials_per_point", c.trials_per_point);
    read_if(doc, "seed", c.seed);
    read_if(doc, "dip_center_um", c.dip_center_um);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace homsim::scenario
