#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homsim/click_sim.hpp"
#include "homsim/scenario.hpp"
#include "homsim/visibility.hpp"

// CSV output of a delay scan, its metadata side-car, and a static plot.
//
// One row per delay in scan order:
//   delta_l_um,singles_d1,singles_d2,coincidences,trials,rate,rate_stderr
// followed by a comment line
//   # visibility=... visibility_stderr=... baseline_rate=... floor_rate=... dip_center_um=...
// whose values are nan when the scan cannot support a visibility estimate.

namespace homsim::io {

inline constexpr const char* kCsvHeader =
    "delta_l_um,singles_d1,singles_d2,coincidences,trials,rate,rate_stderr";

/// Visibility at the configured dip centre, or nullopt when the scan lacks a baseline.
std::optional<sim::VisibilityEstimate> summarize(std::span<const sim::ScanPoint> points,
                                                 const scenario::ScenarioConfig& config);

void write_csv(std::ostream& out, std::span<const sim::ScanPoint> points,
               const std::optional<sim::VisibilityEstimate>& summary);

struct CsvRow {
  double delta_l_um = 0.0;
  std::uint64_t singles_d1 = 0;
  std::uint64_t singles_d2 = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t trials = 0;
  double rate = 0.0;
  double rate_stderr = 0.0;
};

struct CsvScan {
  std::vector<CsvRow> rows;
  double visibility = 0.0;
  double visibility_stderr = 0.0;
};

/// Throws scenario::ConfigError on a malformed file.
CsvScan read_csv(std::istream& in);

/// Side-car path "<csv>.meta.json". The side-car holds scenario::to_json of
/// the resolved configuration, so it can be passed back as --config.
std::string meta_path(const std::string& csv_path);

/// Line plot of singles (upper panel) and coincidence rate (lower panel) against delay.
void write_plot_svg(std::ostream& out, const CsvScan& scan, const std::string& title);

}  // namespace homsim::io
