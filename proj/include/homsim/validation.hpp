#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homsim/click_sim.hpp"

// Self-check suite run by `homsim validate`. Deterministic checks use fixed
// tolerances; Monte Carlo checks compare counts with their exact conditional
// expectations through z-scores, so their tolerances scale as 1/sqrt(trials).

namespace homsim::validation {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  std::uint64_t trials = 100000;  // per scan point in Monte Carlo checks
  std::uint64_t seed = 20240607;
  unsigned threads = 1;
  /// Beamsplitter used by the kernel-level and Monte Carlo checks.
  sim::BeamsplitterKernel kernel = &field::beamsplitter_intensities_unchecked;
};

CheckResult check_energy_conservation(const Options& options);
CheckResult check_nonnegativity(const Options& options);
CheckResult check_field_intensity_consistency(const Options& options);
CheckResult check_classical_ceiling(const Options& options);
CheckResult check_reduction(const Options& options);
CheckResult check_oracle_separation(const Options& options);
CheckResult check_phase_uniformity(const Options& options);
/// Synchronized singles against the click expectation of the analytic fringe.
CheckResult check_fringe_phase(const Options& options);
/// Field-level intensity products against the analytic correlation, and
/// coincidence counts against their per-trial click expectation.
CheckResult check_dip_agreement(const Options& options, int slot_offset);
/// FM-noise scan at 18-slot delay: no interference term and counts flat in delay.
CheckResult check_fm_delayed_flat(const Options& options);
/// Scan visibility at zero delay against the coherent-state oracle value.
CheckResult check_visibility_vs_oracle(const Options& options);
CheckResult check_thread_determinism(const Options& options);

std::vector<CheckResult> run_all(const Options& options);

}  // namespace homsim::validation
