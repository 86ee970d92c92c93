#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <variant>

// Feynman-path picture of a delayed coincidence: D1 fires in slot i and D2 in
// slot j. Four two-photon histories lead to that event:
//   a: a_i -> D1, b_j -> D2   (both photons transmitted)
//   b: b_i -> D1, a_j -> D2   (both reflected; the exchange of a)
//   c: a_i -> D1, a_j -> D2   (both photons from input A)
//   d: b_i -> D1, b_j -> D2   (both photons from input B)
// Histories in the same distinguishability class add in amplitude, different
// classes add in probability.

namespace homsim::quantum {

enum class PathLabel { a, b, c, d };

std::string_view to_string(PathLabel label);

struct PathAmplitude {
  PathLabel label = PathLabel::a;
  std::complex<double> amplitude;
  int distinguishability_class = 0;
};

/// Attenuated laser pulses with mean photon number mu per pulse, 0 < mu <= 1.
struct WeakCoherent {
  double mu = 0.1;
};

/// One photon per input whose pair-emission amplitudes exclude histories c and d.
struct SingleHeralded {};

struct SourceModel {
  std::variant<WeakCoherent, SingleHeralded> kind = WeakCoherent{};
  /// Pulses i and j of each input keep a fixed phase relation.
  bool within_input_coherent = true;

  /// Throws std::invalid_argument unless 0 < mu <= 1 for WeakCoherent.
  void validate() const;
};

struct SlotPhases {
  double dphi_i = 0.0;
  double dphi_j = 0.0;
};

using PathSet = std::array<PathAmplitude, 4>;

/// The four histories with beamsplitter factors t = 1/sqrt2 (transmission)
/// and r = i/sqrt2 (reflection) and the input phases. Input A carries phase 0
/// in both slots, input B carries dphi_i and dphi_j.
PathSet enumerate_paths(const SourceModel& source, const SlotPhases& phases = {});

/// Sum over classes of |sum of amplitudes in class|^2, with an extra phase
/// `detuning` applied to history b.
double coincidence_probability(std::span<const PathAmplitude> paths, double detuning = 0.0);

/// Coincidence probability with every history distinguishable.
double baseline_probability(std::span<const PathAmplitude> paths);

/// Smallest coincidence probability over all detunings of history b.
double minimum_probability(std::span<const PathAmplitude> paths);

/// 1 - min_detuning P / baseline P.
double oracle_visibility(const SourceModel& source, const SlotPhases& phases = {});

}  // namespace homsim::quantum
