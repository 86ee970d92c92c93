#pragma once

#include <array>
#include <complex>
#include <vector>

#include "homsim/quantum_oracle.hpp"

// Brute-force two-mode Fock-space treatment of the beamsplitter, independent
// of the path picture: coherent inputs are expanded in photon number up to a
// fixed total, and the beamsplitter acts by expanding the input creation
// operators a^dag = (c^dag + i d^dag)/sqrt2, b^dag = (i c^dag + d^dag)/sqrt2.

namespace homsim::quantum {

/// State of two modes truncated at total photon number `max_photons`.
class TwoModeState {
 public:
  explicit TwoModeState(int max_photons);

  /// |alpha>|beta> projected onto n + m <= max_photons (not renormalised).
  static TwoModeState coherent(std::complex<double> alpha, std::complex<double> beta,
                               int max_photons);
  /// The single basis state |n, m>.
  static TwoModeState basis(int n, int m, int max_photons);

  int max_photons() const { return max_; }
  std::complex<double>& at(int n, int m);
  const std::complex<double>& at(int n, int m) const;
  double probability(int n, int m) const { return std::norm(at(n, m)); }
  double total_probability() const;

 private:
  std::size_t index(int n, int m) const;
  int max_;
  std::vector<std::complex<double>> coeffs_;
};

/// Output modes (C, D) for input modes (A, B).
TwoModeState apply_beamsplitter(const TwoModeState& input);

/// <p, q| U |n, m> computed from the operator expansion.
std::complex<double> beamsplitter_transition(int n, int m, int p, int q);

/// Probability of at least one photon in the first (C) or second (D) output mode.
double occupied_probability_c(const TwoModeState& output);
double occupied_probability_d(const TwoModeState& output);

/// Four-history amplitudes rebuilt from Fock components: each history is the
/// product of a one-photon input amplitude, <1|U|1> for its route, in slot i
/// and in slot j. Same labels and phase convention as enumerate_paths.
std::array<std::complex<double>, 4> fock_path_amplitudes(double mu, const SlotPhases& phases,
                                                         int max_photons = 4);

/// Click-level visibility of a delayed coincidence for weak coherent pulses
/// from the truncated expansion: 1 - P(coherent i-j relation) / P(distinguishable
/// inputs), with the random A-B phase averaged over `phase_points` equally
/// spaced values.
double fock_coincidence_visibility(double mu, int max_photons = 4, int phase_points = 64);

}  // namespace homsim::quantum
