#include "homsim/quantum_oracle.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace homsim::quantum {

std::string_view to_string(PathLabel label) {
  switch (label) {
    case PathLabel::a: return "a";
    case PathLabel::b: return "b";
    case PathLabel::c: return "c";
    case PathLabel::d: return "d";
  }
  return "?";
}

void SourceModel::validate() const {
  if (const auto* wc = std::get_if<WeakCoherent>(&kind)) {
    if (!(wc->mu > 0.0 && wc->mu <= 1.0)) {
      throw std::invalid_argument("weak coherent source needs 0 < mu <= 1");
    }
  }
}

PathSet enumerate_paths(const SourceModel& source, const SlotPhases& phases) {
  source.validate();
  using cd = std::complex<double>;
  const double s = std::numbers::sqrt2 / 2.0;
  const cd t{s, 0.0};
  const cd r{0.0, s};

  const bool single = std::holds_alternative<SingleHeralded>(source.kind);
  const double slot_amp = single ? 1.0 : std::sqrt(std::get<WeakCoherent>(source.kind).mu);
  const cd a_i = slot_amp;
  const cd a_j = slot_amp;
  const cd b_i = std::polar(slot_amp, phases.dphi_i);
  const cd b_j = std::polar(slot_amp, phases.dphi_j);

  const bool coherent = source.within_input_coherent;
  PathSet paths{{
      {PathLabel::a, t * t * a_i * b_j, 0},
      {PathLabel::b, r * r * b_i * a_j, coherent ? 0 : 1},
      {PathLabel::c, t * r * a_i * a_j, coherent ? 1 : 2},
      {PathLabel::d, r * t * b_i * b_j, coherent ? 2 : 3},
  }};
  if (single) {
    paths[2].amplitude = 0.0;
    paths[3].amplitude = 0.0;
  }
  return paths;
}

namespace {

std::complex<double> detuned(const PathAmplitude& p, double detuning) {
  return p.label == PathLabel::b ? p.amplitude * std::polar(1.0, detuning) : p.amplitude;
}

}  // namespace

double coincidence_probability(std::span<const PathAmplitude> paths, double detuning) {
  std::map<int, std::complex<double>> by_class;
  for (const auto& p : paths) by_class[p.distinguishability_class] += detuned(p, detuning);
  double total = 0.0;
  for (const auto& [cls, amp] : by_class) total += std::norm(amp);
  return total;
}

double baseline_probability(std::span<const PathAmplitude> paths) {
  double total = 0.0;
  for (const auto& p : paths) total += std::norm(p.amplitude);
  return total;
}

double minimum_probability(std::span<const PathAmplitude> paths) {
  // Only history b is detuned: its class contributes |S + A_b e^{i d}|^2,
  // whose minimum over d is (|S| - |A_b|)^2.
  const PathAmplitude* b = nullptr;
  for (const auto& p : paths) {
    if (p.label == PathLabel::b) b = &p;
  }
  std::map<int, std::complex<double>> by_class;
  for (const auto& p : paths) {
    if (&p != b) by_class[p.distinguishability_class] += p.amplitude;
  }
  double total = 0.0;
  for (const auto& [cls, amp] : by_class) {
    if (b != nullptr && cls == b->distinguishability_class) {
      const double gap = std::abs(amp) - std::abs(b->amplitude);
      total += gap * gap;
    } else {
      total += std::norm(amp);
    }
  }
  if (b != nullptr && !by_class.contains(b->distinguishability_class)) {
    total += std::norm(b->amplitude);
  }
  return total;
}

double oracle_visibility(const SourceModel& source, const SlotPhases& phases) {
  const PathSet paths = enumerate_paths(source, phases);
  const double base = baseline_probability(paths);
  return 1.0 - minimum_probability(paths) / base;
}

}  // namespace homsim::quantum
