#include "homsim/trial_stream.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace homsim {

TrialStream::TrialStream(const TrialKey& key, StreamDomain domain) {
  if (key.scan_point > TrialKey::kMaxScanPoint || key.trial > TrialKey::kMaxTrial) {
    throw std::out_of_range("trial key exceeds the packed (scan point, trial) range");
  }
  const std::uint64_t packed = (key.scan_point << 40) | key.trial;
  const std::uint64_t seeded = mix64(key.seed + kGolden * static_cast<std::uint64_t>(domain));
  state_ = mix64(seeded ^ packed);
}

double TrialStream::normal() {
  const double u1 = uniform_open_zero();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace homsim
