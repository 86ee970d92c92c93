#pragma once

#include <cstdint>
#include <limits>

namespace homsim {

/// Identifies one Monte Carlo trial. Every random number a trial consumes is a
/// pure function of this key, so results do not depend on evaluation order.
struct TrialKey {
  static constexpr std::uint64_t kMaxScanPoint = (std::uint64_t{1} << 24) - 1;
  static constexpr std::uint64_t kMaxTrial = (std::uint64_t{1} << 40) - 1;

  std::uint64_t seed = 0;
  std::uint64_t scan_point = 0;  // < 2^24
  std::uint64_t trial = 0;       // < 2^40
};

/// Independent purposes a trial draws randomness for.
enum class StreamDomain : std::uint64_t { phase = 1, clicks = 2 };

/// SplitMix64 finaliser. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream keyed by (TrialKey, domain).
///
/// For a fixed seed, (scan_point, trial) packs into one 64-bit word and the
/// keyed state is a bijection of that word, so distinct trials never share a
/// starting state. Satisfies UniformRandomBitGenerator.
class TrialStream {
 public:
  using result_type = std::uint64_t;

  /// Throws std::out_of_range if the key exceeds the packed field widths.
  TrialStream(const TrialKey& key, StreamDomain domain);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_zero() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal();

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace homsim
