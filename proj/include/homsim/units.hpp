#pragma once

#include <compare>

namespace homsim {

/// Physical length, stored in meters.
class Length {
 public:
  constexpr Length() = default;

  static constexpr Length meters(double v) { return Length{v}; }
  static constexpr Length micrometers(double v) { return Length{v * 1e-6}; }
  static constexpr Length nanometers(double v) { return Length{v * 1e-9}; }

  constexpr double in_meters() const { return m_; }
  constexpr double in_micrometers() const { return m_ * 1e6; }
  constexpr double in_nanometers() const { return m_ * 1e9; }

  constexpr auto operator<=>(const Length&) const = default;

 private:
  explicit constexpr Length(double m) : m_(m) {}
  double m_ = 0.0;
};

/// Time interval, stored in seconds.
class Duration {
 public:
  constexpr Duration() = default;

  static constexpr Duration seconds(double v) { return Duration{v}; }
  static constexpr Duration nanoseconds(double v) { return Duration{v * 1e-9}; }

  constexpr double in_seconds() const { return s_; }
  constexpr double in_nanoseconds() const { return s_ * 1e9; }

  constexpr Duration operator*(double k) const { return Duration{s_ * k}; }

  constexpr auto operator<=>(const Duration&) const = default;

 private:
  explicit constexpr Duration(double s) : s_(s) {}
  double s_ = 0.0;
};

/// Frequency, stored in hertz.
class Frequency {
 public:
  constexpr Frequency() = default;

  static constexpr Frequency hertz(double v) { return Frequency{v}; }
  static constexpr Frequency megahertz(double v) { return Frequency{v * 1e6}; }

  constexpr double in_hertz() const { return hz_; }
  constexpr double in_megahertz() const { return hz_ * 1e-6; }

  constexpr Duration period() const { return Duration::seconds(1.0 / hz_); }

  constexpr auto operator<=>(const Frequency&) const = default;

 private:
  explicit constexpr Frequency(double hz) : hz_(hz) {}
  double hz_ = 0.0;
};

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

}  // namespace homsim
