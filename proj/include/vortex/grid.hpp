#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vortex {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Area of the periodic cell [-pi, pi]^2.
inline constexpr double kTorusArea = kTwoPi * kTwoPi;

using Vec2 = std::array<double, 2>;

/// Invalid user input: bad configuration, violated preconditions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A run went numerically wrong (NaN, CFL violation, under-resolved mesh).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform G x G grid on [-pi, pi)^2 with points x_j = -pi + 2 pi j / G.
///
/// Spectral storage follows the real-to-complex half layout: index
/// (i1, i2) with i1 in [0, G) and i2 in [0, G/2]; wavenumber k1 = i1 for
/// i1 < G/2 and i1 - G otherwise, k2 = i2.  The column i2 = G/2 is the
/// Nyquist column and represents k2 = -G/2.
class GridSpec {
 public:
  explicit GridSpec(int modes_per_axis, double dealias_fraction = 2.0 / 3.0);

  int size() const { return modes_; }
  int half() const { return modes_ / 2 + 1; }
  std::size_t points() const { return static_cast<std::size_t>(modes_) * modes_; }
  std::size_t spectral_points() const {
    return static_cast<std::size_t>(modes_) * static_cast<std::size_t>(half());
  }
  double spacing() const { return kTwoPi / modes_; }
  double coord(int j) const { return -kPi + spacing() * j; }
  double dealias_fraction() const { return dealias_fraction_; }

  /// Signed wavenumber along the full axis for storage index i in [0, G).
  int wavenumber(int i) const { return i < modes_ / 2 ? i : i - modes_; }
  /// Signed wavenumber along the half axis; the Nyquist column maps to -G/2.
  int half_wavenumber(int i) const { return i < modes_ / 2 ? i : -modes_ / 2; }
  bool is_nyquist(int k) const { return k == -modes_ / 2; }

  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * modes_ + i2;
  }
  std::size_t spectral_index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * half() + i2;
  }

  /// True when mode (k1, k2) survives the dealiasing rule
  /// max(|k1|, |k2|) <= dealias_fraction * G / 2.
  bool keeps_mode(int k1, int k2) const;

  bool operator==(const GridSpec& other) const {
    return modes_ == other.modes_ && dealias_fraction_ == other.dealias_fraction_;
  }

 private:
  int modes_;
  double dealias_fraction_;
};

/// Wraps a coordinate into [-pi, pi).
inline double wrap_coordinate(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  y -= kPi;
  // fmod can return exactly 2 pi - pi after rounding.
  return y >= kPi ? -kPi : y;
}

inline Vec2 wrap(const Vec2& x) { return {wrap_coordinate(x[0]), wrap_coordinate(x[1])}; }

/// Minimum-image representative of a displacement, in [-pi, pi).
inline double minimum_image(double d) { return wrap_coordinate(d); }

inline Vec2 minimum_image(const Vec2& a, const Vec2& b) {
  return {minimum_image(a[0] - b[0]), minimum_image(a[1] - b[1])};
}

}  // namespace vortex
