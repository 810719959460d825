#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "vortex/grid.hpp"

// Counter-based random numbers (Philox4x32-10).  Every draw is a pure
// function of (key, counter), so results do not depend on the order in
// which entities are processed or on the number of threads.
namespace vortex::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline Counter philox4x32_10(Counter ctr, Key key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

inline Key key_from_seed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Two uniforms in [0, 1) with 53 random bits each.
inline std::array<double, 2> uniform_pair(const Key& key, const Counter& ctr) {
  const Counter r = philox4x32_10(ctr, key);
  constexpr double kScale = 0x1.0p-53;
  const std::uint64_t a = (static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11;
  const std::uint64_t b = (static_cast<std::uint64_t>(r[2]) << 32 | r[3]) >> 11;
  return {static_cast<double>(a) * kScale, static_cast<double>(b) * kScale};
}

/// Two independent standard normals (Box-Muller).
inline std::array<double, 2> normal_pair(const Key& key, const Counter& ctr) {
  const auto u = uniform_pair(key, ctr);
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u[0]));
  const double angle = kTwoPi * u[1];
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Fourth counter word: which kind of draw a counter belongs to.
enum class Stream : std::uint32_t {
  common_noise = 0,
  brownian_plus = 1,
  brownian_minus = 2,
  sample_plus = 3,
  sample_minus = 4,
  uniform_positions = 5,
};

inline Counter make_counter(std::uint32_t a, std::uint32_t b, std::uint32_t c, Stream s) {
  return {a, b, c, static_cast<std::uint32_t>(s)};
}

}  // namespace vortex::rng
