#include "vortex/kernels/interpolate.hpp"

#include <array>
#include <cmath>

namespace vortex::kernels {

namespace {

struct Weights {
  int base = 0;  // node index of the first of the four points
  std::array<double, 4> w{};
};

Weights cubic_weights(double x, const GridSpec& grid) {
  const double s = (x + kPi) / grid.spacing();
  const double cell = std::floor(s);
  const double t = s - cell;
  Weights out;
  out.base = static_cast<int>(cell) - 1;
  out.w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  out.w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  out.w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  out.w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
  return out;
}

template <int Components>
std::array<double, Components> interpolate_impl(const std::array<std::span<const double>, Components>& f,
                                                const GridSpec& grid, const Vec2& x) {
  const int n = grid.size();
  const Weights w1 = cubic_weights(x[0], grid);
  const Weights w2 = cubic_weights(x[1], grid);
  std::array<int, 4> j2{};
  for (int b = 0; b < 4; ++b) j2[b] = ((w2.base + b) % n + n) % n;
  std::array<double, Components> out{};
  for (int a = 0; a < 4; ++a) {
    const int i1 = ((w1.base + a) % n + n) % n;
    std::array<double, Components> row{};
    for (int b = 0; b < 4; ++b) {
      const std::size_t idx = grid.index(i1, j2[b]);
      for (int c = 0; c < Components; ++c) row[c] += w2.w[b] * f[c][idx];
    }
    for (int c = 0; c < Components; ++c) out[c] += w1.w[a] * row[c];
  }
  return out;
}

}  // namespace

double interpolate_cubic(std::span<const double> values, const GridSpec& grid, const Vec2& x) {
  return interpolate_impl<1>({values}, grid, x)[0];
}

Vec2 interpolate_cubic(std::span<const double> a, std::span<const double> b, const GridSpec& grid,
                       const Vec2& x) {
  return interpolate_impl<2>({a, b}, grid, x);
}

namespace serial {

void interpolate(std::span<const double> a, std::span<const double> b, const GridSpec& grid,
                 std::span<const Vec2> points, std::span<Vec2> out) {
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = interpolate_cubic(a, b, grid, points[i]);
}

}  // namespace serial

namespace omp {

void interpolate(std::span<const double> a, std::span<const double> b, const GridSpec& grid,
                 std::span<const Vec2> points, std::span<Vec2> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = interpolate_cubic(a, b, grid, points[i]);
}

}  // namespace omp

}  // namespace vortex::kernels
