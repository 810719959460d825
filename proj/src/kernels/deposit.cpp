#include "vortex/kernels/deposit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vortex::kernels {

namespace {

// Stencil of one particle: a (2m+1)^2 block of grid nodes around the
// nearest node, with V^N evaluated at each.
struct Stencil {
  int base1 = 0;
  int base2 = 0;
  int width = 0;
  std::vector<double> values;

  void build(const Vec2& x, const Mollifier& mollifier, const GridSpec& grid, int reach) {
    const double h = grid.spacing();
    width = 2 * reach + 1;
    values.resize(static_cast<std::size_t>(width) * width);
    const int c1 = static_cast<int>(std::floor((x[0] + kPi) / h + 0.5));
    const int c2 = static_cast<int>(std::floor((x[1] + kPi) / h + 0.5));
    base1 = c1 - reach;
    base2 = c2 - reach;
    for (int a = 0; a < width; ++a) {
      const double d1 = (base1 + a) * h - kPi - x[0];
      for (int b = 0; b < width; ++b) {
        const double d2 = (base2 + b) * h - kPi - x[1];
        values[static_cast<std::size_t>(a) * width + b] = mollifier(d1, d2);
      }
    }
  }

  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }

  void scatter(double factor, const GridSpec& grid, std::span<double> out) const {
    const int n = grid.size();
    for (int a = 0; a < width; ++a) {
      const int i1 = ((base1 + a) % n + n) % n;
      for (int b = 0; b < width; ++b) {
        const double v = values[static_cast<std::size_t>(a) * width + b];
        if (v == 0.0) continue;
        const int i2 = ((base2 + b) % n + n) % n;
        out[grid.index(i1, i2)] += factor * v;
      }
    }
  }
};

int stencil_reach(const Mollifier& mollifier, const GridSpec& grid) {
  return static_cast<int>(std::ceil(mollifier.support_radius() / grid.spacing())) + 1;
}

void deposit_range(std::span<const Vec2> positions, double particle_weight,
                   const Mollifier& mollifier, const GridSpec& grid, bool mass_conserving,
                   int reach, std::span<double> out) {
  const double cell_area = grid.spacing() * grid.spacing();
  Stencil stencil;
  for (const Vec2& x : positions) {
    stencil.build(x, mollifier, grid, reach);
    double factor = particle_weight;
    if (mass_conserving) factor /= stencil.sum() * cell_area;
    stencil.scatter(factor, grid, out);
  }
}

}  // namespace

namespace serial {

void deposit(std::span<const Vec2> positions, double particle_weight, const Mollifier& mollifier,
             const GridSpec& grid, bool mass_conserving, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  deposit_range(positions, particle_weight, mollifier, grid, mass_conserving,
                stencil_reach(mollifier, grid), out);
}

}  // namespace serial

namespace omp {

void deposit(std::span<const Vec2> positions, double particle_weight, const Mollifier& mollifier,
             const GridSpec& grid, bool mass_conserving, std::span<double> out) {
  const int reach = stencil_reach(mollifier, grid);
  const std::size_t n = positions.size();
  const std::size_t points = grid.points();
  std::vector<double> buffers(static_cast<std::size_t>(kDepositChunks) * points, 0.0);

#pragma omp parallel for schedule(static)
  for (int c = 0; c < kDepositChunks; ++c) {
    const std::size_t begin = n * c / kDepositChunks;
    const std::size_t end = n * (c + 1) / kDepositChunks;
    deposit_range(positions.subspan(begin, end - begin), particle_weight, mollifier, grid,
                  mass_conserving, reach,
                  std::span<double>(buffers).subspan(c * points, points));
  }

#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < points; ++p) {
    double s = 0.0;
    for (int c = 0; c < kDepositChunks; ++c) s += buffers[c * points + p];
    out[p] = s;
  }
}

}  // namespace omp

}  // namespace vortex::kernels
