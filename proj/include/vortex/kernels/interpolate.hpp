#pragma once

#include <span>

#include "vortex/grid.hpp"

// Grid-to-point interpolation with periodic tensor cubic Lagrange weights
// on the 4 x 4 block of nodes surrounding the point (fourth-order accurate).
namespace vortex::kernels {

double interpolate_cubic(std::span<const double> values, const GridSpec& grid, const Vec2& x);

/// Interpolates two fields that share a grid, reusing the weights.
Vec2 interpolate_cubic(std::span<const double> a, std::span<const double> b,
                       const GridSpec& grid, const Vec2& x);

namespace serial {
void interpolate(std::span<const double> a, std::span<const double> b, const GridSpec& grid,
                 std::span<const Vec2> points, std::span<Vec2> out);
}

namespace omp {
void interpolate(std::span<const double> a, std::span<const double> b, const GridSpec& grid,
                 std::span<const Vec2> points, std::span<Vec2> out);
}

}  // namespace vortex::kernels
