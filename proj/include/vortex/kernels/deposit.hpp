#pragma once

#include <span>

#include "vortex/mollifier.hpp"

// Particle-to-grid deposition of the mollified empirical measure.  The
// serial version is the reference; the OpenMP version splits particles
// into a fixed number of chunks with private accumulation buffers that are
// merged in chunk order, so its result does not depend on the thread count.
namespace vortex::kernels {

inline constexpr int kDepositChunks = 16;

namespace serial {
void deposit(std::span<const Vec2> positions, double particle_weight, const Mollifier& mollifier,
             const GridSpec& grid, bool mass_conserving, std::span<double> out);
}

namespace omp {
void deposit(std::span<const Vec2> positions, double particle_weight, const Mollifier& mollifier,
             const GridSpec& grid, bool mass_conserving, std::span<double> out);
}

}  // namespace vortex::kernels
