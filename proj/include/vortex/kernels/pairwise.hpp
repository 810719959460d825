#pragma once

#include <span>

#include "vortex/biot_savart.hpp"

// Direct O(N^2) interaction sums against a tabulated kernel.
namespace vortex::kernels {

/// accum[i] += weight * sum_j T(targets[i] - sources[j]), skipping j == i
/// when `exclude_self` (targets and sources are then the same species).
namespace serial {
void pairwise_velocity(std::span<const Vec2> targets, std::span<const Vec2> sources,
                       double weight, bool exclude_self, const KernelTable& table,
                       std::span<Vec2> accum);
}

namespace omp {
void pairwise_velocity(std::span<const Vec2> targets, std::span<const Vec2> sources,
                       double weight, bool exclude_self, const KernelTable& table,
                       std::span<Vec2> accum);
}

}  // namespace vortex::kernels
