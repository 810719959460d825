#include "vortex/kernels/pairwise.hpp"

namespace vortex::kernels {

namespace {

Vec2 row_sum(const Vec2& x, std::size_t self, std::span<const Vec2> sources, bool exclude_self,
             const KernelTable& table) {
  Vec2 s{0.0, 0.0};
  for (std::size_t j = 0; j < sources.size(); ++j) {
    if (exclude_self && j == self) continue;
    const Vec2 t = table.evaluate(minimum_image(x, sources[j]));
    s[0] += t[0];
    s[1] += t[1];
  }
  return s;
}

}  // namespace

namespace serial {

void pairwise_velocity(std::span<const Vec2> targets, std::span<const Vec2> sources,
                       double weight, bool exclude_self, const KernelTable& table,
                       std::span<Vec2> accum) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Vec2 s = row_sum(targets[i], i, sources, exclude_self, table);
    accum[i][0] += weight * s[0];
    accum[i][1] += weight * s[1];
  }
}

}  // namespace serial

namespace omp {

void pairwise_velocity(std::span<const Vec2> targets, std::span<const Vec2> sources,
                       double weight, bool exclude_self, const KernelTable& table,
                       std::span<Vec2> accum) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vec2 s = row_sum(targets[i], static_cast<std::size_t>(i), sources, exclude_self, table);
    accum[i][0] += weight * s[0];
    accum[i][1] += weight * s[1];
  }
}

}  // namespace omp

}  // namespace vortex::kernels
