#include <cmath>

#include "vortex/noise.hpp"
#include "vortex/rng.hpp"

namespace vortex {

NoisePath generate_path(std::size_t modes, std::size_t particles, double dt, int n_steps,
                        std::uint64_t master_seed, std::uint32_t path_index) {
  if (!(dt > 0.0)) throw ConfigError("noise path requires dt > 0");
  if (n_steps < 0) throw ConfigError("noise path requires n_steps >= 0");
  NoisePath path;
  path.dt = dt;
  path.n_steps = n_steps;
  path.modes = modes;
  path.particles = particles;
  path.master_seed = master_seed;
  path.path_index = path_index;
  const rng::Key key = rng::key_from_seed(master_seed);
  const double scale = std::sqrt(dt);
  const auto steps = static_cast<std::size_t>(n_steps);
  path.common.resize(steps * modes);
  path.brownian_plus.resize(steps * particles);
  path.brownian_minus.resize(steps * particles);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto step = static_cast<std::uint32_t>(s);
    for (std::size_t k = 0; k < modes; ++k) {
      const auto z = rng::normal_pair(
          key, rng::make_counter(path_index, step, static_cast<std::uint32_t>(k), rng::Stream::common_noise));
      path.common[s * modes + k] = scale * z[0];
    }
  }
#pragma omp parallel for schedule(static)
  for (std::size_t s = 0; s < steps; ++s) {
    const auto step = static_cast<std::uint32_t>(s);
    for (std::size_t i = 0; i < particles; ++i) {
      const auto idx = static_cast<std::uint32_t>(i);
      const auto zp = rng::normal_pair(key, rng::make_counter(path_index, step, idx, rng::Stream::brownian_plus));
      const auto zm = rng::normal_pair(key, rng::make_counter(path_index, step, idx, rng::Stream::brownian_minus));
      path.brownian_plus[s * particles + i] = {scale * zp[0], scale * zp[1]};
      path.brownian_minus[s * particles + i] = {scale * zm[0], scale * zm[1]};
    }
  }
  return path;
}

NoisePath NoisePath::coarsen(int factor) const {
  if (factor < 1 || n_steps % factor != 0) {
    throw ConfigError("coarsening factor must divide the number of steps");
  }
  NoisePath out;
  out.dt = dt * factor;
  out.n_steps = n_steps / factor;
  out.modes = modes;
  out.particles = particles;
  out.master_seed = master_seed;
  out.path_index = path_index;
  out.coarsening = coarsening * factor;
  const auto steps = static_cast<std::size_t>(out.n_steps);
  out.common.assign(steps * modes, 0.0);
  out.brownian_plus.assign(steps * particles, Vec2{0.0, 0.0});
  out.brownian_minus.assign(steps * particles, Vec2{0.0, 0.0});
  for (int s = 0; s < n_steps; ++s) {
    const std::size_t c = static_cast<std::size_t>(s / factor);
    for (std::size_t k = 0; k < modes; ++k) out.common[c * modes + k] += dw(s, k);
    for (std::size_t i = 0; i < particles; ++i) {
      out.brownian_plus[c * particles + i][0] += db_plus(s, i)[0];
      out.brownian_plus[c * particles + i][1] += db_plus(s, i)[1];
      out.brownian_minus[c * particles + i][0] += db_minus(s, i)[0];
      out.brownian_minus[c * particles + i][1] += db_minus(s, i)[1];
    }
  }
  return out;
}

}  // namespace vortex
