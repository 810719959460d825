#include "vortex/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace vortex {

struct FourierTransform::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
};

namespace {

// FFTW's planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}


}  // namespace

FourierTransform::FourierTransform(const GridSpec& grid) : grid_(grid) {
  static std::map<int, std::shared_ptr<const Plans>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[grid.size()];
  if (!slot) {
    auto plans = std::make_shared<Plans>();
    const int n = grid.size();
    std::vector<double> real(grid.points());
    std::vector<Complex> spec(grid.spectral_points());
    auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->r2c = fftw_plan_dft_r2c_2d(n, n, real.data(), cplx, flags);
    plans->c2r = fftw_plan_dft_c2r_2d(n, n, cplx, real.data(), flags | FFTW_DESTROY_INPUT);
    slot = std::move(plans);
  }
  plans_ = slot;
}

void FourierTransform::forward(std::span<const double> values, std::span<Complex> coeffs) const {
  const int n = grid_.size();
  const int h = grid_.half();
  // r2c never writes to its input.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(grid_.points());
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < h; ++i2) {
      const double sign = ((i1 + i2) % 2 == 0) ? scale : -scale;
      coeffs[grid_.spectral_index(i1, i2)] *= sign;
    }
  }
}

void FourierTransform::inverse(std::span<const Complex> coeffs, std::span<double> values) const {
  const int n = grid_.size();
  const int h = grid_.half();
  std::vector<Complex> scratch(coeffs.begin(), coeffs.end());
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < h; ++i2) {
      if ((i1 + i2) % 2 != 0) scratch[grid_.spectral_index(i1, i2)] *= -1.0;
    }
  }
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       values.data());
}

}  // namespace vortex
