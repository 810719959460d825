#include <cmath>

#include "vortex/spde.hpp"
#include "vortex/spectral_ops.hpp"

namespace vortex {

// Ito weak form of d w = [-A(u).grad w + nu Lap w + 1/2 div(D grad w)] dt
//                        - sum_k sigma_k.grad w dW_k, tested against phi:
// <w_t,phi> = <w_0,phi> + int_0^t <w, A.grad phi> + nu <w, Lap phi>
//             + 1/2 <w, div(D grad phi)> ds + sum_k int_0^t <w, sigma_k.grad phi> dW_k.
std::vector<double> weak_form_residual(const SpdeSolver& solver, const SpdeTrajectory& trajectory,
                                       const NoisePath& path, const SpectralField& phi) {
  if (!trajectory.dense) throw ConfigError("weak-form residual needs a trajectory stored at every step");
  const SpdeConfig& config = solver.config();
  if (!(phi.grid() == config.grid)) throw ConfigError("test function is on a different grid");
  const VectorField grad_phi = gradient(phi);
  const SpectralField diffusion = laplacian(phi) * config.nu + solver.ito_correction(phi);
  std::vector<SpectralField> sigma_grad_phi;
  for (std::size_t k = 0; k < solver.noise().size(); ++k) {
    sigma_grad_phi.push_back(solver.noise_term(k, phi) * -1.0);
  }

  std::vector<double> residual;
  residual.reserve(trajectory.states.size());
  const double initial = inner_product(trajectory.states.front().vorticity(), phi);
  double integral = 0.0;
  for (std::size_t n = 0; n < trajectory.states.size(); ++n) {
    const SpdeState& state = trajectory.states[n];
    const SpectralField w = state.vorticity();
    residual.push_back(std::abs(inner_product(w, phi) - initial - integral));
    if (n + 1 == trajectory.states.size()) break;
    const VectorField a = solver.transport_velocity(state);
    const SpectralField a_grad_phi =
        pointwise_product(a.u1, grad_phi.u1) + pointwise_product(a.u2, grad_phi.u2);
    integral += config.dt * (inner_product(w, a_grad_phi) + inner_product(w, diffusion));
    const int s = trajectory.steps[n];
    for (std::size_t k = 0; k < sigma_grad_phi.size(); ++k) {
      integral += inner_product(w, sigma_grad_phi[k]) * path.dw(s, k);
    }
  }
  return residual;
}

}  // namespace vortex
