#pragma once

#include <vector>

#include "vortex/spectral_field.hpp"

namespace vortex {

/// Coefficient table of `field`, copied out in the half-spectrum layout.
std::vector<Complex> forward_transform(const SpectralField& field);

/// (I - Delta)^{s/2}: multiplies f_hat(k) by (1 + |k|^2)^{s/2}.
SpectralField fractional_bessel(const SpectralField& field, double s);

/// ||(I - Delta)^{s/2} f||_{L^p} on the torus [-pi, pi]^2.
///
/// For p = 2 this is evaluated spectrally, (2 pi) (sum_k (1+|k|^2)^s |f_hat|^2)^{1/2};
/// the 2 pi is the square root of the torus area under our coefficient
/// normalization.  Other p use grid quadrature of the Bessel-transformed
/// field, ((2 pi)^2 mean_j |g(x_j)|^p)^{1/p}.
double sobolev_norm(const SpectralField& field, double s, double p);

/// Grid quadrature L^p norm, ((2 pi)^2 mean_j |f(x_j)|^p)^{1/p}.
double lp_norm(const SpectralField& field, double p);

/// int f g dx by grid quadrature.
double inner_product(const SpectralField& f, const SpectralField& g);

VectorField gradient(const SpectralField& field);
SpectralField divergence(const VectorField& field);
SpectralField laplacian(const SpectralField& field);
/// d1 u2 - d2 u1.
SpectralField curl(const VectorField& field);
/// Spectral derivative d^a1/dx1^a1 d^a2/dx2^a2.
SpectralField derivative(const SpectralField& field, int order1, int order2);

/// Zeroes coefficients outside max(|k1|,|k2|) <= fraction * G / 2.
SpectralField dealias(const SpectralField& field);

/// Pointwise product evaluated on the grid.
SpectralField pointwise_product(const SpectralField& a, const SpectralField& b);

/// Largest |k . u_hat(k)| relative to the largest |u_hat(k)|.
double divergence_defect(const VectorField& field);

}  // namespace vortex
