#pragma once

#include "disloc/grid.hpp"

namespace disloc {

// Periodic Fourier multipliers. All of them send the mean (k = 0) to zero except
// heat_multiply, whose zero-mode multiplier is 1. Odd multipliers (derivative,
// Hilbert, Riesz flux) also drop the Nyquist mode, which has no real odd part.

/// Lambda^alpha: multiplier |xi|^alpha, alpha in (0, 2]. alpha = 2 gives -d^2/dx^2.
Field fractional_laplacian(const Field& f, double alpha);

/// Hilbert transform, multiplier i sgn(xi).
Field hilbert(const Field& f);

/// Lambda^(alpha-1) H: multiplier i sgn(xi) |xi|^(alpha-1), alpha in (0, 2).
/// Satisfies fractional_laplacian(f) = -d/dx riesz_flux(f) on band-limited data.
Field riesz_flux(const Field& f, double alpha);

/// d/dx, multiplier i xi.
Field spectral_derivative(const Field& f);

/// Heat semigroup exp(tau d^2/dx^2): multiplier exp(-xi^2 tau), tau >= 0.
Field heat_multiply(const Field& f, double tau);

/// 2/3-rule truncation: zero every wavenumber above n/3.
Field dealias(const Field& f);

/// ||Lambda^(alpha/2) f||_2^2 = sum_k |xi_k|^alpha |f_k|^2 (Parseval, with the grid measure).
double fractional_energy(const Field& f, double alpha);

/// Default inner cutoff of the Levy quadrature: four grid spacings.
double default_inner_cut(const Grid& g);

/// Uncalibrated Levy-Khintchine quadrature: approximates -Lambda^alpha f / C(alpha)
/// with the periodized kernel sum_j |z + 2Lj|^(-1-alpha). The |z| < inner_cut
/// part uses the Taylor term (1/2) f'' int z^2 |z|^(-1-alpha) dz with centered
/// differences for f''; the rest is trapezoid over one period.
/// Throws DomainError if inner_cut < spacing or alpha outside (0, 2).
Field levy_integral(const Field& f, double alpha, double inner_cut);

/// Calibrated quadrature approximation of +Lambda^alpha f, i.e.
/// -calibrate_levy_constant(alpha, grid) * levy_integral(f, alpha, inner_cut).
Field levy_laplacian(const Field& f, double alpha, double inner_cut);
inline Field levy_laplacian(const Field& f, double alpha) {
    return levy_laplacian(f, alpha, default_inner_cut(f.grid));
}

/// Least-squares constant c with c * (-levy_integral(g)) ~ fractional_laplacian(g) for
/// g(x) = exp(-x^2). Cached per (alpha, grid); the cache is safe for concurrent use.
/// Throws DomainError if the grid is too coarse (L < 8 or n < 1024) and
/// CalibrationError if the relative residual exceeds 5%.
double calibrate_levy_constant(double alpha, const Grid& g);

}  // namespace disloc
