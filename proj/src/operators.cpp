#include "disloc/operators.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "disloc/errors.hpp"
#include "disloc/spectral.hpp"

namespace disloc {
namespace {

using cplx = std::complex<double>;

template <class Multiplier>
Field apply_multiplier(const Field& f, Multiplier&& m) {
    Spectrum s = forward(f);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) s.coeffs[k] *= m(k, f.grid.frequency(k));
    return inverse(s);
}

bool is_nyquist(const Grid& g, std::size_t k) { return k == g.size() / 2; }

}  // namespace

Field fractional_laplacian(const Field& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw DomainError("fractional_laplacian: alpha must lie in (0,2], got " + std::to_string(alpha));
    }
    return apply_multiplier(f, [alpha](std::size_t k, double xi) -> cplx {
        return k == 0 ? 0.0 : std::pow(xi, alpha);
    });
}

Field hilbert(const Field& f) {
    const Grid& g = f.grid;
    return apply_multiplier(f, [&g](std::size_t k, double) -> cplx {
        if (k == 0 || is_nyquist(g, k)) return 0.0;
        return {0.0, 1.0};
    });
}

Field riesz_flux(const Field& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("riesz_flux: alpha must lie in (0,2), got " + std::to_string(alpha));
    }
    const Grid& g = f.grid;
    return apply_multiplier(f, [&g, alpha](std::size_t k, double xi) -> cplx {
        if (k == 0 || is_nyquist(g, k)) return 0.0;
        return {0.0, std::pow(xi, alpha - 1.0)};
    });
}

Field spectral_derivative(const Field& f) {
    const Grid& g = f.grid;
    return apply_multiplier(f, [&g](std::size_t k, double xi) -> cplx {
        if (is_nyquist(g, k)) return 0.0;
        return {0.0, xi};
    });
}

Field heat_multiply(const Field& f, double tau) {
    if (!(tau >= 0.0)) throw DomainError("heat_multiply: tau must be >= 0, got " + std::to_string(tau));
    if (tau == 0.0) return f;
    return apply_multiplier(f, [tau](std::size_t, double xi) -> cplx { return std::exp(-xi * xi * tau); });
}

Field dealias(const Field& f) {
    const std::size_t cut = dealias_cutoff(f.grid);
    return apply_multiplier(f, [cut](std::size_t k, double) -> cplx { return k <= cut ? 1.0 : 0.0; });
}

double fractional_energy(const Field& f, double alpha) {
    const Spectrum s = forward(f);
    const std::size_t half = f.size() / 2;
    double sum = 0.0;
    for (std::size_t k = 1; k < s.coeffs.size(); ++k) {
        const double weight = (k == half) ? 1.0 : 2.0;  // +-k pairs, Nyquist counted once
        sum += weight * std::pow(f.grid.frequency(k), alpha) * std::norm(s.coeffs[k]);
    }
    // Parseval for the unnormalized DFT: sum_j |g_j|^2 = (1/n) sum_k |G_k|^2.
    const double n = static_cast<double>(f.size());
    return sum * f.grid.spacing() / n;
}

double default_inner_cut(const Grid& g) { return 4.0 * g.spacing(); }

}  // namespace disloc
