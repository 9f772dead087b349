#pragma once

#include <complex>
#include <vector>

#include "disloc/grid.hpp"

namespace disloc {

/// Half-spectrum of a real field: coeffs[k] for k = 0..n/2, frequency xi_k = pi k / L.
/// Negative wavenumbers are implied by conjugate symmetry.
struct Spectrum {
    Grid grid;
    std::vector<std::complex<double>> coeffs;
};

/// Unnormalized forward DFT.
Spectrum forward(const Field& f);

/// Inverse DFT including the 1/n factor, so inverse(forward(f)) == f.
Field inverse(const Spectrum& s);

/// Highest wavenumber kept by the 2/3 rule.
inline std::size_t dealias_cutoff(const Grid& g) { return g.size() / 3; }

}  // namespace disloc
