#include "disloc/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace disloc {
namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~PlanPair() {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

// FFTW planning is not thread-safe; execution through the new-array interface is.
// Plans are created once per size under the lock and never destroyed before exit.
const PlanPair& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<PlanPair>();
        std::vector<double> real(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> cplx(static_cast<std::size_t>(n / 2 + 1));
        auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        slot->r2c = fftw_plan_dft_r2c_1d(n, real.data(), c, flags);
        slot->c2r = fftw_plan_dft_c2r_1d(n, c, real.data(), flags | FFTW_DESTROY_INPUT);
    }
    return *slot;
}

}  // namespace

Spectrum forward(const Field& f) {
    const int n = f.grid.n();
    Spectrum s{f.grid, std::vector<std::complex<double>>(static_cast<std::size_t>(n / 2 + 1))};
    std::vector<double> in = f.values;  // fftw wants a mutable pointer
    fftw_execute_dft_r2c(plans_for(n).r2c, in.data(), reinterpret_cast<fftw_complex*>(s.coeffs.data()));
    return s;
}

Field inverse(const Spectrum& s) {
    const int n = s.grid.n();
    auto work = s.coeffs;  // c2r destroys its input
    Field out(s.grid);
    fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(work.data()), out.values.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out.values) v *= scale;
    return out;
}

}  // namespace disloc
