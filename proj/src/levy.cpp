#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "disloc/errors.hpp"
#include "disloc/operators.hpp"

namespace disloc {
namespace {

// sum_{j in Z} |z + 2L j|^(-s) for 0 < z < 2L, s = 1 + alpha.
double periodized_kernel(double z, double period, double s) {
    constexpr int terms = 256;
    double sum = std::pow(z, -s);
    for (int j = 1; j <= terms; ++j) {
        sum += std::pow(z + period * j, -s) + std::pow(period * j - z, -s);
    }
    // Tail by the midpoint-rule integral from terms + 1/2.
    const double a = period * (terms + 0.5);
    sum += (std::pow(a + z, 1.0 - s) + std::pow(a - z, 1.0 - s)) / (period * (s - 1.0));
    return sum;
}

struct LevyWeights {
    std::size_t first;            // smallest offset m with m h >= inner cut
    std::vector<double> weights;  // trapezoid weights for offsets first .. n - first
    double taylor;                // r^(2-alpha) / (2-alpha): coefficient of f''
};

LevyWeights build_weights(const Grid& g, double alpha, double inner_cut) {
    const double h = g.spacing();
    const std::size_t n = g.size();
    const auto first = static_cast<std::size_t>(std::llround(inner_cut / h));
    if (first < 1 || 2 * first >= n) {
        throw DomainError("levy quadrature: inner cut must satisfy spacing <= r < L");
    }
    const double r = static_cast<double>(first) * h;
    const double period = 2.0 * g.half_length();
    LevyWeights w{first, std::vector<double>(n - 2 * first + 1), std::pow(r, 2.0 - alpha) / (2.0 - alpha)};
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        const double z = static_cast<double>(first + i) * h;
        w.weights[i] = h * periodized_kernel(z, period, 1.0 + alpha);
    }
    w.weights.front() *= 0.5;
    w.weights.back() *= 0.5;
    return w;
}

}  // namespace

Field levy_integral(const Field& f, double alpha, double inner_cut) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("levy quadrature: alpha must lie in (0,2), got " + std::to_string(alpha));
    }
    const Grid& g = f.grid;
    if (!(inner_cut >= g.spacing())) {
        throw DomainError("levy quadrature: inner cut " + std::to_string(inner_cut) + " is below the grid spacing");
    }
    const LevyWeights w = build_weights(g, alpha, inner_cut);
    const std::size_t n = g.size();
    const double h2 = g.spacing() * g.spacing();
    double weight_sum = 0.0;
    for (double wi : w.weights) weight_sum += wi;

    Field out(g);
    const std::vector<double>& v = f.values;
    for (std::size_t i = 0; i < n; ++i) {
        const double second = (v[(i + 1) % n] - 2.0 * v[i] + v[(i + n - 1) % n]) / h2;
        double acc = 0.0;
        // offsets m = first .. n - first, index (i + m) mod n, split to avoid the modulo
        std::size_t m = w.first;
        std::size_t idx = i + m;
        for (; idx < n && m <= n - w.first; ++m, ++idx) acc += w.weights[m - w.first] * v[idx];
        idx -= n;
        for (; m <= n - w.first; ++m, ++idx) acc += w.weights[m - w.first] * v[idx];
        out[i] = w.taylor * second + acc - weight_sum * v[i];
    }
    return out;
}

double calibrate_levy_constant(double alpha, const Grid& g) {
    if (g.half_length() < 8.0 || g.n() < 1024) {
        throw DomainError("levy calibration needs L >= 8 and n >= 1024");
    }
    using Key = std::tuple<double, int, double>;
    static std::mutex mutex;
    static std::map<Key, double> cache;
    const Key key{alpha, g.n(), g.half_length()};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const Field probe = Field::sample(g, [](double x) { return std::exp(-x * x); });
    const Field target = fractional_laplacian(probe, alpha);
    const Field raw = levy_integral(probe, alpha, default_inner_cut(g));
    double qq = 0.0;
    double qt = 0.0;
    double tt = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double q = -raw[j];
        qq += q * q;
        qt += q * target[j];
        tt += target[j] * target[j];
    }
    const double c = qt / qq;
    double rr = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double d = -c * raw[j] - target[j];
        rr += d * d;
    }
    const double residual = std::sqrt(rr / tt);
    if (!(residual <= 0.05) || !(c > 0.0)) {
        throw CalibrationError("levy calibration residual " + std::to_string(residual) +
                               " exceeds 5%; grid under-resolved");
    }
    std::lock_guard lock(mutex);
    cache.emplace(key, c);
    return c;
}

Field levy_laplacian(const Field& f, double alpha, double inner_cut) {
    const double c = calibrate_levy_constant(alpha, f.grid);
    Field out = levy_integral(f, alpha, inner_cut);
    out *= -c;
    return out;
}

}  // namespace disloc
