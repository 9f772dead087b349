#include <doctest.h>

#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <random>
#include <vector>

#include "disloc/diagnostics.hpp"
#include "disloc/errors.hpp"
#include "disloc/operators.hpp"
#include "disloc/profile.hpp"
#include "disloc/spectral.hpp"

using namespace disloc;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// Random trigonometric polynomial with modes 1..kmax.
Field random_band_limited(const Grid& g, std::mt19937_64& rng, int kmax, double offset = 0.0) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> a(kmax), b(kmax);
    for (int k = 0; k < kmax; ++k) {
        a[k] = d(rng);
        b[k] = d(rng);
    }
    return Field::sample(g, [&](double x) {
        double s = offset;
        for (int k = 0; k < kmax; ++k) {
            const double w = g.frequency(k + 1) * x;
            s += a[k] * std::cos(w) + b[k] * std::sin(w);
        }
        return s;
    });
}

double sup(const Field& f) { return lp_norm(f, kInfNorm); }

}  // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(8, 1.0), DomainError);
    CHECK_THROWS_AS(Grid(24, 1.0), DomainError);
    CHECK_THROWS_AS(Grid(64, 0.0), DomainError);
    const Grid g(1024, 3.7);
    CHECK(g.spacing() * g.n() == 2 * g.half_length());
    CHECK(g.x(0) == -3.7);
    CHECK_THROWS(Field(g, std::vector<double>(10, 0.0)));
}

TEST_CASE("forward transform matches a direct DFT") {
    const Grid g(16, 1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    Field f(g);
    for (auto& v : f.values) v = u(rng);
    const Spectrum s = forward(f);
    REQUIRE(s.coeffs.size() == 9);
    for (std::size_t k = 0; k <= 8; ++k) {
        std::complex<double> ref = 0;
        for (std::size_t j = 0; j < 16; ++j) ref += f[j] * std::polar(1.0, -2 * pi * double(k * j) / 16.0);
        CHECK(std::abs(s.coeffs[k] - ref) <= 1e-13);
    }
    CHECK(max_abs_diff(inverse(s), f) <= 1e-15);
}

TEST_CASE("constants are annihilated") {
    const Grid g(256, 4.0);
    const Field c = Field::sample(g, [](double) { return 2.5; });
    CHECK(sup(fractional_laplacian(c, 0.7)) <= 1e-14);
    CHECK(sup(hilbert(c)) <= 1e-14);
    CHECK(sup(riesz_flux(c, 0.4)) <= 1e-14);
    CHECK(sup(spectral_derivative(c)) <= 1e-14);
    const Grid big(1024, 8.0);
    CHECK(sup(levy_laplacian(Field::sample(big, [](double) { return 2.5; }), 1.0)) <= 1e-12);
}

TEST_CASE("cosines are eigenfunctions of the fractional Laplacian") {
    const Grid g(512, 5.0);
    for (int k : {1, 3, 40}) {
        const double xi = pi * k / g.half_length();
        const Field f = Field::sample(g, [&](double x) { return std::cos(xi * x); });
        for (double alpha : {0.3, 1.0, 1.6, 2.0}) {
            const Field expect = Field::sample(g, [&](double x) { return std::pow(xi, alpha) * std::cos(xi * x); });
            CHECK(max_abs_diff(fractional_laplacian(f, alpha), expect) <= 1e-11 * std::pow(xi, alpha));
        }
    }
}

TEST_CASE("alpha = 2 is minus the second derivative") {
    const Grid g(256, pi);
    std::mt19937_64 rng(3);
    const Field f = random_band_limited(g, rng, 6);
    const Field d2 = spectral_derivative(spectral_derivative(f));
    CHECK(max_abs_diff(fractional_laplacian(f, 2.0), -1.0 * d2) <= 1e-11);
}

TEST_CASE("hilbert transform") {
    const Grid g(256, 2.0);
    const double xi = pi * 3 / 2.0;
    const Field c = Field::sample(g, [&](double x) { return std::cos(xi * x); });
    const Field s = Field::sample(g, [&](double x) { return std::sin(xi * x); });
    CHECK(max_abs_diff(hilbert(c), -1.0 * s) <= 1e-13);
    CHECK(max_abs_diff(hilbert(s), c) <= 1e-13);
    std::mt19937_64 rng(11);
    const Field f = random_band_limited(g, rng, 10, 0.8);
    Field centred = f;
    for (auto& v : centred.values) v -= f.mean();
    CHECK(max_abs_diff(hilbert(hilbert(f)), -1.0 * centred) <= 1e-12);
}

TEST_CASE("riesz flux multiplier and factorization of the fractional Laplacian") {
    const Grid g(512, 6.0);
    const double xi = pi * 5 / 6.0;
    const Field c = Field::sample(g, [&](double x) { return std::cos(xi * x); });
    for (double alpha : {0.4, 1.0, 1.7}) {
        // i sgn(xi) |xi|^(alpha-1) sends cos to -|xi|^(alpha-1) sin
        const Field expect = Field::sample(g, [&](double x) { return -std::pow(xi, alpha - 1) * std::sin(xi * x); });
        CHECK(max_abs_diff(riesz_flux(c, alpha), expect) <= 1e-12);
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Field f = random_band_limited(g, rng, 30, 1.0);
        for (double alpha : {0.3, 1.0, 1.5}) {
            const Field lhs = fractional_laplacian(f, alpha) + spectral_derivative(riesz_flux(f, alpha));
            CHECK(sup(lhs) <= 1e-10 * sup(f));
        }
    }
}

TEST_CASE("operators reject alpha outside their ranges") {
    const Grid g(64, 1.0);
    const Field f(g);
    CHECK_THROWS_AS(fractional_laplacian(f, 0.0), DomainError);
    CHECK_THROWS_AS(fractional_laplacian(f, 2.1), DomainError);
    CHECK_THROWS_AS(riesz_flux(f, 2.0), DomainError);
    CHECK_THROWS_AS(riesz_flux(f, -1.0), DomainError);
    CHECK_THROWS_AS(heat_multiply(f, -1e-3), DomainError);
}

TEST_CASE("heat multiplier") {
    const Grid g(256, 3.0);
    std::mt19937_64 rng(9);
    const Field f = random_band_limited(g, rng, 20, 0.3);
    CHECK(heat_multiply(f, 0.0).values == f.values);
    const double xi = pi / 3.0;
    const Field c = Field::sample(g, [&](double x) { return std::cos(xi * x); });
    const Field expect = Field::sample(g, [&](double x) { return std::exp(-xi * xi) * std::cos(xi * x); });
    CHECK(max_abs_diff(heat_multiply(c, 1.0), expect) <= 1e-14);
    for (double tau : {1e-4, 0.1, 5.0}) CHECK(heat_multiply(f, tau).mean() == Approx(f.mean()).epsilon(1e-13));
}

TEST_CASE("dealias keeps exactly the lower two thirds") {
    const Grid g(256, 1.0);
    const std::size_t cut = dealias_cutoff(g);
    const Field keep = Field::sample(g, [&](double x) { return std::cos(g.frequency(cut) * x); });
    const Field drop = Field::sample(g, [&](double x) { return std::sin(g.frequency(cut + 1) * x); });
    CHECK(max_abs_diff(dealias(keep), keep) <= 1e-13);
    CHECK(sup(dealias(drop)) <= 1e-13);
}

TEST_CASE("multiplier operators are linear") {
    const Grid g(512, 4.0);
    std::mt19937_64 rng(13);
    const Field f = random_band_limited(g, rng, 60);
    const Field h = random_band_limited(g, rng, 60, 2.0);
    const double a = 1.7, b = -0.4;
    const Field mix = a * f + b * h;
    auto check = [&](auto op) { CHECK(max_abs_diff(op(mix), a * op(f) + b * op(h)) <= 1e-12 * (1 + sup(op(mix)))); };
    check([](const Field& x) { return fractional_laplacian(x, 0.8); });
    check([](const Field& x) { return hilbert(x); });
    check([](const Field& x) { return riesz_flux(x, 1.3); });
    check([](const Field& x) { return heat_multiply(x, 0.01); });
    check([](const Field& x) { return spectral_derivative(x); });
}

TEST_CASE("parity is preserved") {
    const Grid g(256, 2.0);
    const double w = pi / g.half_length();
    const Field even = Field::sample(g, [&](double x) { return std::exp(std::cos(w * x)); });
    const Field odd = Field::sample(g, [&](double x) { return std::sin(w * x) * std::exp(std::cos(w * x)); });
    const Field le = fractional_laplacian(even, 0.6);
    const Field lo = fractional_laplacian(odd, 0.6);
    const std::size_t n = g.size();
    for (std::size_t j = 1; j < n; ++j) {
        CHECK(le[j] == Approx(le[n - j]).epsilon(1e-10).scale(1.0));
        CHECK(lo[j] == Approx(-lo[n - j]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("fractional energy obeys Parseval") {
    const Grid g(512, 3.0);
    std::mt19937_64 rng(17);
    for (double alpha : {0.5, 1.0, 1.5}) {
        const Field f = random_band_limited(g, rng, 40, 0.5);
        const Field half = fractional_laplacian(f, alpha / 2);
        double direct = 0.0;
        for (double v : half.values) direct += v * v * g.spacing();
        CHECK(fractional_energy(f, alpha) == Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("Kato and Stroock-Varopoulos on smooth band-limited fields") {
    const Grid g(512, pi);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = random_band_limited(g, rng, 5);
        const Field w = random_band_limited(g, rng, 5, 8.0);  // positive
        for (double alpha : {0.5, 1.0, 1.5}) {
            CHECK(kato_pairing(f, alpha) >= -1e-8 * sup(f));
            for (double p : {2.0, 3.0}) {
                const StroockVaropoulos sv = stroock_varopoulos(w, alpha, p);
                CHECK(sv.lhs >= sv.rhs - 1e-6);
            }
        }
    }
}

TEST_CASE("periodic discrepancy shrinks with the domain") {
    // the interior error of the Getoor identity at alpha = 1 comes from periodic images
    const AlphaParams p = compute_constants(1.0);
    auto interior_error = [&](double L) {
        const Grid g(static_cast<int>(512 * L), L);
        const Field v = Field::sample(g, [&](double x) { return getoor_v(x, p); });
        const Field lap = fractional_laplacian(v, 1.0);
        double e = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (std::abs(g.x(j)) <= 0.8) e = std::max(e, std::abs(lap[j] - 1.0));
        return e;
    };
    CHECK(interior_error(16.0) <= 0.5 * interior_error(8.0));
}

TEST_CASE("Levy quadrature agrees with the spectral operator") {
    const Grid g(4096, 16.0);
    const Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
    const Field q = levy_laplacian(f, 1.0);
    const Field s = fractional_laplacian(f, 1.0);
    double e = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (std::abs(g.x(j)) <= 4.0) e = std::max(e, std::abs(q[j] - s[j]));
    CHECK(e <= 1e-3);

    const AlphaParams p = compute_constants(1.0);
    const Grid gg(4096, 8.0);
    const Field v = Field::sample(gg, [&](double x) { return getoor_v(x, p); });
    const Field lv = levy_laplacian(v, 1.0);
    for (std::size_t j = 0; j < gg.size(); ++j)
        if (std::abs(gg.x(j)) <= 0.8) CHECK(std::abs(lv[j] - 1.0) <= 2e-2);
}

TEST_CASE("Levy quadrature on cosines") {
    const Grid g(2048, 8.0);
    for (int k = 1; k <= 8; ++k) {
        const double xi = g.frequency(k);
        const Field c = Field::sample(g, [&](double x) { return std::cos(xi * x); });
        const Field q = levy_laplacian(c, 1.0);
        CHECK(max_abs_diff(q, std::pow(xi, 1.0) * c) <= 1e-2 * xi);
    }
}

TEST_CASE("Levy calibration") {
    for (double alpha : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75}) {
        CHECK(calibrate_levy_constant(alpha, Grid(1024, 8.0)) > 0.0);
    }
    const double c1 = calibrate_levy_constant(0.8, Grid(2048, 16.0));
    const double c2 = calibrate_levy_constant(0.8, Grid(4096, 16.0));
    CHECK(std::abs(c2 / c1 - 1.0) <= 1e-3);
    CHECK_THROWS_AS(calibrate_levy_constant(1.0, Grid(512, 8.0)), DomainError);
    CHECK_THROWS_AS(calibrate_levy_constant(1.0, Grid(1024, 4.0)), DomainError);
    const Grid g(1024, 8.0);
    CHECK_THROWS_AS(levy_integral(Field(g), 1.0, 0.5 * g.spacing()), DomainError);
    CHECK_THROWS_AS(levy_integral(Field(g), 2.0, g.spacing()), DomainError);
}

TEST_CASE("Levy calibration cache is safe under concurrent lookup") {
    const Grid g(1024, 12.0);
    std::vector<std::future<double>> jobs;
    for (int i = 0; i < 6; ++i) jobs.push_back(std::async(std::launch::async, [&] { return calibrate_levy_constant(1.1, g); }));
    const double first = jobs.front().get();
    for (std::size_t i = 1; i < jobs.size(); ++i) CHECK(jobs[i].get() == first);
}
