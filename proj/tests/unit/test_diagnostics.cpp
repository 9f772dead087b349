#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "disloc/diagnostics.hpp"
#include "disloc/errors.hpp"
#include "disloc/profile.hpp"
#include "disloc/solver.hpp"

using namespace disloc;
using doctest::Approx;

namespace {

Field self_similar_field(const Grid& g, double t, const AlphaParams& p) {
    return Field::sample(g, [&](double x) { return self_similar_v(x, t, p); });
}

}  // namespace

TEST_CASE("lp norms") {
    const AlphaParams p = compute_constants(1.0);
    const Grid g(4096, 8.0);
    RunConfig c;
    c.grid = g;
    c.initial_condition = BoxIC{1.0, 1.0};
    const Field box = initial_field(c, p);
    CHECK(lp_norm(box, 1.0) == Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(box, kInfNorm) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(box, 0.5), DomainError);

    const double phi2 = std::sqrt(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double y) { return std::pow(phi_prime(y, p), 2); }, -p.y_alpha, p.y_alpha, 15, 1e-13));
    for (double t : {1.0, 4.0}) {
        CHECK(lp_norm(self_similar_field(g, t, p), 2.0) == Approx(phi2 * std::pow(t, -0.25)).epsilon(1e-3));
    }
}

TEST_CASE("decay fits on the exact self-similar solution") {
    const AlphaParams p = compute_constants(1.0);
    const Grid g(8192, 32.0);
    DiagnosticsSeries s;
    for (int i = 0; i <= 24; ++i) {
        const double t = std::pow(2.0, i / 4.0);
        s.record(t, self_similar_field(g, t, p));
    }
    CHECK(fit_decay_exponent(s, 2.0, 1.0, 64.0).slope == Approx(-0.25).epsilon(1e-3 / 0.25));
    CHECK(std::abs(fit_decay_exponent(s, 1.0, 1.0, 64.0).slope) <= 1e-3);
    CHECK(fit_decay_exponent(s, 2.0, 1.0, 64.0).r_squared > 0.999);
    CHECK_THROWS_AS(fit_decay_exponent(s, 2.0, 1.0, 2.0), InsufficientDataError);
    CHECK_THROWS_AS(s.norm(3.0), DomainError);
}

TEST_CASE("fit_power_law") {
    std::vector<double> t, y;
    for (int i = 1; i <= 10; ++i) {
        t.push_back(i);
        y.push_back(3.0 * std::pow(i, -0.7));
    }
    const PowerFit f = fit_power_law(t, y, 1.0, 10.0);
    CHECK(f.slope == Approx(-0.7).epsilon(1e-12));
    CHECK(f.prefactor == Approx(3.0).epsilon(1e-12));
    CHECK(f.samples == 10);
    y[4] = 0.0;
    CHECK_THROWS_AS(fit_power_law(t, y, 1.0, 10.0), InsufficientDataError);
}

TEST_CASE("series records") {
    const Grid g(64, 1.0);
    DiagnosticsSeries s;
    s.record(0.0, Field(g));
    CHECK_THROWS_AS(s.record(0.0, Field(g)), ValidationError);
    CHECK_THROWS_AS(s.record(1.0, Field(g), 0.1, kSupportThreshold), ValidationError);
    s.record(1.0, Field(g));
    CHECK(s.size() == 2);
    for (double p : {1.0, 2.0, 4.0, kInfNorm}) CHECK(s.norm(p).size() == 2);
    CHECK(s.mass.size() == 2);
    CHECK(s.support_width.size() == 2);
}

TEST_CASE("support width") {
    const AlphaParams p = compute_constants(1.0);
    const Grid g(8192, 16.0);
    const double h = g.spacing();
    CHECK(support_width(Field(g), 1e-8) == 0.0);
    const double w1 = support_width(self_similar_field(g, 1.0, p), 1e-10);
    CHECK(std::abs(w1 - 2 * p.y_alpha) <= 2 * h);
    for (double t : {2.0, 8.0, 30.0}) {
        const double wt = support_width(self_similar_field(g, t, p), 1e-10);
        CHECK(std::abs(wt / w1 - std::sqrt(t)) <= 2 * h * (1 + std::sqrt(t)) / w1);
    }
    CHECK_THROWS_AS(support_width(Field(g), 0.0), DomainError);
}

TEST_CASE("self_similar_error") {
    const AlphaParams p = compute_constants(1.0);
    const Grid g(4096, 16.0);
    for (double t : {1.0, 5.0}) CHECK(self_similar_error(self_similar_field(g, t, p), t, p, 0.5) <= 1e-3);

    RunConfig c;
    c.grid = g;
    c.initial_condition = BoxIC{1.0, 1.0};
    const Field box = initial_field(c, p);
    Field shifted = Field::sample(g, [&](double x) { return std::exp(-std::pow((x - 0.3) / 0.4, 2)); });
    Field mirrored(g);
    const std::size_t n = g.size();
    mirrored[0] = shifted[0];
    for (std::size_t j = 1; j < n; ++j) mirrored[j] = shifted[n - j];
    CHECK(self_similar_error(shifted, 2.0, p, 0.5) == Approx(self_similar_error(mirrored, 2.0, p, 0.5)).epsilon(1e-9));
    CHECK(self_similar_error(box, 1.0, p, 0.5) > 0.01);
    CHECK_THROWS_AS(self_similar_error(box, 0.0, p, 0.5), DomainError);
    CHECK_THROWS_AS(self_similar_error(Field(g), 1.0, p, 0.5), DomainError);
}

TEST_CASE("comparison_violation") {
    const Grid g(1024, 8.0);
    RunConfig c;
    c.grid = g;
    c.epsilon = 1e-2;
    c.t_end = 0.5;
    c.snapshot_every = 10;
    c.initial_condition = BoxIC{1.0, 1.0};
    const EvolveResult r = evolve(c);
    std::vector<Field> a, b;
    for (const auto& s : r.snapshots) {
        a.push_back(recover_u(s.v, 0.0).u);
        b.push_back(recover_u(s.v, 0.1).u);
    }
    CHECK(comparison_violation(a, a) == 0.0);
    CHECK(comparison_violation(a, b) <= 1e-8);
    CHECK(comparison_violation(b, a) == Approx(0.1));
    b.pop_back();
    CHECK_THROWS_AS(comparison_violation(a, b), MismatchError);
}

TEST_CASE("conservation report") {
    const Grid g(64, 1.0);
    DiagnosticsSeries s;
    for (int i = 0; i < 4; ++i) {
        const double amp[] = {1.0, 0.8, 0.9, 0.7};
        s.record(i, Field::sample(g, [&](double x) { return amp[i] * std::exp(-8 * x * x); }));
    }
    const ConservationReport r = conservation_report(s);
    CHECK(r.linf_increase == Approx(0.1).epsilon(1e-6));
    CHECK(r.l1_increase == Approx(0.1).epsilon(1e-6));
    CHECK(r.mass_drift > 0.0);
}
