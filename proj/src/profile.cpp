#include "disloc/profile.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "disloc/errors.hpp"

namespace disloc {
namespace {

void require_time(double t) {
    if (!(t > 0.0)) throw DomainError("time must be positive, got " + std::to_string(t));
}

void require_mass(double mass) {
    if (!(mass > 0.0)) throw DomainError("mass must be positive, got " + std::to_string(mass));
}

// Scale s with phi(y) = gamma/(alpha+1) * (u(s y) + M); s = gamma^(-1/(alpha+1)) = 1 / y_alpha.
double inner_scale(const AlphaParams& p) { return 1.0 / p.y_alpha; }

}  // namespace

AlphaParams compute_constants(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("alpha must lie in (0,2), got " + std::to_string(alpha));
    }
    const double pi = std::numbers::pi;
    const double g_half_plus = std::tgamma((1.0 + alpha) / 2.0);
    AlphaParams p{};
    p.alpha = alpha;
    p.k_const = std::sqrt(pi) / (std::exp2(alpha) * std::tgamma(1.0 + alpha / 2.0) * g_half_plus);
    p.m_const = pi / (std::exp2(alpha) * (alpha + 1.0) * g_half_plus * g_half_plus);
    p.gamma = (alpha + 1.0) / (2.0 * p.m_const);
    p.y_alpha = std::pow(p.gamma, 1.0 / (alpha + 1.0));
    return p;
}

double m_const_by_quadrature(double alpha) {
    const AlphaParams p = compute_constants(alpha);
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral =
        integrator.integrate([alpha](double y) { return std::pow((1.0 - y) * (1.0 + y), alpha / 2.0); }, 0.0, 1.0);
    return p.k_const * integral;
}

double getoor_v(double x, const AlphaParams& p) {
    const double ax = std::abs(x);
    if (ax >= 1.0) return 0.0;
    return p.k_const * std::pow((1.0 - ax) * (1.0 + ax), p.alpha / 2.0);
}

double getoor_u(double x, const AlphaParams& p) {
    if (x >= 1.0) return p.m_const;
    if (x <= -1.0) return -p.m_const;
    if (x == 0.0) return 0.0;
    // int_0^|x| (1-y^2)^(a/2) dy = B(x^2; 1/2, 1+a/2) / 2 with B the incomplete beta.
    const double b = 1.0 + p.alpha / 2.0;
    const double partial = 0.5 * boost::math::beta(0.5, b, x * x);
    return std::copysign(p.k_const * partial, x);
}

double phi(double y, const AlphaParams& p) {
    const double s = inner_scale(p);
    const double z = s * y;
    if (z <= -1.0) return 0.0;
    if (z >= 1.0) return 1.0;
    return p.gamma / (p.alpha + 1.0) * (getoor_u(z, p) + p.m_const);
}

double phi_prime(double y, const AlphaParams& p) {
    const double s = inner_scale(p);
    return p.gamma / (p.alpha + 1.0) * s * getoor_v(s * y, p);
}

double phi_scaled(double y, double mass, double offset, const AlphaParams& p) {
    require_mass(mass);
    return mass * phi(std::pow(mass, -1.0 / (p.alpha + 1.0)) * y, p) + offset;
}

double self_similar_u(double x, double t, const AlphaParams& p, double mass) {
    require_time(t);
    require_mass(mass);
    return mass * phi(x * std::pow(mass * t, -1.0 / (p.alpha + 1.0)), p);
}

double self_similar_v(double x, double t, const AlphaParams& p, double mass) {
    require_time(t);
    require_mass(mass);
    const double c = std::pow(mass * t, -1.0 / (p.alpha + 1.0));
    return mass * c * phi_prime(x * c, p);
}

double self_similar_support(double t, const AlphaParams& p, double mass) {
    require_time(t);
    require_mass(mass);
    return p.y_alpha * std::pow(mass * t, 1.0 / (p.alpha + 1.0));
}

}  // namespace disloc
