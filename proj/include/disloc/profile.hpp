#pragma once

namespace disloc {

/// Exponent alpha and the constants of the self-similar profile built from the
/// Getoor function.
struct AlphaParams {
    double alpha;
    double k_const;  ///< K(alpha): Getoor normalization
    double m_const;  ///< M(alpha) = integral of the Getoor function over [0, 1]
    double y_alpha;  ///< half-width of the profile transition, gamma^(1/(alpha+1))
    double gamma;    ///< (alpha+1) / (2 M)
};

/// Closed-form Gamma-function constants. Throws DomainError unless 0 < alpha < 2.
AlphaParams compute_constants(double alpha);

/// M(alpha) by tanh-sinh quadrature of K (1-y^2)^(alpha/2) on [0, 1].
/// Independent of the closed form used by compute_constants.
double m_const_by_quadrature(double alpha);

/// K (1 - x^2)^(alpha/2) inside (-1, 1), zero on |x| >= 1.
double getoor_v(double x, const AlphaParams& p);

/// Antiderivative of getoor_v vanishing at 0: odd, saturating at +-M for |x| >= 1.
double getoor_u(double x, const AlphaParams& p);

/// Self-similar profile: nondecreasing, 0 below -y_alpha, 1 above y_alpha.
double phi(double y, const AlphaParams& p);
double phi_prime(double y, const AlphaParams& p);

/// mass * phi(mass^(-1/(alpha+1)) y) + offset. Throws DomainError if mass <= 0.
double phi_scaled(double y, double mass, double offset, const AlphaParams& p);

/// u(x, t) of the self-similar solution carrying the given mass (u goes 0 -> mass).
double self_similar_u(double x, double t, const AlphaParams& p, double mass = 1.0);

/// Density v = u_x of the same solution; compactly supported with total integral `mass`.
double self_similar_v(double x, double t, const AlphaParams& p, double mass = 1.0);

/// Half-width of supp v(., t) for the given mass.
double self_similar_support(double t, const AlphaParams& p, double mass = 1.0);

}  // namespace disloc
