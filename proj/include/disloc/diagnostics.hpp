#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "disloc/grid.hpp"
#include "disloc/profile.hpp"

namespace disloc {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Default relative threshold of support_width.
inline constexpr double kSupportThreshold = 1e-8;

/// Time-indexed norms of a run. All arrays share the length of `times`, which is
/// strictly increasing. oracle_sup_error is empty unless an analytic oracle is known.
struct DiagnosticsSeries {
    std::vector<double> times;
    std::vector<double> mass;
    std::map<double, std::vector<double>> lp_norms;  // p in {1, 2, 4, inf}
    std::vector<double> support_width;
    std::vector<double> oracle_sup_error;

    std::size_t size() const noexcept { return times.size(); }
    const std::vector<double>& norm(double p) const;

    /// Appends one record; throws ValidationError if t does not increase.
    void record(double t, const Field& v, double support_threshold = kSupportThreshold);
    void record(double t, const Field& v, double oracle_error, double support_threshold);
};

/// (sum |v_j|^p h)^(1/p), or max |v_j| for p = inf. DomainError if p < 1.
double lp_norm(const Field& v, double p);

/// sum v_j h
double total_mass(const Field& v);

struct PowerFit {
    double slope;
    double prefactor;  ///< exp(intercept): y ~ prefactor * t^slope
    double r_squared;
    std::size_t samples;
};

/// Least-squares line through (log t, log y) for t in [t_lo, t_hi].
/// InsufficientDataError with fewer than 8 samples or a non-positive y.
PowerFit fit_power_law(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi);

/// Decay exponent of ||v||_p recorded in the series.
PowerFit fit_decay_exponent(const DiagnosticsSeries& s, double p, double t_lo, double t_hi);

/// Width of the smallest interval containing every sample with |v_j| > threshold * max|v|; 0 for v = 0.
double support_width(const Field& v, double threshold = kSupportThreshold);

/// sup over |x| <= compact_margin * L of |u(x)/m - phi(x / (m t)^(1/(alpha+1)))|, where u is the
/// displacement recovered from v with u(-L) = 0 and m its total mass. DomainError if t <= 0 or m <= 0.
double self_similar_error(const Field& v, double t, const AlphaParams& p, double compact_margin);

/// max over records and grid points of (uA - uB)^+. Both runs must hold the same number of
/// snapshots on one grid (MismatchError otherwise).
double comparison_violation(std::span<const Field> run_a, std::span<const Field> run_b);

/// sum_j (Lambda^alpha f)_j sgn(f_j) h; nonnegative in the continuum.
double kato_pairing(const Field& f, double alpha);

/// Both sides of the Stroock-Varopoulos inequality
///   sum (Lambda^alpha w) |w|^(p-2) w h >= 4(p-1)/p^2 * ||Lambda^(alpha/2) |w|^(p/2)||_2^2.
struct StroockVaropoulos {
    double lhs;
    double rhs;
};
StroockVaropoulos stroock_varopoulos(const Field& w, double alpha, double p);

/// Worst violations of the conservation/monotonicity laws along a series.
struct ConservationReport {
    double mass_drift;     ///< max |m(t) - m(0)| / (1 + |m(0)|)
    double linf_increase;  ///< max over t of ||v(t)||_inf - min_{s <= t} ||v(s)||_inf, relative to ||v(0)||_inf
    double l1_increase;    ///< same for ||v||_1
};
ConservationReport conservation_report(const DiagnosticsSeries& s);

}  // namespace disloc
