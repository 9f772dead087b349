#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "disloc/diagnostics.hpp"
#include "disloc/grid.hpp"
#include "disloc/profile.hpp"

namespace disloc {

// Initial conditions. Every shape must fit inside [-L/2, L/2].

/// Self-similar density at time t0 carrying `mass`; the run clock starts at t0.
struct SelfSimilarIC {
    double t0 = 1.0;
    double mass = 1.0;
    friend bool operator==(const SelfSimilarIC&, const SelfSimilarIC&) = default;
};
/// Box of given width and height centred at 0, mollified over two grid cells.
struct BoxIC {
    double width = 1.0;
    double height = 1.0;
    friend bool operator==(const BoxIC&, const BoxIC&) = default;
};
/// Centred Gaussian of standard deviation sigma, normalized to `mass`.
struct GaussianIC {
    double sigma = 1.0;
    double mass = 1.0;
    friend bool operator==(const GaussianIC&, const GaussianIC&) = default;
};
/// u rises 0 -> 1 around -separation/2 and returns to 0 around +separation/2
/// (two unit profiles at t = 1); v has zero total mass.
struct TwoFrontIC {
    double separation = 4.0;
    friend bool operator==(const TwoFrontIC&, const TwoFrontIC&) = default;
};
/// CSV file with x,v columns sampling the run grid.
struct CustomIC {
    std::string path;
    friend bool operator==(const CustomIC&, const CustomIC&) = default;
};

using InitialCondition = std::variant<SelfSimilarIC, BoxIC, GaussianIC, TwoFrontIC, CustomIC>;

/// Full description of one run of v_t = eps v_xx + (|v| Lambda^(alpha-1) H v)_x.
struct RunConfig {
    double alpha = 1.0;
    std::optional<double> epsilon = 0.0;  ///< nullopt: "auto", 0.1 * spacing^alpha
    Grid grid{1024, 16.0};
    std::optional<double> dt;  ///< nullopt: "auto" (CFL-limited)
    double t_end = 1.0;
    InitialCondition initial_condition = BoxIC{};
    int snapshot_every = 100;
    double cfl_safety = 0.4;

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;

    double resolved_epsilon() const;
    /// t0 for self-similar data, 0 otherwise.
    double start_time() const;
    /// alpha in (1,2): the product |u_x| Lambda^alpha u is not classically defined.
    bool experimental() const { return alpha > 1.0; }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct SolverState {
    double time = 0.0;
    Field v;
    long step_count = 0;
    double dt_current = 0.0;
};

/// Relative threshold used by the boundary-contamination guard.
inline constexpr double kGuardThreshold = 1e-3;

Field initial_field(const RunConfig& config, const AlphaParams& params);

/// d/dx dealias(|v| * riesz_flux(v)); zero mean.
Field rhs_flux(const Field& v, double alpha);

/// cfl_safety * spacing / max(||riesz_flux(v)||_inf, 1e-12), capped by t_end - time.
double auto_dt(const Field& v, const RunConfig& config, double time);

/// One integrating-factor Heun step of size state.dt_current: the eps-diffusion is applied
/// exactly by heat_multiply, the flux term explicitly. Throws InstabilityError if ||v||_inf
/// grows by more than 10% or becomes non-finite.
SolverState step(const SolverState& state, const RunConfig& config);

struct EvolveOptions {
    bool keep_snapshots = true;
    /// Extra times hit exactly (dt is clipped) and recorded; must lie in (start, t_end].
    std::vector<double> stop_times;
    /// Called at every record (start, every snapshot_every steps, stop times, end).
    std::function<void(const SolverState&)> observer;
    double support_threshold = kSupportThreshold;
};

struct EvolveResult {
    SolverState final_state;
    DiagnosticsSeries series;
    std::vector<SolverState> snapshots;
};

/// Integrates to t_end. Deterministic for a given config. Propagates InstabilityError and
/// throws BoundaryContaminationError when the support exceeds 80% of the domain.
EvolveResult evolve(const RunConfig& config, const EvolveOptions& options = {});

/// Trapezoid antiderivative anchored at u(-L) = left_value.
struct Displacement {
    Field u;
    double jump;  ///< u(L) - u(-L) = total mass; zero for periodic u
};
Displacement recover_u(const Field& v, double left_value);

}  // namespace disloc
