#include "disloc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disloc/errors.hpp"
#include "disloc/operators.hpp"
#include "disloc/run_io.hpp"

namespace disloc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

void require_fits(double half_extent, const Grid& g, const std::string& shape) {
    if (half_extent > 0.5 * g.half_length()) {
        throw ValidationError(shape + " initial condition extends to |x| = " + std::to_string(half_extent) +
                              ", beyond L/2 = " + std::to_string(0.5 * g.half_length()) +
                              "; its periodic images would interact");
    }
}

double sup_norm(const Field& v) { return lp_norm(v, kInfNorm); }

}  // namespace

void RunConfig::validate() const {
    require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0,2), got " + std::to_string(alpha));
    if (epsilon) {
        require(std::isfinite(*epsilon) && *epsilon >= 0.0, "epsilon must be >= 0");
    }
    require(!(alpha > 1.0 && resolved_epsilon() <= 0.0),
            "alpha > 1 requires epsilon > 0: the product |u_x| Lambda^alpha u is not defined for alpha in (1,2) "
            "without viscous regularization");
    if (dt) require(std::isfinite(*dt) && *dt > 0.0, "dt must be positive or auto");
    require(snapshot_every >= 1, "snapshot_every must be >= 1");
    require(cfl_safety > 0.0 && cfl_safety <= 1.0, "cfl_safety must lie in (0,1]");
    require(std::isfinite(t_end) && t_end > 0.0, "t_end must be positive");
    std::visit(overloaded{
                   [](const SelfSimilarIC& ic) {
                       require(ic.t0 > 0.0, "self_similar t0 must be positive");
                       require(ic.mass > 0.0, "self_similar mass must be positive");
                   },
                   [](const BoxIC& ic) {
                       require(ic.width > 0.0, "box width must be positive");
                       require(ic.height > 0.0, "box height must be positive");
                   },
                   [](const GaussianIC& ic) {
                       require(ic.sigma > 0.0, "gaussian sigma must be positive");
                       require(ic.mass > 0.0, "gaussian mass must be positive");
                   },
                   [](const TwoFrontIC& ic) { require(ic.separation > 0.0, "two_front separation must be positive"); },
                   [](const CustomIC& ic) { require(!ic.path.empty(), "custom initial condition needs a file path"); },
               },
               initial_condition);
    require(t_end > start_time(), "t_end must exceed the start time " + std::to_string(start_time()));
}

double RunConfig::resolved_epsilon() const {
    if (epsilon) return *epsilon;
    return 0.1 * std::pow(grid.spacing(), alpha);
}

double RunConfig::start_time() const {
    if (const auto* ss = std::get_if<SelfSimilarIC>(&initial_condition)) return ss->t0;
    return 0.0;
}

Field initial_field(const RunConfig& config, const AlphaParams& params) {
    const Grid& g = config.grid;
    const double h = g.spacing();
    return std::visit(
        overloaded{
            [&](const SelfSimilarIC& ic) {
                require_fits(self_similar_support(ic.t0, params, ic.mass), g, "self_similar");
                return Field::sample(g, [&](double x) { return self_similar_v(x, ic.t0, params, ic.mass); });
            },
            [&](const BoxIC& ic) {
                const double half = 0.5 * ic.width;
                require_fits(half + 4.0 * h, g, "box");
                // Exact cell coverage keeps the discrete mass at width * height.
                Field f = Field::sample(g, [&](double x) {
                    const double overlap = std::min(x + 0.5 * h, half) - std::max(x - 0.5 * h, -half);
                    return ic.height * std::clamp(overlap / h, 0.0, 1.0);
                });
                return heat_multiply(f, 4.0 * h * h);
            },
            [&](const GaussianIC& ic) {
                require_fits(6.0 * ic.sigma, g, "gaussian");
                Field f = Field::sample(g, [&](double x) { return std::exp(-0.5 * x * x / (ic.sigma * ic.sigma)); });
                f *= ic.mass / total_mass(f);
                return f;
            },
            [&](const TwoFrontIC& ic) {
                const double s = 0.5 * ic.separation;
                require_fits(s + params.y_alpha, g, "two_front");
                return Field::sample(g, [&](double x) { return phi_prime(x + s, params) - phi_prime(x - s, params); });
            },
            [&](const CustomIC& ic) { return read_field(ic.path, g); },
        },
        config.initial_condition);
}

Field rhs_flux(const Field& v, double alpha) {
    Field flux = riesz_flux(v, alpha);
    for (std::size_t j = 0; j < flux.size(); ++j) flux[j] *= std::abs(v[j]);
    return spectral_derivative(dealias(flux));
}

double auto_dt(const Field& v, const RunConfig& config, double time) {
    const double speed = std::max(sup_norm(riesz_flux(v, config.alpha)), 1e-12);
    const double dt = config.cfl_safety * v.grid.spacing() / speed;
    return std::min(dt, config.t_end - time);
}

SolverState step(const SolverState& state, const RunConfig& config) {
    const double dt = state.dt_current;
    const double tau = config.resolved_epsilon() * dt;
    const Field& v = state.v;

    const Field k1 = rhs_flux(v, config.alpha);
    Field predictor = v;
    for (std::size_t j = 0; j < v.size(); ++j) predictor[j] += dt * k1[j];
    predictor = heat_multiply(predictor, tau);
    const Field k2 = rhs_flux(predictor, config.alpha);

    Field next = v;
    for (std::size_t j = 0; j < v.size(); ++j) next[j] += 0.5 * dt * k1[j];
    next = heat_multiply(next, tau);
    for (std::size_t j = 0; j < v.size(); ++j) next[j] += 0.5 * dt * k2[j];

    const double t_next = state.time + dt;
    if (!next.all_finite()) throw InstabilityError(t_next, "non-finite density");
    const double before = sup_norm(v);
    const double after = sup_norm(next);
    if (after > 1.1 * before && after > 0.0) {
        throw InstabilityError(t_next, "sup norm grew from " + std::to_string(before) + " to " +
                                           std::to_string(after) + " in one step; reduce dt or cfl_safety");
    }
    return SolverState{t_next, std::move(next), state.step_count + 1, dt};
}

EvolveResult evolve(const RunConfig& config, const EvolveOptions& options) {
    config.validate();
    const AlphaParams params = compute_constants(config.alpha);
    const Grid& g = config.grid;
    const double start = config.start_time();
    const auto* self_similar = std::get_if<SelfSimilarIC>(&config.initial_condition);

    std::vector<double> stops;
    for (double t : options.stop_times) {
        if (t > start && t < config.t_end) stops.push_back(t);
    }
    stops.push_back(config.t_end);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    EvolveResult result{SolverState{start, initial_field(config, params), 0, 0.0}, {}, {}};
    SolverState& state = result.final_state;

    auto record = [&] {
        if (self_similar) {
            double err = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) {
                err = std::max(err, std::abs(state.v[j] - self_similar_v(g.x(j), state.time, params, self_similar->mass)));
            }
            result.series.record(state.time, state.v, err, options.support_threshold);
        } else {
            result.series.record(state.time, state.v, options.support_threshold);
        }
        if (options.keep_snapshots) result.snapshots.push_back(state);
        if (options.observer) options.observer(state);
    };
    record();

    const double domain = 2.0 * g.half_length();
    std::size_t next_stop = 0;
    while (next_stop < stops.size()) {
        const double target = stops[next_stop];
        double dt = config.dt ? *config.dt : auto_dt(state.v, config, state.time);
        const double remaining = target - state.time;
        bool landing = false;
        if (dt >= remaining - 1e-12 * std::max(1.0, std::abs(target))) {
            dt = remaining;
            landing = true;
        }
        state.dt_current = dt;
        state = step(state, config);
        if (landing) {
            state.time = target;
            ++next_stop;
        }

        const double width = support_width(state.v, kGuardThreshold);
        if (width > 0.8 * domain) {
            throw BoundaryContaminationError(state.time, "support width " + std::to_string(width) +
                                                             " exceeds 80% of the periodic domain");
        }
        if (landing || state.step_count % config.snapshot_every == 0) record();
    }
    return result;
}

Displacement recover_u(const Field& v, double left_value) {
    const double h = v.grid.spacing();
    Field u(v.grid);
    u[0] = left_value;
    for (std::size_t j = 1; j < v.size(); ++j) u[j] = u[j - 1] + 0.5 * h * (v[j - 1] + v[j]);
    return Displacement{std::move(u), total_mass(v)};
}

}  // namespace disloc
