#include "disloc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disloc/errors.hpp"
#include "disloc/operators.hpp"
#include "disloc/solver.hpp"

namespace disloc {
namespace {

constexpr double kRecordedNorms[] = {1.0, 2.0, 4.0, kInfNorm};

double running_increase(const std::vector<double>& y) {
    if (y.empty() || !(y.front() > 0.0)) return 0.0;
    double lowest = y.front();
    double worst = 0.0;
    for (double v : y) {
        lowest = std::min(lowest, v);
        worst = std::max(worst, v - lowest);
    }
    return worst / y.front();
}

}  // namespace

const std::vector<double>& DiagnosticsSeries::norm(double p) const {
    const auto it = lp_norms.find(p);
    if (it == lp_norms.end()) throw DomainError("series does not record the p=" + std::to_string(p) + " norm");
    return it->second;
}

void DiagnosticsSeries::record(double t, const Field& v, double support_threshold) {
    if (!times.empty() && !(t > times.back())) {
        throw ValidationError("diagnostic times must increase strictly");
    }
    if (!oracle_sup_error.empty()) throw ValidationError("series mixes records with and without an oracle");
    times.push_back(t);
    mass.push_back(total_mass(v));
    for (double p : kRecordedNorms) lp_norms[p].push_back(lp_norm(v, p));
    support_width.push_back(disloc::support_width(v, support_threshold));
}

void DiagnosticsSeries::record(double t, const Field& v, double oracle_error, double support_threshold) {
    if (oracle_sup_error.size() != times.size()) {
        throw ValidationError("series mixes records with and without an oracle");
    }
    oracle_sup_error.push_back(oracle_error);
    try {
        if (!times.empty() && !(t > times.back())) throw ValidationError("diagnostic times must increase strictly");
        times.push_back(t);
        mass.push_back(total_mass(v));
        for (double p : kRecordedNorms) lp_norms[p].push_back(lp_norm(v, p));
        support_width.push_back(disloc::support_width(v, support_threshold));
    } catch (...) {
        oracle_sup_error.pop_back();
        throw;
    }
}

double lp_norm(const Field& v, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1, got " + std::to_string(p));
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v.values) m = std::max(m, std::abs(x));
        return m;
    }
    double s = 0.0;
    if (p == 1.0) {
        for (double x : v.values) s += std::abs(x);
        return s * v.grid.spacing();
    }
    if (p == 2.0) {
        for (double x : v.values) s += x * x;
        return std::sqrt(s * v.grid.spacing());
    }
    for (double x : v.values) s += std::pow(std::abs(x), p);
    return std::pow(s * v.grid.spacing(), 1.0 / p);
}

double total_mass(const Field& v) {
    double s = 0.0;
    for (double x : v.values) s += x;
    return s * v.grid.spacing();
}

PowerFit fit_power_law(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi) {
    if (t.size() != y.size()) throw InsufficientDataError("fit: time and value arrays differ in length");
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(t[i] > 0.0) || !(y[i] > 0.0)) {
            throw InsufficientDataError("fit: non-positive sample at t=" + std::to_string(t[i]));
        }
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(y[i]));
    }
    if (lx.size() < 8) {
        throw InsufficientDataError("fit: " + std::to_string(lx.size()) + " samples in [" + std::to_string(t_lo) +
                                    ", " + std::to_string(t_hi) + "], need at least 8");
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw InsufficientDataError("fit: all samples share one time");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        ss_res += r * r;
    }
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return PowerFit{slope, std::exp(intercept), r2, lx.size()};
}

PowerFit fit_decay_exponent(const DiagnosticsSeries& s, double p, double t_lo, double t_hi) {
    return fit_power_law(s.times, s.norm(p), t_lo, t_hi);
}

double support_width(const Field& v, double threshold) {
    if (!(threshold > 0.0)) throw DomainError("support_width: threshold must be positive");
    const double level = threshold * lp_norm(v, kInfNorm);
    if (level == 0.0) return 0.0;
    std::size_t first = v.size();
    std::size_t last = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(v[j]) > level) {
            first = std::min(first, j);
            last = j;
        }
    }
    if (first == v.size()) return 0.0;
    return v.grid.x(last) - v.grid.x(first);
}

double self_similar_error(const Field& v, double t, const AlphaParams& p, double compact_margin) {
    if (!(t > 0.0)) throw DomainError("self_similar_error: t must be positive");
    const Displacement d = recover_u(v, 0.0);
    if (!(d.jump > 0.0)) throw DomainError("self_similar_error: total mass must be positive");
    const double scale = std::pow(d.jump * t, -1.0 / (p.alpha + 1.0));
    const double reach = compact_margin * v.grid.half_length();
    double err = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = v.grid.x(j);
        if (std::abs(x) > reach) continue;
        err = std::max(err, std::abs(d.u[j] / d.jump - phi(x * scale, p)));
    }
    return err;
}

double comparison_violation(std::span<const Field> run_a, std::span<const Field> run_b) {
    if (run_a.size() != run_b.size()) {
        throw MismatchError("comparison: runs hold " + std::to_string(run_a.size()) + " and " +
                            std::to_string(run_b.size()) + " snapshots");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < run_a.size(); ++i) {
        if (!(run_a[i].grid == run_b[i].grid)) throw MismatchError("comparison: snapshots on different grids");
        for (std::size_t j = 0; j < run_a[i].size(); ++j) worst = std::max(worst, run_a[i][j] - run_b[i][j]);
    }
    return worst;
}

double kato_pairing(const Field& f, double alpha) {
    const Field lap = fractional_laplacian(f, alpha);
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double sgn = f[j] > 0.0 ? 1.0 : (f[j] < 0.0 ? -1.0 : 0.0);
        s += lap[j] * sgn;
    }
    return s * f.grid.spacing();
}

StroockVaropoulos stroock_varopoulos(const Field& w, double alpha, double p) {
    if (!(p > 1.0)) throw DomainError("stroock_varopoulos: p must exceed 1");
    const Field lap = fractional_laplacian(w, alpha);
    double lhs = 0.0;
    Field power(w.grid);
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double a = std::abs(w[j]);
        lhs += lap[j] * std::pow(a, p - 2.0) * w[j];
        power[j] = std::pow(a, p / 2.0);
    }
    lhs *= w.grid.spacing();
    const double rhs = 4.0 * (p - 1.0) / (p * p) * fractional_energy(power, alpha);
    return {lhs, rhs};
}

ConservationReport conservation_report(const DiagnosticsSeries& s) {
    ConservationReport r{0.0, 0.0, 0.0};
    if (s.size() == 0) return r;
    const double m0 = s.mass.front();
    for (double m : s.mass) r.mass_drift = std::max(r.mass_drift, std::abs(m - m0) / (1.0 + std::abs(m0)));
    r.linf_increase = running_increase(s.norm(kInfNorm));
    r.l1_increase = running_increase(s.norm(1.0));
    return r;
}

}  // namespace disloc
