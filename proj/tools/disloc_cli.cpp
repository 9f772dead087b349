// Command-line front end: profile, getoor, evolve, verify.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "disloc/errors.hpp"
#include "disloc/operators.hpp"
#include "disloc/profile.hpp"
#include "disloc/run_io.hpp"
#include "disloc/solver.hpp"
#include "disloc/verify.hpp"

namespace fs = std::filesystem;
using namespace disloc;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

void cmd_profile(double alpha, int samples, const fs::path& out_path) {
    if (samples < 2) throw ValidationError("--samples must be at least 2");
    const AlphaParams p = compute_constants(alpha);
    std::ofstream out = open_output(out_path);
    out << "y,phi,phi_prime\n";
    for (int i = 0; i < samples; ++i) {
        const double y = -2.0 * p.y_alpha + 4.0 * p.y_alpha * i / (samples - 1);
        out << format_double(y) << ',' << format_double(phi(y, p)) << ',' << format_double(phi_prime(y, p)) << '\n';
    }
    close_output(out, out_path);
}

void cmd_getoor(double alpha, int n, double half_length, const fs::path& out_path) {
    const AlphaParams p = compute_constants(alpha);
    Grid g = [&] {
        try {
            return Grid(n, half_length);
        } catch (const DomainError& e) {
            throw ValidationError(e.what());
        }
    }();
    const Field v = Field::sample(g, [&](double x) { return getoor_v(x, p); });
    const Field spectral = fractional_laplacian(v, alpha);
    const Field quadrature = levy_laplacian(v, alpha);
    std::ofstream out = open_output(out_path);
    out << "x,v,lap_spectral,lap_quadrature\n";
    for (std::size_t j = 0; j < g.size(); ++j) {
        out << format_double(g.x(j)) << ',' << format_double(v[j]) << ',' << format_double(spectral[j]) << ','
            << format_double(quadrature[j]) << '\n';
    }
    close_output(out, out_path);
}

bool is_artifact(const fs::path& p) {
    const std::string name = p.filename().string();
    if (name == "manifest.json") return true;
    return name.starts_with("snap_") && p.extension() == ".csv";
}

void prepare_run_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!is_artifact(entry.path())) {
            throw IoError("run directory " + dir.string() + " holds a foreign file: " + entry.path().filename().string());
        }
    }
    for (const auto& entry : fs::directory_iterator(dir)) fs::remove(entry.path());
}

void cmd_evolve(const fs::path& config_path, const fs::path& dir) {
    const RunConfig config = load_config(config_path);
    const AlphaParams params = compute_constants(config.alpha);
    prepare_run_dir(dir);
    const auto start = std::chrono::steady_clock::now();

    Manifest m{config, params, std::nullopt, version_string(), 0.0, {}, std::nullopt, ""};
    EvolveOptions opts;
    opts.keep_snapshots = false;
    opts.observer = [&](const SolverState& s) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%08ld.csv", s.step_count);
        write_snapshot(s, recover_u(s.v, 0.0).u, dir / name);
        m.artifacts.emplace_back(name);
    };
    const EvolveResult r = evolve(config, opts);
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    try {
        m.levy_constant = calibrate_levy_constant(config.alpha, config.grid);
    } catch (const DomainError&) {
    } catch (const CalibrationError&) {
    }
    try {
        m.l2_decay = fit_decay_exponent(r.series, 2.0, 1.0, 0.9 * config.t_end);
    } catch (const InsufficientDataError&) {
    }
    if (config.experimental()) m.note = "alpha > 1: the nonlinear product is not classically defined; results are experimental";
    m.artifacts.emplace_back("manifest.json");
    write_manifest(m, dir);
    std::cout << "t=" << format_double(r.final_state.time) << " steps=" << r.final_state.step_count
              << " snapshots=" << m.artifacts.size() - 1 << " dir=" << dir.string() << '\n';
}

int cmd_verify(const std::string& suite, std::optional<double> alpha, const fs::path& report) {
    if (alpha) compute_constants(*alpha);
    const std::vector<int> ids = suite_criteria(suite);
    VerifySession session(VerifyOptions{alpha});
    const std::vector<CriterionResult> results = session.run_all(ids);
    bool all = true;
    for (const CriterionResult& r : results) {
        all = all && r.passed;
        std::printf("%-3d %-32s %-4s %8.2fs  %s\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.runtime_seconds, r.details.c_str());
    }
    std::ofstream out = open_output(report);
    out << render_report(results);
    close_output(out, report);
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal dislocation-density solver"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    double alpha = 1.0;
    int samples = 401;
    int n = 4096;
    double half_length = 8.0;
    std::string out_file;
    std::string config_path;
    std::string run_dir = "run";
    std::string suite = "all";
    std::optional<double> verify_alpha;
    std::string report = "verify_report.csv";

    auto* profile = app.add_subcommand("profile", "Sample the self-similar profile and its derivative");
    profile->add_option("--alpha", alpha, "Exponent in (0,2)")->required();
    profile->add_option("--samples", samples, "Number of samples over [-2 y_alpha, 2 y_alpha]");
    profile->add_option("--out", out_file, "Output CSV")->required();

    auto* getoor = app.add_subcommand("getoor", "Spectral and quadrature fractional Laplacian of the Getoor function");
    getoor->add_option("--alpha", alpha, "Exponent in (0,2)")->required();
    getoor->add_option("--n", n, "Grid points (power of two)");
    getoor->add_option("--half-length", half_length, "Half period L");
    getoor->add_option("--out", out_file, "Output CSV")->required();

    auto* evolve_cmd = app.add_subcommand("evolve", "Run the solver from a config file");
    evolve_cmd->add_option("--config", config_path, "key = value config file")->required();
    evolve_cmd->add_option("--out", run_dir, "Run directory");

    auto* verify = app.add_subcommand("verify", "Run the acceptance battery");
    verify->add_option("--suite", suite, "Suite to run")
        ->check(CLI::IsMember({"getoor", "profile", "decay", "selfsim", "comparison", "all"}));
    verify->add_option("--alpha", verify_alpha, "Restrict alpha sweeps to one value");
    verify->add_option("--report", report, "CSV report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*profile) cmd_profile(alpha, samples, out_file);
        if (*getoor) cmd_getoor(alpha, n, half_length, out_file);
        if (*evolve_cmd) cmd_evolve(config_path, run_dir);
        if (*verify) return cmd_verify(suite, verify_alpha, report);
        return 0;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
