#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disloc/diagnostics.hpp"
#include "disloc/grid.hpp"
#include "disloc/profile.hpp"
#include "disloc/solver.hpp"

namespace disloc {

/// Version string baked in at configure time (git describe when available).
std::string version_string();

/// Parses flat `key = value` lines (`#` starts a comment). Keys: alpha, epsilon, n,
/// half_length, dt, t_end, ic, ic_params, snapshot_every, cfl_safety. `epsilon` and `dt`
/// accept `auto`. Unknown keys, duplicates and malformed lines throw ParseError; the
/// parsed config is then validated (ValidationError).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// CSV `x,v,u` with 17 significant digits, rows in ascending x. IoError on failure.
void write_snapshot(const SolverState& state, const Field& u, const std::filesystem::path& path);

/// Reads the x,v columns of a CSV written by write_snapshot (or any CSV whose header names
/// x and v). GridMismatchError names the first abscissa that misses the grid by more than
/// 1e-9 relative; ValidationError on non-finite values; IoError if unreadable.
Field read_field(const std::filesystem::path& path, const Grid& grid);

struct Manifest {
    RunConfig config;
    AlphaParams params;
    std::optional<double> levy_constant;  ///< absent when the grid is too coarse to calibrate
    std::string version;
    double wall_seconds = 0.0;
    std::vector<std::string> artifacts;  ///< file names relative to the run directory
    std::optional<PowerFit> l2_decay;    ///< fitted for reference; prefactor is not verified
    std::string note;
};

/// Writes manifest.json into the run directory. The artifact list is written as given.
void write_manifest(const Manifest& m, const std::filesystem::path& run_dir);

}  // namespace disloc
