#include "disloc/run_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "disloc/errors.hpp"

#ifndef DISLOC_VERSION
#define DISLOC_VERSION "0.1.0"
#endif

namespace disloc {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

double to_double(std::string_view s, int line, std::string_view key) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(s) + "'");
    }
    return v;
}

int to_int(std::string_view s, int line, std::string_view key) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(s) + "'");
    }
    return v;
}

struct Entry {
    std::string value;
    int line;
};

const char* const kKeys[] = {"alpha",  "epsilon",   "n",         "half_length",    "dt",
                             "t_end", "ic",        "ic_params", "snapshot_every", "cfl_safety"};

bool known_key(std::string_view key) {
    for (const char* k : kKeys) {
        if (key == k) return true;
    }
    return false;
}

std::vector<double> numbers(const Entry& e, std::size_t expected, std::string_view ic) {
    const auto parts = split(e.value, ',');
    if (parts.size() != expected) {
        throw ParseError(e.line, "ic = " + std::string(ic) + " takes " + std::to_string(expected) +
                                     " ic_params, got " + std::to_string(parts.size()));
    }
    std::vector<double> out;
    for (auto p : parts) out.push_back(to_double(p, e.line, "ic_params"));
    return out;
}

InitialCondition make_ic(const Entry& ic, const Entry* params) {
    const std::string& tag = ic.value;
    if (tag == "self_similar") {
        if (!params) return SelfSimilarIC{};
        const auto p = numbers(*params, 2, tag);
        return SelfSimilarIC{p[0], p[1]};
    }
    if (tag == "box") {
        if (!params) return BoxIC{};
        const auto p = numbers(*params, 2, tag);
        return BoxIC{p[0], p[1]};
    }
    if (tag == "gaussian") {
        if (!params) return GaussianIC{};
        const auto p = numbers(*params, 2, tag);
        return GaussianIC{p[0], p[1]};
    }
    if (tag == "two_front") {
        if (!params) return TwoFrontIC{};
        const auto p = numbers(*params, 1, tag);
        return TwoFrontIC{p[0]};
    }
    if (tag == "custom") {
        if (!params || params->value.empty()) throw ParseError(ic.line, "ic = custom needs ic_params = <path>");
        return CustomIC{params->value};
    }
    throw ParseError(ic.line, "unknown ic '" + tag + "' (self_similar, box, gaussian, two_front, custom)");
}

std::string render_ic_params(const InitialCondition& ic) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SelfSimilarIC>) return format_double(v.t0) + "," + format_double(v.mass);
            if constexpr (std::is_same_v<T, BoxIC>) return format_double(v.width) + "," + format_double(v.height);
            if constexpr (std::is_same_v<T, GaussianIC>) return format_double(v.sigma) + "," + format_double(v.mass);
            if constexpr (std::is_same_v<T, TwoFrontIC>) return format_double(v.separation);
            if constexpr (std::is_same_v<T, CustomIC>) return v.path;
        },
        ic);
}

const char* ic_tag(const InitialCondition& ic) {
    static const char* const tags[] = {"self_similar", "box", "gaussian", "two_front", "custom"};
    return tags[ic.index()];
}

}  // namespace

std::string version_string() { return DISLOC_VERSION; }

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!known_key(key)) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        if (value.empty()) throw ParseError(line_no, "empty value for '" + std::string(key) + "'");
        if (!entries.emplace(std::string(key), Entry{std::string(value), line_no}).second) {
            throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
        }
    }
    auto find = [&](std::string_view key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto number = [&](std::string_view key) { const Entry* e = find(key); return to_double(e->value, e->line, key); };

    RunConfig c;
    // Range checks that do not depend on other keys come first so that a lone bad value
    // is reported as such rather than as a missing key.
    if (find("alpha")) {
        c.alpha = number("alpha");
        if (!(c.alpha > 0.0 && c.alpha < 2.0)) throw ValidationError("alpha must lie in (0,2)");
    }
    if (const Entry* e = find("epsilon")) {
        if (e->value == "auto") c.epsilon.reset();
        else c.epsilon = number("epsilon");
    }
    if (find("alpha") && c.alpha > 1.0 && c.epsilon && *c.epsilon <= 0.0) {
        throw ValidationError("alpha > 1 requires epsilon > 0 (the product |u_x| Lambda^alpha u is undefined "
                              "for alpha in (1,2) without regularization)");
    }
    for (const char* required : {"alpha", "n", "half_length", "t_end", "ic"}) {
        if (!find(required)) throw ValidationError(std::string("missing required key '") + required + "'");
    }

    const Entry* n = find("n");
    try {
        c.grid = Grid(to_int(n->value, n->line, "n"), number("half_length"));
    } catch (const DomainError& err) {
        throw ValidationError(err.what());
    }
    if (const Entry* e = find("dt")) {
        if (e->value == "auto") c.dt.reset();
        else c.dt = number("dt");
    }
    c.t_end = number("t_end");
    c.initial_condition = make_ic(*find("ic"), find("ic_params"));
    if (const Entry* e = find("snapshot_every")) c.snapshot_every = to_int(e->value, e->line, "snapshot_every");
    if (find("cfl_safety")) c.cfl_safety = number("cfl_safety");
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const RunConfig& c) {
    std::ostringstream out;
    out << "alpha = " << format_double(c.alpha) << '\n';
    out << "epsilon = " << (c.epsilon ? format_double(*c.epsilon) : std::string("auto")) << '\n';
    out << "n = " << c.grid.n() << '\n';
    out << "half_length = " << format_double(c.grid.half_length()) << '\n';
    out << "dt = " << (c.dt ? format_double(*c.dt) : std::string("auto")) << '\n';
    out << "t_end = " << format_double(c.t_end) << '\n';
    out << "ic = " << ic_tag(c.initial_condition) << '\n';
    out << "ic_params = " << render_ic_params(c.initial_condition) << '\n';
    out << "snapshot_every = " << c.snapshot_every << '\n';
    out << "cfl_safety = " << format_double(c.cfl_safety) << '\n';
    return out.str();
}

void write_snapshot(const SolverState& state, const Field& u, const std::filesystem::path& path) {
    const Field& v = state.v;
    if (!(u.grid == v.grid)) throw MismatchError("snapshot: u and v live on different grids");
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot write snapshot " + path.string());
    std::fputs("x,v,u\n", f);
    for (std::size_t j = 0; j < v.size(); ++j) {
        std::fprintf(f, "%.17g,%.17g,%.17g\n", v.grid.x(j), v[j], u[j]);
    }
    if (std::fclose(f) != 0) throw IoError("error closing snapshot " + path.string());
}

Field read_field(const std::filesystem::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read field " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
    const auto header = split(line, ',');
    std::size_t ix = header.size();
    std::size_t iv = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "x") ix = i;
        if (header[i] == "v") iv = i;
    }
    if (ix == header.size() || iv == header.size()) {
        throw ValidationError(path.string() + ": header must name columns x and v");
    }

    const double tol = 1e-9 * grid.half_length();
    std::vector<double> values;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() <= std::max(ix, iv)) throw ValidationError(path.string() + ": short row " + std::to_string(row));
        auto parse = [&](std::string_view s) {
            const std::string tmp(s);
            char* end = nullptr;
            const double d = std::strtod(tmp.c_str(), &end);
            if (end == tmp.c_str() || *end != '\0') {
                throw ValidationError(path.string() + ": bad number '" + tmp + "' on row " + std::to_string(row));
            }
            return d;
        };
        const double x = parse(cols[ix]);
        const double v = parse(cols[iv]);
        const std::size_t j = values.size();
        if (j >= grid.size()) {
            throw GridMismatchError(path.string() + ": more rows than the grid's " + std::to_string(grid.n()) +
                                    " points; first extra abscissa x=" + format_double(x));
        }
        if (!(std::abs(x - grid.x(j)) <= tol)) {
            throw GridMismatchError(path.string() + ": abscissa x=" + format_double(x) + " on row " +
                                    std::to_string(row) + " does not match grid point " + format_double(grid.x(j)));
        }
        if (!std::isfinite(v)) {
            throw ValidationError(path.string() + ": non-finite value on row " + std::to_string(row));
        }
        values.push_back(v);
    }
    if (values.size() != grid.size()) {
        throw GridMismatchError(path.string() + ": " + std::to_string(values.size()) + " rows for a grid of " +
                                std::to_string(grid.n()) + " points; first missing abscissa x=" +
                                format_double(grid.x(values.size())));
    }
    return Field(grid, std::move(values));
}

void write_manifest(const Manifest& m, const std::filesystem::path& run_dir) {
    using nlohmann::json;
    json config;
    const std::string rendered = render_config(m.config);
    for (auto line : split(rendered, '\n')) {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) continue;
        config[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
    }
    json j;
    j["version"] = m.version;
    j["config"] = config;
    j["resolved_epsilon"] = m.config.resolved_epsilon();
    j["experimental"] = m.config.experimental();
    j["constants"] = {{"alpha", m.params.alpha},
                      {"K", m.params.k_const},
                      {"M", m.params.m_const},
                      {"gamma", m.params.gamma},
                      {"y_alpha", m.params.y_alpha}};
    j["levy_constant"] = m.levy_constant ? json(*m.levy_constant) : json(nullptr);
    if (m.l2_decay) {
        j["l2_decay_fit"] = {{"slope", m.l2_decay->slope},
                             {"prefactor", m.l2_decay->prefactor},
                             {"r_squared", m.l2_decay->r_squared},
                             {"samples", m.l2_decay->samples}};
    } else {
        j["l2_decay_fit"] = nullptr;
    }
    j["wall_seconds"] = m.wall_seconds;
    j["artifacts"] = m.artifacts;
    j["note"] = m.note;

    const auto path = run_dir / "manifest.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("error writing manifest " + path.string());
}

}  // namespace disloc
