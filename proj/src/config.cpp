#include "sdwave/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdwave {

std::vector<double> RunConfig::r_grid() const {
    if (R_points < 2 || R_min <= 0.0 || R_max <= R_min)
        throw std::runtime_error("invalid R grid parameters");
    std::vector<double> grid;
    const double lo = std::log(R_min), hi = std::log(R_max);
    for (int j = 0; j < R_points; ++j)
        grid.push_back(std::exp(lo + (hi - lo) * j / (R_points - 1)));
    return grid;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::runtime_error("config error at line " + std::to_string(line) +
                             ": " + what);
}

double to_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        fail(line, "not a number: '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range: '" + v + "'");
    }
}

int to_int(const std::string& v, int line) {
    const double d = to_double(v, line);
    const int i = static_cast<int>(std::lround(d));
    if (std::abs(d - i) > 0.0) fail(line, "expected an integer: '" + v + "'");
    return i;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "operator" && section != "nonlinearity" &&
                section != "dynamics" && section != "checks" &&
                section != "output")
                fail(lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (section.empty()) fail(lineno, "key '" + key + "' outside any section");

        const std::string qual = section + "." + key;
        if (qual == "operator.length") cfg.length = to_double(val, lineno);
        else if (qual == "operator.coefficient") cfg.coefficient = val;
        else if (qual == "operator.n_grid") cfg.n_grid = to_int(val, lineno);
        else if (qual == "operator.n_modes") cfg.n_modes = to_int(val, lineno);
        else if (qual == "nonlinearity.name") cfg.nonlinearity = val;
        else if (qual == "nonlinearity.amplitude") cfg.amplitude = to_double(val, lineno);
        else if (qual == "dynamics.k") cfg.k = to_int(val, lineno);
        else if (qual == "dynamics.c") cfg.c = to_double(val, lineno);
        else if (qual == "dynamics.alpha") cfg.alpha = to_double(val, lineno);
        else if (qual == "dynamics.dt") cfg.dt = to_double(val, lineno);
        else if (qual == "dynamics.T") cfg.T = to_double(val, lineno);
        else if (qual == "dynamics.snap_tol") cfg.snap_tol = to_double(val, lineno);
        else if (qual == "checks.seed")
            cfg.seed = static_cast<std::uint64_t>(to_double(val, lineno));
        else if (qual == "checks.n_samples") cfg.n_samples = to_int(val, lineno);
        else if (qual == "checks.n_sphere") cfg.n_sphere = to_int(val, lineno);
        else if (qual == "checks.n_boundary_samples")
            cfg.n_boundary_samples = to_int(val, lineno);
        else if (qual == "checks.n_initial") cfg.n_initial = to_int(val, lineno);
        else if (qual == "checks.R_min") cfg.R_min = to_double(val, lineno);
        else if (qual == "checks.R_max") cfg.R_max = to_double(val, lineno);
        else if (qual == "checks.R_points") cfg.R_points = to_int(val, lineno);
        else if (qual == "checks.census_T") cfg.census_T = to_double(val, lineno);
        else if (qual == "checks.probe_eps") cfg.probe_eps = to_double(val, lineno);
        else if (qual == "output.out_dir") cfg.out_dir = val;
        else if (qual == "output.format") cfg.format = val;
        else fail(lineno, "unknown key '" + key + "' in section [" + section + "]");
    }

    if (cfg.n_grid < 16) throw std::runtime_error("config error: n_grid too small");
    if (cfg.n_modes < 1) throw std::runtime_error("config error: n_modes must be >= 1");
    if (cfg.k < 1 || cfg.k > cfg.n_modes)
        throw std::runtime_error("config error: k must lie in [1, n_modes]");
    if (cfg.c <= 0.0) throw std::runtime_error("config error: c must be positive");
    if (cfg.dt <= 0.0) throw std::runtime_error("config error: dt must be positive");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::runtime_error("config error: format must be csv or json");
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace sdwave
