#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sdwave {

/// Flat sectioned key-value run configuration. Unknown keys are rejected.
struct RunConfig {
    // [operator]
    double length = 1.0;
    std::string coefficient = "1";   // constant value, or "1+b*x" form: "affine:b"
    int n_grid = 2000;
    int n_modes = 8;

    // [nonlinearity]
    std::string nonlinearity = "arctan";
    double amplitude = 1.0;          // const_kernel scale

    // [dynamics]
    int k = 1;                        // resonant eigenvalue index
    double c = 1.0;
    double alpha = 0.5;
    double dt = 1e-3;
    double T = 10.0;
    double snap_tol = 1e-8;

    // [checks]
    std::uint64_t seed = 20240817;
    int n_samples = 200;
    int n_sphere = 32;
    int n_boundary_samples = 1000;
    int n_initial = 64;
    double R_min = 1.0, R_max = 1000.0;
    int R_points = 16;
    double census_T = 0.0;           // 0 -> 50 / delta
    double probe_eps = 1e-3;

    // [output]
    std::string out_dir = ".";
    std::string format = "json";     // csv|json

    std::vector<double> r_grid() const;
};

struct ConfigError {
    std::string message;
    int line = 0;
};

/// Parses the sectioned key=value format; throws std::runtime_error with a
/// line/key diagnostic on malformed input or unknown keys.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace sdwave
