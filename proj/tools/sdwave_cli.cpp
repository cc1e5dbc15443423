#include <CLI11.hpp>
#include <Eigen/Dense>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>

#include "sdwave/block.hpp"
#include "sdwave/config.hpp"
#include "sdwave/elliptic.hpp"
#include "sdwave/reports.hpp"
#include "sdwave/resonance.hpp"
#include "sdwave/semiflow.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 4;

struct Session {
    sdwave::RunConfig cfg;
    sdwave::SpectralBasis basis;
    sdwave::ResonanceDecomposition decomp;
    sdwave::Nonlinearity f;
};

std::function<double(double)> coefficient_fn(const std::string& spec) {
    if (spec.rfind("affine:", 0) == 0) {
        const double b = std::stod(spec.substr(7));
        return [b](double x) { return 1.0 + b * x; };
    }
    const double v = std::stod(spec);
    return [v](double) { return v; };
}

Session open_session(const sdwave::RunConfig& cfg) {
    Session s{cfg, {}, {}, {}};
    sdwave::EllipticOperator1D op;
    op.length = cfg.length;
    op.coefficient = coefficient_fn(cfg.coefficient);
    op.n_grid = cfg.n_grid;
    s.basis = sdwave::build_basis(op, cfg.n_modes);
    const double lambda = s.basis.eigenvalues[cfg.k - 1];
    s.decomp = sdwave::decompose(s.basis, lambda, cfg.c, cfg.snap_tol, cfg.alpha);
    s.f = sdwave::builtins::by_name(cfg.nonlinearity, s.basis, cfg.k - 1,
                                    cfg.amplitude);
    return s;
}

void write_file(const sdwave::RunConfig& cfg, const std::string& name,
                const std::string& content) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

sdwave::ConditionReport run_g_check(const Session& s) {
    sdwave::GCheckOptions opts;
    opts.R_grid = s.cfg.r_grid();
    opts.n_samples = s.cfg.n_samples;
    opts.seed = s.cfg.seed;
    // Default balls mirror the first certification pass of the block build.
    const auto decay = sdwave::decay_constants(s.decomp, s.basis);
    const auto pn = sdwave::projection_norms(s.decomp, s.basis);
    const double m0 = 2.0 * s.f.bound * std::sqrt(s.basis.length);
    opts.B1_radius = m0 * decay.M * (pn.cQ_plus + pn.cQ_minus) / decay.delta + 1.0;
    opts.B2_radius = 1.1 * s.f.bound * std::sqrt(s.basis.length) /
                     (s.decomp.c * s.decomp.lambda) / (s.decomp.c * s.decomp.lambda);
    return sdwave::check_G(s.basis, s.decomp, s.f, opts);
}

sdwave::IsolatingBlock build_block(const Session& s) {
    const auto decay = sdwave::decay_constants(s.decomp, s.basis);
    const auto g = run_g_check(s);
    if (g.verdict != sdwave::Verdict::G1 && g.verdict != sdwave::Verdict::G2)
        throw std::domain_error("geometric condition inconclusive");
    sdwave::DeriveOptions opts;
    opts.R_grid = s.cfg.r_grid();
    opts.n_samples = s.cfg.n_samples;
    opts.seed = s.cfg.seed;
    return sdwave::derive_radii(s.decomp, decay, s.f, g, s.basis, opts);
}

int cmd_basis(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    const auto decay = sdwave::decay_constants(s.decomp, s.basis);
    std::cout << "modes: " << s.basis.n_modes() << "\n";
    for (int i = 0; i < s.basis.n_modes(); ++i) {
        const char* cls = s.decomp.blocks[i].cls == sdwave::ModeClass::Kernel
                              ? "kernel"
                              : (s.decomp.blocks[i].cls == sdwave::ModeClass::Minus
                                     ? "minus"
                                     : "plus");
        std::cout << "mu_" << (i + 1) << " = "
                  << sdwave::format_double(s.basis.eigenvalues[i]) << "  [" << cls
                  << "]\n";
    }
    std::cout << "d table:";
    for (int v : s.decomp.d) std::cout << ' ' << v;
    std::cout << "\ndim E_minus = " << s.decomp.dim_E_minus()
              << "\nkernel dim = " << s.decomp.kernel_dim()
              << "\nM = " << sdwave::format_double(decay.M)
              << "\ndelta = " << sdwave::format_double(decay.delta) << "\n";
    write_file(cfg, "basis.csv", sdwave::basis_csv(s.basis));
    return 0;
}

int cmd_check(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    nlohmann::json out;
    bool conclusive = false;
    if (s.f.f_plus && s.f.f_minus) {
        const auto ll = sdwave::check_LL(s.basis, s.decomp, s.f, cfg.n_sphere);
        out["LL"] = sdwave::to_json(ll);
        conclusive = conclusive || ll.verdict != sdwave::Verdict::Inconclusive;
    }
    if (s.f.f_inf) {
        const auto sr = sdwave::check_SR(s.basis, s.f);
        out["SR"] = sdwave::to_json(sr);
        conclusive = conclusive || sr.verdict != sdwave::Verdict::Inconclusive;
    }
    const auto g = run_g_check(s);
    out["G"] = sdwave::to_json(g);
    conclusive = conclusive || g.verdict != sdwave::Verdict::Inconclusive;
    const std::string text = dump(out);
    std::cout << text;
    write_file(cfg, "check.json", text);
    return conclusive ? 0 : kExitInconclusive;
}

int cmd_block(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    const auto block = build_block(s);
    const auto verification = sdwave::verify_block(
        block, s.decomp, s.basis, s.f, cfg.n_boundary_samples, cfg.dt, cfg.seed);
    nlohmann::json out{{"block", sdwave::to_json(block)},
                       {"verification", sdwave::to_json(verification)}};
    const std::string text = dump(out);
    std::cout << text;
    write_file(cfg, "block.json", text);
    return verification.valid() ? 0 : kExitNumerical;
}

int cmd_index(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    const auto g = run_g_check(s);
    if (g.verdict != sdwave::Verdict::G1 && g.verdict != sdwave::Verdict::G2)
        throw std::domain_error("geometric condition inconclusive");
    const auto rep = sdwave::conley_index(s.decomp, g.verdict);
    const std::string text = dump(sdwave::to_json(rep));
    std::cout << text;
    std::cout << "K_infty nonempty: " << (rep.nonempty ? "true" : "false") << "\n";
    write_file(cfg, "index.json", text);
    return 0;
}

int cmd_simulate(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    const auto integ =
        sdwave::make_homotopy_integrator(s.decomp, s.basis, s.f, 1.0, cfg.dt);
    const int n_traj = std::min(cfg.n_initial, 8);
    const int stride =
        std::max(1, static_cast<int>(cfg.T / cfg.dt) / 500);
    for (int t = 0; t < n_traj; ++t) {
        std::mt19937_64 rng(cfg.seed + t);
        std::normal_distribution<double> gauss;
        sdwave::StateE w0 = sdwave::StateE::zero(s.decomp.n_modes());
        for (int i = 0; i < s.decomp.n_modes(); ++i) {
            w0.x[i] = 0.1 * gauss(rng);
            w0.y[i] = 0.1 * gauss(rng);
        }
        const auto traj = integ.integrate(w0, cfg.T, stride);
        write_file(cfg, "traj_" + std::to_string(cfg.seed + t) + ".csv",
                   sdwave::trajectory_csv(traj, s.decomp, s.basis));
    }
    std::cout << "wrote " << n_traj << " trajectories to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_probe_divergence(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    Eigen::VectorXd y0 =
        Eigen::VectorXd::Constant(s.decomp.kernel_dim(), cfg.amplitude);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    sdwave::StateE w0 = sdwave::StateE::zero(s.decomp.n_modes());
    for (int i = 0; i < s.decomp.n_modes(); ++i) {
        w0.x[i] = gauss(rng);
        w0.y[i] = gauss(rng);
    }
    const auto rep =
        sdwave::divergence_probe(s.decomp, s.basis, y0, w0, cfg.T, cfg.dt);
    const std::string text = dump(sdwave::to_json(rep));
    std::cout << text;
    write_file(cfg, "divergence.json", text);
    return 0;
}

int cmd_equilibrium(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    const auto rec = sdwave::equilibrium_solve(
        s.decomp, s.basis, s.f, Eigen::VectorXd::Zero(s.decomp.n_modes()));
    const std::string text = dump(sdwave::to_json(rec));
    std::cout << text;
    write_file(cfg, "equilibrium.json", text);
    return rec.converged ? 0 : kExitNumerical;
}

int cmd_connect(const sdwave::RunConfig& cfg) {
    const Session s = open_session(cfg);
    sdwave::Verdict verdict = sdwave::Verdict::Inconclusive;
    nlohmann::json out;
    if (s.f.f_inf) {
        const auto sr = sdwave::check_SR(s.basis, s.f);
        out["SR"] = sdwave::to_json(sr);
        verdict = sr.verdict;
    }
    if (verdict == sdwave::Verdict::Inconclusive && s.f.f_plus && s.f.f_minus) {
        const auto ll = sdwave::check_LL(s.basis, s.decomp, s.f, cfg.n_sphere);
        out["LL"] = sdwave::to_json(ll);
        verdict = ll.verdict;
    }
    if (verdict == sdwave::Verdict::Inconclusive) {
        std::cout << dump(out);
        std::cerr << "no conclusive sign condition for the connection criteria\n";
        return kExitInconclusive;
    }
    const auto rep = sdwave::connecting_orbit_criteria(s.decomp, s.f, verdict);
    out["criteria"] = sdwave::to_json(rep);
    if (rep.applicable) {
        try {
            const auto block = build_block(s);
            const double T = cfg.census_T > 0.0 ? cfg.census_T : cfg.T;
            const auto probe =
                sdwave::connection_probe(block, s.decomp, s.basis, s.f,
                                         cfg.probe_eps, T, cfg.dt, cfg.seed);
            out["probe"] = {{"launched", probe.launched},
                            {"converged_to_nonzero", probe.converged_to_nonzero},
                            {"best_final_distance", probe.best_final_distance}};
        } catch (const std::exception& e) {
            out["probe"] = {{"skipped", e.what()}};
        }
    }
    const std::string text = dump(out);
    std::cout << text;
    write_file(cfg, "connect.json", text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-Galerkin resonance toolkit for the strongly damped "
                 "wave equation"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "run configuration file")
        ->required();
    std::uint64_t seed_override = 0;
    const auto* seed_opt =
        app.add_option("--seed", seed_override, "override [checks] seed");
    std::string out_override;
    const auto* out_opt =
        app.add_option("--out", out_override, "override [output] out_dir");
    std::string format_override;
    const auto* format_opt = app.add_option("--format", format_override,
                                            "override [output] format")
                                 ->check(CLI::IsMember({"csv", "json"}));

    const std::vector<std::pair<std::string, int (*)(const sdwave::RunConfig&)>>
        commands = {{"basis", cmd_basis},
                    {"check", cmd_check},
                    {"block", cmd_block},
                    {"index", cmd_index},
                    {"simulate", cmd_simulate},
                    {"probe-divergence", cmd_probe_divergence},
                    {"equilibrium", cmd_equilibrium},
                    {"connect", cmd_connect}};
    for (const auto& [name, fn] : commands)
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    sdwave::RunConfig cfg;
    try {
        cfg = sdwave::parse_config(config_path);
        if (*seed_opt) cfg.seed = seed_override;
        if (*out_opt) cfg.out_dir = out_override;
        if (*format_opt) cfg.format = format_override;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        for (const auto& [name, fn] : commands)
            if (app.get_subcommand(name)->parsed()) return fn(cfg);
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitNumerical;
    }
}
