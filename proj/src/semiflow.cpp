#include "sdwave/semiflow.hpp"

#include <cmath>
#include <stdexcept>

#include "sdwave/linalg2.hpp"

namespace sdwave {

Eigen::VectorXd nemitskii(const SpectralBasis& basis, const Nonlinearity& f,
                          const Eigen::VectorXd& x) {
    Eigen::VectorXd u = basis.synthesize(x);
    for (int j = 0; j < u.size(); ++j) u[j] = f.f(basis.grid[j], u[j]);
    return basis.project(u);
}

Eigen::VectorXd homotopy_field(const ResonanceDecomposition& decomp,
                               const SpectralBasis& basis,
                               const Nonlinearity& f, double s,
                               const Eigen::VectorXd& x) {
    Eigen::VectorXd arg(x.size());
    for (int i = 0; i < x.size(); ++i)
        arg[i] = decomp.is_kernel(i) ? x[i] : s * x[i];
    Eigen::VectorXd F = nemitskii(basis, f, arg);
    for (int i = 0; i < F.size(); ++i)
        if (!decomp.is_kernel(i)) F[i] *= s;
    return F;
}

Integrator::Integrator(const ResonanceDecomposition& decomp, FieldFn field,
                       double dt)
    : decomp_(decomp), field_(std::move(field)), dt_(dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    for (const auto& blk : decomp.blocks) {
        exp_full_.push_back(expm2(-blk.B * dt));
        phi_full_.push_back(phi2(blk.B, dt));
        exp_half_.push_back(expm2(-blk.B * (0.5 * dt)));
        phi_half_.push_back(phi2(blk.B, 0.5 * dt));
    }
}

static void advance(const std::vector<Eigen::Matrix2d>& exps,
                    const std::vector<Eigen::Matrix2d>& phis,
                    const StateE& w, const Eigen::VectorXd& g, StateE& out) {
    const int n = static_cast<int>(exps.size());
    out.x.resize(n);
    out.y.resize(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d z = exps[i] * Eigen::Vector2d(w.x[i], w.y[i]) +
                                  phis[i] * Eigen::Vector2d(0.0, g[i]);
        out.x[i] = z[0];
        out.y[i] = z[1];
    }
}

StateE Integrator::step(const StateE& w) const {
    StateE half, out;
    const Eigen::VectorXd g0 = field_(w.x);
    advance(exp_half_, phi_half_, w, g0, half);
    const Eigen::VectorXd gmid = field_(half.x);
    advance(exp_full_, phi_full_, w, gmid, out);

    const double before = w.x.norm() + w.y.norm();
    const double after = out.x.norm() + out.y.norm();
    if (!std::isfinite(after) || after > 10.0 * (before + 1.0))
        throw std::runtime_error(
            "integrator step diverged: dt too large for the predictor");
    return out;
}

Trajectory Integrator::integrate(const StateE& w0, double T,
                                 int sample_stride) const {
    if (T <= 0.0) throw std::invalid_argument("T must be positive");
    Trajectory traj;
    traj.s = s_label;
    const auto n_steps = static_cast<long>(std::ceil(T / dt_ - 1e-12));
    StateE w = w0;
    traj.times.push_back(0.0);
    traj.states.push_back(w);
    for (long k = 1; k <= n_steps; ++k) {
        w = step(w);
        if (k % sample_stride == 0 || k == n_steps) {
            traj.times.push_back(k * dt_);
            traj.states.push_back(w);
        }
    }
    return traj;
}

Integrator make_homotopy_integrator(const ResonanceDecomposition& decomp,
                                    const SpectralBasis& basis,
                                    const Nonlinearity& f, double s, double dt) {
    FieldFn field = [&decomp, &basis, f, s](const Eigen::VectorXd& x) {
        return homotopy_field(decomp, basis, f, s, x);
    };
    Integrator integ(decomp, std::move(field), dt);
    integ.s_label = s;
    return integ;
}

DivergenceReport divergence_probe(const ResonanceDecomposition& decomp,
                                  const SpectralBasis& basis,
                                  const Eigen::VectorXd& y0_kernel,
                                  const StateE& state0, double T, double dt) {
    if (y0_kernel.size() != decomp.kernel_dim())
        throw std::invalid_argument("y0 must be given in kernel coordinates");
    const double y0_h2 = y0_kernel.squaredNorm();
    if (y0_h2 == 0.0) throw std::invalid_argument("y0 must be nonzero");

    const int n = decomp.n_modes();
    Eigen::VectorXd forcing = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < decomp.kernel_dim(); ++j)
        forcing[decomp.kernel_modes[j]] = y0_kernel[j];

    Integrator integ(decomp, [forcing](const Eigen::VectorXd&) { return forcing; },
                     dt);
    const Trajectory traj = integ.integrate(state0, T);

    DivergenceReport rep;
    rep.expected_slope = y0_h2;
    const double cl = decomp.c * decomp.lambda;
    for (size_t k = 0; k < traj.states.size(); ++k) {
        double phi = 0.0;
        for (int j = 0; j < decomp.kernel_dim(); ++j) {
            const int i = decomp.kernel_modes[j];
            phi += cl * traj.states[k].x[i] * y0_kernel[j] +
                   traj.states[k].y[i] * y0_kernel[j];
        }
        rep.times.push_back(traj.times[k]);
        rep.functional.push_back(phi);
    }

    // Least-squares slope over the second half of the window.
    const size_t n_samp = rep.times.size();
    const size_t start = n_samp / 2;
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    const auto cnt = static_cast<double>(n_samp - start);
    for (size_t k = start; k < n_samp; ++k) {
        st += rep.times[k];
        sp += rep.functional[k];
        stt += rep.times[k] * rep.times[k];
        stp += rep.times[k] * rep.functional[k];
    }
    rep.slope = (cnt * stp - st * sp) / (cnt * stt - st * st);
    rep.relative_error = std::abs(rep.slope - rep.expected_slope) / rep.expected_slope;
    return rep;
}

}  // namespace sdwave
