#include "sdwave/block.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace sdwave {

std::string to_string(BoundaryClass b) {
    switch (b) {
        case BoundaryClass::Interior: return "interior";
        case BoundaryClass::Egress: return "egress";
        case BoundaryClass::Ingress: return "ingress";
        case BoundaryClass::Bounce: return "bounce";
        case BoundaryClass::Exterior: return "exterior";
    }
    return "?";
}

IsolatingBlock derive_radii(const ResonanceDecomposition& decomp,
                            const DecayConstants& decay, const Nonlinearity& f,
                            const ConditionReport& g_report,
                            const SpectralBasis& basis,
                            const DeriveOptions& opts) {
    if (g_report.verdict != Verdict::G1 && g_report.verdict != Verdict::G2)
        throw std::invalid_argument(
            "derive_radii needs a conclusive G1/G2 report, got " +
            to_string(g_report.verdict));

    IsolatingBlock blk;
    blk.which = g_report.verdict;
    blk.a = decomp.a_constant();
    blk.b1_extra = opts.b1_extra;
    const double cl = decomp.c * decomp.lambda;
    const double sqrt_ell = std::sqrt(basis.length);
    blk.m1 = f.bound * sqrt_ell;
    blk.m0 = 2.0 * f.bound * sqrt_ell;

    const ProjectionNorms pn = projection_norms(decomp, basis);
    blk.R1 = blk.m0 * decay.M * (pn.cQ_plus + pn.cQ_minus) / decay.delta;
    blk.R2 = 1.1 * blk.m1 / cl;

    // Re-certify the geometric condition at the block balls.
    GCheckOptions gopts;
    gopts.B1_radius = blk.R1 + opts.b1_extra;
    gopts.B2_radius = blk.R2 / cl;
    gopts.R_grid = opts.R_grid;
    gopts.n_samples = opts.n_samples;
    gopts.seed = opts.seed;
    blk.g_report = check_G(basis, decomp, f, gopts);
    if (blk.g_report.verdict != blk.which)
        throw std::runtime_error(
            "block certification failed: expected " + to_string(blk.which) +
            " at the block balls, got " + to_string(blk.g_report.verdict));
    blk.R3 = blk.g_report.R3;
    blk.rho = blk.g_report.rho;
    blk.R4 = blk.a * cl * blk.R3 + blk.a * blk.R2;

    if (-cl * blk.R2 * blk.R2 + blk.m1 * blk.R2 >= 0.0)
        throw std::logic_error("R2 inequality violated");
    return blk;
}

BoundaryClass classify_boundary(const IsolatingBlock& block,
                                const ResonanceDecomposition& decomp,
                                const StateE& state, double rel_tol) {
    const KernelCoords wc = kernel_coordinates(decomp, state);
    const double w1 = wc.w1.norm(), w2 = wc.w2.norm();
    const auto cmp = [rel_tol](double v, double r) {
        if (v > r * (1.0 + rel_tol)) return 1;
        if (v < r * (1.0 - rel_tol)) return -1;
        return 0;
    };
    const int c1 = cmp(w1, block.R4), c2 = cmp(w2, block.R2);
    if (c1 > 0 || c2 > 0) return BoundaryClass::Exterior;
    if (c1 == 0 && c2 == 0) return BoundaryClass::Bounce;
    if (c1 == 0) return BoundaryClass::Egress;
    if (c2 == 0) return BoundaryClass::Ingress;
    return BoundaryClass::Interior;
}

namespace {

// Kernel-mode coefficients of PF(s Qu + Pu).
Eigen::VectorXd kernel_field(const ResonanceDecomposition& decomp,
                             const SpectralBasis& basis, const Nonlinearity& f,
                             const Eigen::VectorXd& position_coeffs) {
    const Eigen::VectorXd F = nemitskii(basis, f, position_coeffs);
    Eigen::VectorXd out(decomp.kernel_dim());
    for (int j = 0; j < decomp.kernel_dim(); ++j)
        out[j] = F[decomp.kernel_modes[j]];
    return out;
}

// RK4 on the product-flow kernel ODE: du = v, dv = -c lambda v + PF(u).
// Runs in either time direction; the kernel block is nonstiff.
void rk4_kernel(const ResonanceDecomposition& decomp, const SpectralBasis& basis,
                const Nonlinearity& f, Eigen::VectorXd& u, Eigen::VectorXd& v,
                double T, double dt) {
    const double cl = decomp.c * decomp.lambda;
    const int n = decomp.n_modes();
    const auto deriv = [&](const Eigen::VectorXd& uu, const Eigen::VectorXd& vv,
                           Eigen::VectorXd& du, Eigen::VectorXd& dv) {
        Eigen::VectorXd pos = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < decomp.kernel_dim(); ++j)
            pos[decomp.kernel_modes[j]] = uu[j];
        const Eigen::VectorXd pf = kernel_field(decomp, basis, f, pos);
        du = vv;
        dv = -cl * vv + pf;
    };
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(T) / dt)));
    const double h = T / steps;
    Eigen::VectorXd k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    for (int s = 0; s < steps; ++s) {
        deriv(u, v, k1u, k1v);
        deriv(u + 0.5 * h * k1u, v + 0.5 * h * k1v, k2u, k2v);
        deriv(u + 0.5 * h * k2u, v + 0.5 * h * k2v, k3u, k3v);
        deriv(u + h * k3u, v + h * k3v, k4u, k4v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
}

Eigen::VectorXd sphere_point(int dim, double radius, std::mt19937_64& rng) {
    if (dim == 1) {
        std::bernoulli_distribution coin;
        return Eigen::VectorXd::Constant(1, coin(rng) ? radius : -radius);
    }
    std::normal_distribution<double> gauss;
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v[j] = gauss(rng);
    return v.normalized() * radius;
}

Eigen::VectorXd open_ball_point(int dim, double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r = radius * 0.999 * std::pow(unif(rng), 1.0 / dim);
    return sphere_point(dim, r, rng);
}

}  // namespace

BlockVerification verify_block(const IsolatingBlock& block,
                               const ResonanceDecomposition& decomp,
                               const SpectralBasis& basis, const Nonlinearity& f,
                               int n_boundary_samples, double dt,
                               std::uint64_t seed,
                               const std::vector<double>& s_values) {
    BlockVerification rep;
    rep.samples_per_stratum = n_boundary_samples;
    rep.s_values = s_values;
    rep.seed = seed;
    rep.min_w1_margin = std::numeric_limits<double>::infinity();
    rep.min_w2_margin = std::numeric_limits<double>::infinity();

    const int n = decomp.n_modes();
    const int nk = decomp.kernel_dim();
    const double cl = decomp.c * decomp.lambda;
    const double a = block.a;
    const bool g1 = block.which == Verdict::G1;
    std::mt19937_64 rng(seed);

    // alpha-norm weights for the non-kernel position ball B1.
    std::vector<int> qmodes;
    for (int i = 0; i < n; ++i)
        if (!decomp.is_kernel(i)) qmodes.push_back(i);

    const auto sample_q_position = [&](Eigen::VectorXd& coeffs) {
        if (qmodes.empty()) return;
        std::normal_distribution<double> gauss;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        Eigen::VectorXd g(qmodes.size());
        double nrm = 0.0;
        for (size_t j = 0; j < qmodes.size(); ++j) {
            g[j] = gauss(rng);
            const double w = std::pow(basis.eigenvalues[qmodes[j]], decomp.alpha);
            nrm += w * w * g[j] * g[j];
        }
        nrm = std::sqrt(nrm);
        const double r = (block.R1 + block.b1_extra) *
                         std::pow(unif(rng), 1.0 / static_cast<double>(qmodes.size()));
        for (size_t j = 0; j < qmodes.size(); ++j)
            coeffs[qmodes[j]] = g[j] * (r / nrm);
    };

    const auto position_from = [&](const Eigen::VectorXd& w1,
                                   const Eigen::VectorXd& w2, double s,
                                   Eigen::VectorXd& pos, Eigen::VectorXd& pv) {
        // W-inverse on the kernel, plus the s-scaled non-kernel sample.
        pos = Eigen::VectorXd::Zero(n);
        pv = Eigen::VectorXd::Zero(nk);
        if (s != 0.0) {
            Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
            sample_q_position(q);
            for (int i : qmodes) pos[i] = s * q[i];
        }
        for (int j = 0; j < nk; ++j) {
            const int i = decomp.kernel_modes[j];
            pv[j] = w2[j];
            pos[i] = (w1[j] / a - w2[j]) / cl;
        }
    };

    for (double s : s_values) {
        for (int t = 0; t < n_boundary_samples; ++t) {
            // Ingress stratum |w2| = R2: require d/dt 0.5 |w2|^2 < 0.
            {
                const Eigen::VectorXd w1 = open_ball_point(nk, block.R4, rng);
                const Eigen::VectorXd w2 = sphere_point(nk, block.R2, rng);
                Eigen::VectorXd pos, pv;
                position_from(w1, w2, s, pos, pv);
                const Eigen::VectorXd pf = kernel_field(decomp, basis, f, pos);
                const double ddt = -cl * block.R2 * block.R2 + pf.dot(pv);
                if (ddt >= 0.0) ++rep.w2_sign_violations;
                rep.min_w2_margin = std::min(rep.min_w2_margin, -ddt);
            }
            // Egress stratum |w1| = R4: d/dt 0.5 |w1|^2 > 0 under G1, < 0 under G2.
            {
                const Eigen::VectorXd w1 = sphere_point(nk, block.R4, rng);
                const Eigen::VectorXd w2 = open_ball_point(nk, block.R2, rng);
                Eigen::VectorXd pos, pv;
                position_from(w1, w2, s, pos, pv);
                const Eigen::VectorXd pf = kernel_field(decomp, basis, f, pos);
                Eigen::VectorXd pu(nk);
                for (int j = 0; j < nk; ++j)
                    pu[j] = pos[decomp.kernel_modes[j]];
                const double ddt = a * a * pf.dot(cl * pu + pv);
                const double signed_ddt = g1 ? ddt : -ddt;
                if (signed_ddt <= 0.0) ++rep.w1_sign_violations;
                rep.min_w1_margin = std::min(rep.min_w1_margin, signed_ddt);
            }
        }
    }

    // Short product-flow integrations at s = 0 confirm strict exit/entry.
    const int n_flow = std::min(n_boundary_samples, 32);
    const double tau = 10.0 * dt;
    for (int t = 0; t < n_flow; ++t) {
        // Forward from the egress stratum.
        {
            const Eigen::VectorXd w1 = sphere_point(nk, block.R4, rng);
            const Eigen::VectorXd w2 = open_ball_point(nk, block.R2, rng);
            Eigen::VectorXd pos, pv;
            position_from(w1, w2, 0.0, pos, pv);
            Eigen::VectorXd u(nk);
            for (int j = 0; j < nk; ++j) u[j] = pos[decomp.kernel_modes[j]];
            Eigen::VectorXd v = pv;
            rk4_kernel(decomp, basis, f, u, v, tau, dt);
            const double w1_after = (a * (cl * u + v)).norm();
            const bool ok = g1 ? w1_after > block.R4 : w1_after < block.R4;
            if (!ok) ++rep.flow_violations;
        }
        // Backward from the ingress stratum: the orbit must come from outside.
        {
            const Eigen::VectorXd w1 = open_ball_point(nk, block.R4, rng);
            const Eigen::VectorXd w2 = sphere_point(nk, block.R2, rng);
            Eigen::VectorXd pos, pv;
            position_from(w1, w2, 0.0, pos, pv);
            Eigen::VectorXd u(nk);
            for (int j = 0; j < nk; ++j) u[j] = pos[decomp.kernel_modes[j]];
            Eigen::VectorXd v = pv;
            rk4_kernel(decomp, basis, f, u, v, -tau, dt);
            if (v.norm() <= block.R2) ++rep.flow_violations;
        }
    }
    return rep;
}

IndexReport conley_index(const ResonanceDecomposition& decomp, Verdict which) {
    if (which != Verdict::G1 && which != Verdict::G2)
        throw std::invalid_argument("conley_index expects G1 or G2");
    IndexReport rep;
    rep.condition_used = which;
    rep.d_table = decomp.d;
    const int hyperbolic = decomp.dim_E_minus();
    rep.exponent = hyperbolic + (which == Verdict::G1 ? decomp.kernel_dim() : 0);
    const int expected = which == Verdict::G1 ? decomp.d[decomp.k]
                                              : decomp.d[decomp.k - 1];
    if (rep.exponent != expected)
        throw std::logic_error("index bookkeeping mismatch");
    rep.formula = which == Verdict::G1 ? "Sigma^{d_k}" : "Sigma^{d_{k-1}}";
    rep.nonempty = true;  // Sigma^q is never the trivial pointed homotopy type
    return rep;
}

OrbitCensus detect_bounded_orbits(const IsolatingBlock& block,
                                  const ResonanceDecomposition& decomp,
                                  const SpectralBasis& basis,
                                  const Nonlinearity& f, int n_initial, double T,
                                  double dt, std::uint64_t seed,
                                  double interior_fraction) {
    OrbitCensus census;
    census.horizon = T;
    census.seed = seed;
    std::mt19937_64 rng(seed);

    const int n = decomp.n_modes();
    const int nk = decomp.kernel_dim();
    std::vector<int> qmodes;
    for (int i = 0; i < n; ++i)
        if (!decomp.is_kernel(i)) qmodes.push_back(i);

    Integrator integ = make_homotopy_integrator(decomp, basis, f, 1.0, dt);

    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const auto in_box = [&](const StateE& w, double& qn) {
        qn = qnorm(w, decomp, basis);
        if (qn > block.R1 + block.b1_extra) return false;
        const KernelCoords wc = kernel_coordinates(decomp, w);
        return wc.w1.norm() <= block.R4 && wc.w2.norm() <= block.R2;
    };

    for (int idx = 0; idx < n_initial; ++idx) {
        // Seed 0 is the origin so an equilibrium at 0 always enters the
        // census; the rest take the kernel part uniform in the scaled W-box
        // and the hyperbolic part in the scaled E-ball.
        KernelCoords wc{open_ball_point(nk, interior_fraction * block.R4, rng),
                        open_ball_point(nk, interior_fraction * block.R2, rng)};
        if (idx == 0) {
            wc.w1.setZero();
            wc.w2.setZero();
        }
        StateE w = kernel_state(decomp, wc, n);
        if (idx > 0 && !qmodes.empty()) {
            Eigen::VectorXd gx(qmodes.size()), gy(qmodes.size());
            double nx = 0.0;
            for (size_t j = 0; j < qmodes.size(); ++j) {
                gx[j] = gauss(rng);
                gy[j] = gauss(rng);
                const double wgt = std::pow(basis.eigenvalues[qmodes[j]], decomp.alpha);
                nx += wgt * wgt * gx[j] * gx[j];
            }
            const double en = std::sqrt(nx) + gy.norm();
            const double r = interior_fraction * (block.R1 + block.b1_extra) *
                             std::pow(unif(rng), 1.0 / (2.0 * qmodes.size()));
            for (size_t j = 0; j < qmodes.size(); ++j) {
                w.x[qmodes[j]] = gx[j] * r / en;
                w.y[qmodes[j]] = gy[j] * r / en;
            }
        }

        OrbitRecord rec;
        rec.seed_index = idx;
        rec.stayed = true;
        const auto n_steps = static_cast<long>(std::ceil(T / dt));
        double qn = 0.0;
        in_box(w, qn);
        rec.max_Qnorm = qn;
        for (long k = 1; k <= n_steps; ++k) {
            w = integ.step(w);
            if (!in_box(w, qn)) {
                rec.stayed = false;
                rec.exit_time = k * dt;
                break;
            }
            rec.max_Qnorm = std::max(rec.max_Qnorm, qn);
        }
        rec.final_Enorm = enorm(w, basis, decomp.alpha);
        if (rec.stayed) {
            ++census.n_stayers;
            census.max_stayer_Qnorm =
                std::max(census.max_stayer_Qnorm, rec.max_Qnorm);
        }
        census.orbits.push_back(rec);
    }
    return census;
}

EquilibriumRecord equilibrium_solve(const ResonanceDecomposition& decomp,
                                    const SpectralBasis& basis,
                                    const Nonlinearity& f,
                                    const Eigen::VectorXd& x0, double tol,
                                    const IsolatingBlock* block, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const int n = decomp.n_modes();
    const auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd g = nemitskii(basis, f, x);
        for (int i = 0; i < n; ++i)
            g[i] = (basis.eigenvalues[i] - decomp.lambda) * x[i] - g[i];
        return g;
    };

    EquilibriumRecord rec;
    Eigen::VectorXd x = x0;
    Eigen::VectorXd g = residual(x);
    for (int it = 0; it < max_iter && g.norm() > tol; ++it) {
        // Finite-difference Jacobian.
        Eigen::MatrixXd J(n, n);
        for (int j = 0; j < n; ++j) {
            const double h = 1e-6 * (1.0 + std::abs(x[j]));
            Eigen::VectorXd xp = x;
            xp[j] += h;
            J.col(j) = (residual(xp) - g) / h;
        }
        const Eigen::VectorXd step = J.fullPivLu().solve(-g);
        double damp = 1.0;
        while (damp >= 1e-4) {
            const Eigen::VectorXd xn = x + damp * step;
            const Eigen::VectorXd gn = residual(xn);
            if (gn.norm() < (1.0 - 0.25 * damp) * g.norm() || gn.norm() < tol) {
                x = xn;
                g = gn;
                break;
            }
            damp *= 0.5;
        }
        if (damp < 1e-4) break;
        rec.iterations = it + 1;
    }

    rec.x = x;
    rec.residual = g.norm();
    rec.converged = rec.residual <= tol;
    if (!rec.converged && rec.iterations >= max_iter)
        throw std::runtime_error("equilibrium Newton did not converge");

    // Linearized flow matrix [[0, I], [lambda I - K + J_F, -c K]].
    Eigen::MatrixXd JF(n, n);
    const Eigen::VectorXd F0 = nemitskii(basis, f, x);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-6 * (1.0 + std::abs(x[j]));
        Eigen::VectorXd xp = x;
        xp[j] += h;
        JF.col(j) = (nemitskii(basis, f, xp) - F0) / h;
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    L.topRightCorner(n, n).setIdentity();
    L.bottomLeftCorner(n, n) = JF;
    for (int i = 0; i < n; ++i) {
        L(n + i, i) += decomp.lambda - basis.eigenvalues[i];
        L(n + i, n + i) = -decomp.c * basis.eigenvalues[i];
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> es(L);
    for (int i = 0; i < 2 * n; ++i) {
        rec.linearization_spectrum.push_back(es.eigenvalues()[i]);
        if (es.eigenvalues()[i].real() > 0.0) ++rec.unstable_dim;
    }

    if (block) {
        StateE w{x, Eigen::VectorXd::Zero(n)};
        rec.in_block_interior =
            classify_boundary(*block, decomp, w) == BoundaryClass::Interior &&
            qnorm(w, decomp, basis) < block->R1 + block->b1_extra;
    }
    return rec;
}

ConnectionReport connecting_orbit_criteria(const ResonanceDecomposition& decomp,
                                           const Nonlinearity& f,
                                           Verdict condition_verdict,
                                           double tol) {
    if (!f.nu) throw std::invalid_argument("connecting-orbit criteria need nu");
    ConnectionReport rep;
    rep.condition = condition_verdict;
    rep.lambda_plus_nu = decomp.lambda + *f.nu;

    const bool positive = condition_verdict == Verdict::LL1 ||
                          condition_verdict == Verdict::SR1;
    const bool negative = condition_verdict == Verdict::LL2 ||
                          condition_verdict == Verdict::SR2;
    if (!positive && !negative) {
        rep.clause_name = "none";
        rep.conclusion = "no conclusive sign condition; criteria not applicable";
        return rep;
    }

    // Locate lambda + nu in the (discrete, simple) spectrum.
    const auto& mus = decomp.blocks;
    const double target = rep.lambda_plus_nu;
    int slot = 0;  // mu_slot < target < mu_{slot+1}; 0 when target < mu_1
    for (const auto& blk : mus) {
        if (std::abs(target - blk.mu) <= tol * blk.mu) {
            rep.resonant_at_zero = true;
            rep.clause_name = "resonant at zero";
            rep.conclusion = "lambda + nu is an eigenvalue; criteria inapplicable";
            return rep;
        }
        if (blk.mu < target) ++slot;
    }
    rep.spectral_slot = slot;
    rep.zero_index_exponent = slot == 0 ? 0 : decomp.d[slot];

    const double lambda = decomp.lambda;
    const double mu_slot = slot > 0 ? mus[slot - 1].mu : 0.0;
    if (positive) {
        if (slot == 0) {
            rep.clause = 2;
            rep.clause_name = "(ii)";
        } else if (std::abs(mu_slot - lambda) > tol * lambda) {
            rep.clause = 1;
            rep.clause_name = "(i)";
        } else {
            rep.clause_name = "none";
        }
    } else {
        // Clauses (iii)/(iv) need lambda distinct from the eigenvalue directly
        // above lambda + nu.
        const bool above_exists = slot < static_cast<int>(mus.size());
        const double mu_above = above_exists ? mus[slot].mu : 0.0;
        if (slot == 0) {
            // The SR-based clause (iv) carries no side condition on lambda.
            const bool lambda_ok =
                condition_verdict == Verdict::SR2 ||
                (above_exists && std::abs(mu_above - lambda) > tol * lambda);
            if (lambda_ok) {
                rep.clause = 4;
                rep.clause_name = "(iv)";
            } else {
                rep.clause_name = "none";
            }
        } else if (above_exists && std::abs(mu_above - lambda) > tol * lambda) {
            rep.clause = 3;
            rep.clause_name = "(iii)";
        } else {
            rep.clause_name = "none";
        }
    }
    rep.applicable = rep.clause != 0;
    rep.conclusion =
        rep.applicable
            ? "a nonzero orbit in K_infty with limit 0 at one end exists"
            : "no clause of the connecting-orbit criterion applies";
    return rep;
}

ConnectionProbe connection_probe(const IsolatingBlock& block,
                                 const ResonanceDecomposition& decomp,
                                 const SpectralBasis& basis, const Nonlinearity& f,
                                 double eps, double T, double dt,
                                 std::uint64_t seed, int n_launch) {
    ConnectionProbe probe;
    const int n = decomp.n_modes();
    const EquilibriumRecord zero =
        equilibrium_solve(decomp, basis, f, Eigen::VectorXd::Zero(n), 1e-10);

    // Unstable directions of the linearization at 0.
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    L.topRightCorner(n, n).setIdentity();
    for (int i = 0; i < n; ++i) {
        L(n + i, i) = decomp.lambda - basis.eigenvalues[i] + f.nu.value_or(0.0);
        L(n + i, n + i) = -decomp.c * basis.eigenvalues[i];
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> es(L);

    Integrator integ = make_homotopy_integrator(decomp, basis, f, 1.0, dt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int launched = 0;
    for (int i = 0; i < 2 * n && launched < n_launch; ++i) {
        if (es.eigenvalues()[i].real() <= 1e-10) continue;
        const Eigen::VectorXd dir = es.eigenvectors().col(i).real().normalized();
        for (double sign : {1.0, -1.0}) {
            if (launched >= n_launch) break;
            StateE w{eps * sign * dir.head(n), eps * sign * dir.tail(n)};
            ++launched;
            bool stayed = true;
            const auto n_steps = static_cast<long>(std::ceil(T / dt));
            for (long k = 0; k < n_steps; ++k) {
                w = integ.step(w);
                const KernelCoords wc = kernel_coordinates(decomp, w);
                if (wc.w1.norm() > block.R4 || wc.w2.norm() > block.R2 ||
                    qnorm(w, decomp, basis) > block.R1 + block.b1_extra) {
                    stayed = false;
                    break;
                }
            }
            const double dist = w.x.norm() + w.y.norm();
            probe.best_final_distance = std::max(probe.best_final_distance, dist);
            if (stayed && dist > 10.0 * eps) ++probe.converged_to_nonzero;
        }
    }
    probe.launched = launched;
    (void)zero;
    (void)unif;
    return probe;
}

}  // namespace sdwave
