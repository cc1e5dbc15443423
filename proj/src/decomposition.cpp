#include "sdwave/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sdwave/linalg2.hpp"

namespace sdwave {

Eigen::Matrix2d phi2(const Eigen::Matrix2d& b, double h) {
    const double det = b.determinant();
    if (std::abs(det) > 1e-12) {
        Eigen::Matrix2d inv;
        inv << b(1, 1), -b(0, 1), -b(1, 0), b(0, 0);
        inv /= det;
        return inv * (Eigen::Matrix2d::Identity() - expm2(-b * h));
    }
    // Center block [[0,-1],[0,q]] with q = c*lambda.
    if (std::abs(b(0, 0)) > 1e-12 || std::abs(b(1, 0)) > 1e-12)
        throw std::invalid_argument("phi2: singular block is not a center block");
    const double q = b(1, 1);
    double g, ig;  // (1 - e^{-qh})/q and its integral
    if (std::abs(q) * h > 1e-8) {
        g = (1.0 - std::exp(-q * h)) / q;
        ig = (h - g) / q;
    } else {
        g = h * (1.0 - 0.5 * q * h);
        ig = 0.5 * h * h * (1.0 - q * h / 3.0);
    }
    Eigen::Matrix2d out;
    out << h, -b(0, 1) * ig, 0.0, g;
    return out;
}

static ModeBlock make_block(int mode, double mu, double lambda, double c,
                            double tol_eig) {
    ModeBlock blk;
    blk.mode = mode;
    blk.mu = mu;
    blk.B << 0.0, -1.0, mu - lambda, c * mu;
    auto [xi1, xi2] = eig2(blk.B);
    blk.xi_minus = xi1;
    blk.xi_plus = xi2;
    blk.real_eigenvalues = std::abs(xi1.imag()) < tol_eig;

    if (mu == lambda) {
        blk.cls = ModeClass::Kernel;
        blk.proj_plus.setZero();
        blk.proj_minus.setZero();
    } else if (mu < lambda) {
        blk.cls = ModeClass::Minus;
        // det B = mu - lambda < 0: real eigenvalues of opposite sign.
        const double xm = xi1.real(), xp = xi2.real();
        blk.proj_minus = (blk.B - xp * Eigen::Matrix2d::Identity()) / (xm - xp);
        blk.proj_plus = Eigen::Matrix2d::Identity() - blk.proj_minus;
    } else {
        blk.cls = ModeClass::Plus;
        blk.proj_plus.setIdentity();
        blk.proj_minus.setZero();
    }
    return blk;
}

ResonanceDecomposition decompose(const SpectralBasis& basis, double lambda,
                                 double c, double tol, double alpha) {
    if (c <= 0.0) throw std::invalid_argument("damping factor c must be positive");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("alpha must lie in (0, 1)");

    const int n = basis.n_modes();
    int k = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(lambda - basis.eigenvalues[i]) <= tol * basis.eigenvalues[i]) {
            if (k >= 0)
                throw std::invalid_argument(
                    "ambiguous lambda: within tolerance of mu_" + std::to_string(k + 1) +
                    " and mu_" + std::to_string(i + 1));
            k = i;
        }
    }
    if (k < 0)
        throw std::invalid_argument(
            "non-resonant lambda: not within tolerance of any retained eigenvalue; "
            "the non-resonant regime is out of scope");

    ResonanceDecomposition d;
    d.lambda = basis.eigenvalues[k];  // snapped exactly
    d.k = k + 1;
    d.c = c;
    d.alpha = alpha;
    d.d.resize(n + 1);
    d.d[0] = 0;
    for (int l = 1; l <= n; ++l) d.d[l] = l;  // simple 1-D spectrum

    for (int i = 0; i < n; ++i) {
        d.blocks.push_back(make_block(i, basis.eigenvalues[i], d.lambda, c, 1e-12));
        switch (d.blocks.back().cls) {
            case ModeClass::Kernel: d.kernel_modes.push_back(i); break;
            case ModeClass::Minus: d.minus_modes.push_back(i); break;
            case ModeClass::Plus: d.plus_modes.push_back(i); break;
        }
    }
    if (d.dim_E_minus() != d.d[d.k - 1])
        throw std::logic_error("dim E_- does not match d_{k-1}");
    return d;
}

Eigen::Matrix2d center_block(const ResonanceDecomposition& decomp) {
    Eigen::Matrix2d b;
    b << 0.0, -1.0, 0.0, decomp.c * decomp.lambda;
    return b;
}

static double mode_weight(const ResonanceDecomposition& d,
                          const SpectralBasis& basis, int mode) {
    return std::pow(basis.eigenvalues[mode], d.alpha);
}

DecayConstants decay_constants(const ResonanceDecomposition& decomp,
                               const SpectralBasis& basis) {
    double min_rate = std::numeric_limits<double>::infinity();
    int hyperbolic_blocks = 0;
    for (const auto& blk : decomp.blocks) {
        if (blk.cls == ModeClass::Kernel) continue;
        ++hyperbolic_blocks;
        min_rate = std::min({min_rate, std::abs(blk.xi_minus.real()),
                             std::abs(blk.xi_plus.real())});
        if (blk.cls == ModeClass::Minus &&
            (blk.xi_minus.real() >= 0.0 || blk.xi_plus.real() <= 0.0))
            throw std::logic_error("kernel mode leaked into a hyperbolic set");
    }
    if (hyperbolic_blocks == 0)
        throw std::logic_error("decomposition has no hyperbolic modes");

    DecayConstants out;
    out.delta = 0.95 * min_rate;

    // Geometric time grid on [0, 50/delta].
    const double t_max = 50.0 / out.delta;
    std::vector<double> t_grid{0.0};
    for (int j = 0; j < 64; ++j)
        t_grid.push_back(t_max * std::pow(10.0, -4.0 + 4.0 * j / 63.0));

    // Mixed column bound of the block-diagonal semigroup on E_+ in the norm
    // ||x||_alpha + ||y||: with per-block entries e_i = exp(-B_i t) and
    // weights w_i, set  A = max_i |e_i00|, B = max_i w_i |e_i01|,
    // C = max_i |e_i10| / w_i, D = max_i |e_i11|; then the operator norm is
    // at most max(A + C, B + D). Minus blocks restrict to the xi_plus
    // eigendirection, where the semigroup is the scalar e^{-xi_plus t}.
    double sup = 1.0;
    for (double t : t_grid) {
        double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
        for (const auto& blk : decomp.blocks) {
            if (blk.cls == ModeClass::Kernel) continue;
            if (blk.cls == ModeClass::Minus) {
                const double s = std::exp(-blk.xi_plus.real() * t);
                A = std::max(A, s);
                D = std::max(D, s);
                continue;
            }
            const double w = mode_weight(decomp, basis, blk.mode);
            const Eigen::Matrix2d e = expm2(-blk.B * t);
            A = std::max(A, std::abs(e(0, 0)));
            B = std::max(B, w * std::abs(e(0, 1)));
            C = std::max(C, std::abs(e(1, 0)) / w);
            D = std::max(D, std::abs(e(1, 1)));
        }
        sup = std::max(sup, std::max(A + C, B + D) * std::exp(out.delta * t));
    }
    out.M = 1.05 * sup;
    return out;
}

ProjectionNorms projection_norms(const ResonanceDecomposition& decomp,
                                 const SpectralBasis& basis) {
    ProjectionNorms out;
    out.P = 1.0;
    out.Q_plus = decomp.plus_modes.empty() && decomp.minus_modes.empty() ? 0.0 : 1.0;
    out.Q_minus = decomp.minus_modes.empty() ? 0.0 : 1.0;
    out.cP = decomp.kernel_modes.empty() ? 0.0 : 1.0;

    double qp = decomp.plus_modes.empty() ? 0.0 : 1.0;
    double qm = 0.0;
    for (int i : decomp.minus_modes) {
        const auto& blk = decomp.blocks[i];
        const double w = mode_weight(decomp, basis, i);
        qp = std::max(qp, weighted_opnorm2(blk.proj_plus, w));
        qm = std::max(qm, weighted_opnorm2(blk.proj_minus, w));
    }
    out.cQ_plus = qp;
    out.cQ_minus = qm;
    return out;
}

}  // namespace sdwave
