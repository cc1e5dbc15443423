#include "sdwave/resonance.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sdwave/semiflow.hpp"

namespace sdwave {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::G1: return "G1";
        case Verdict::G2: return "G2";
        case Verdict::LL1: return "LL1";
        case Verdict::LL2: return "LL2";
        case Verdict::SR1: return "SR1";
        case Verdict::SR2: return "SR2";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Unit-sphere samples in the kernel coefficient space. The 1-D kernel
/// degenerates to {+e1, -e1}; the generic sampler stays for
/// multiplicity-ready code paths.
static std::vector<Eigen::VectorXd> kernel_sphere(int dim, int n_sphere,
                                                  std::mt19937_64& rng) {
    std::vector<Eigen::VectorXd> out;
    if (dim == 1) {
        out.push_back(Eigen::VectorXd::Constant(1, 1.0));
        out.push_back(Eigen::VectorXd::Constant(1, -1.0));
        return out;
    }
    std::normal_distribution<double> gauss;
    for (int s = 0; s < n_sphere; ++s) {
        Eigen::VectorXd v(dim);
        for (int j = 0; j < dim; ++j) v[j] = gauss(rng);
        out.push_back(v.normalized());
    }
    return out;
}

ConditionReport check_LL(const SpectralBasis& basis,
                         const ResonanceDecomposition& decomp,
                         const Nonlinearity& f, int n_sphere) {
    if (!f.f_plus || !f.f_minus)
        throw std::invalid_argument("check_LL requires the asymptotics f_+ and f_-");

    std::mt19937_64 rng(1234);
    const auto dirs = kernel_sphere(decomp.kernel_dim(), n_sphere, rng);

    ConditionReport rep;
    rep.samples_used = static_cast<int>(dirs.size());
    double min_I = std::numeric_limits<double>::infinity();
    double max_I = -min_I;
    double min_absI = std::numeric_limits<double>::infinity();
    for (const auto& dir : dirs) {
        Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(basis.n_modes());
        for (int j = 0; j < decomp.kernel_dim(); ++j)
            coeffs[decomp.kernel_modes[j]] = dir[j];
        const Eigen::VectorXd ubar = basis.synthesize(coeffs);
        double I = 0.0;
        for (int j = 0; j < ubar.size(); ++j) {
            const double x = basis.grid[j];
            if (ubar[j] > 0.0)
                I += basis.quad_weights[j] * (*f.f_plus)(x)*ubar[j];
            else if (ubar[j] < 0.0)
                I += basis.quad_weights[j] * (*f.f_minus)(x)*ubar[j];
        }
        if (std::abs(I) < min_absI) {
            min_absI = std::abs(I);
            rep.worst_case.assign(dir.data(), dir.data() + dir.size());
        }
        min_I = std::min(min_I, I);
        max_I = std::max(max_I, I);
    }
    rep.margin = min_absI;
    if (min_I > 0.0)
        rep.verdict = Verdict::LL1;
    else if (max_I < 0.0)
        rep.verdict = Verdict::LL2;
    else {
        rep.verdict = Verdict::Inconclusive;
        rep.margin = 0.0;
    }
    rep.rho = rep.margin;
    return rep;
}

ConditionReport check_SR(const SpectralBasis& basis, const Nonlinearity& f) {
    if (!f.f_inf)
        throw std::invalid_argument("check_SR requires the asymptotic limit f_inf");

    ConditionReport rep;
    const double integral = basis.integrate(*f.f_inf);

    // One-sided bound of f(x,s) s on a log-spaced s grid.
    double minorant = std::numeric_limits<double>::infinity();
    double majorant = -minorant;
    int used = 0;
    for (int j = 0; j < basis.grid.size(); j += std::max<long>(1, basis.grid.size() / 64)) {
        const double x = basis.grid[j];
        for (int p = 0; p < 40; ++p) {
            const double s = std::pow(10.0, -3.0 + 9.0 * p / 39.0);
            for (double sv : {s, -s}) {
                const double v = f.f(x, sv) * sv;
                minorant = std::min(minorant, v);
                majorant = std::max(majorant, v);
                ++used;
            }
        }
    }
    rep.samples_used = used;
    rep.margin = std::abs(integral);
    rep.rho = rep.margin;
    rep.worst_case = {minorant, majorant};
    if (integral > 0.0 && std::isfinite(minorant))
        rep.verdict = Verdict::SR1;
    else if (integral < 0.0 && std::isfinite(majorant))
        rep.verdict = Verdict::SR2;
    else {
        rep.verdict = Verdict::Inconclusive;
        rep.margin = 0.0;
        rep.rho = 0.0;
    }
    rep.detail = "integral f_inf = " + std::to_string(integral);
    return rep;
}

std::vector<double> default_R_grid() {
    std::vector<double> grid;
    for (int j = 0; j < 16; ++j) grid.push_back(std::pow(10.0, 3.0 * j / 15.0));
    return grid;
}

/// Gaussian direction scaled to a uniform draw from a weighted-norm ball.
static Eigen::VectorXd ball_sample(int dim, const Eigen::VectorXd& weights,
                                   double radius, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v[j] = gauss(rng);
    double nrm = 0.0;
    for (int j = 0; j < dim; ++j) nrm += weights[j] * weights[j] * v[j] * v[j];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return Eigen::VectorXd::Zero(dim);
    const double r = radius * std::pow(unif(rng), 1.0 / dim);
    return v * (r / nrm);
}

ConditionReport check_G(const SpectralBasis& basis,
                        const ResonanceDecomposition& decomp,
                        const Nonlinearity& f, const GCheckOptions& opts) {
    if (decomp.kernel_dim() == 0) throw std::invalid_argument("empty kernel");
    std::vector<double> R_grid = opts.R_grid.empty() ? default_R_grid() : opts.R_grid;
    if (R_grid.empty()) throw std::invalid_argument("empty R grid");

    const int n = basis.n_modes();
    const int nk = decomp.kernel_dim();
    const int nq = n - nk;
    std::mt19937_64 rng(opts.seed);

    // Sample triples (y, z, xhat) once; reuse them across the R grid.
    Eigen::VectorXd qweights(std::max(nq, 1));
    std::vector<int> qmodes;
    for (int i = 0; i < n; ++i)
        if (!decomp.is_kernel(i)) {
            qweights[qmodes.size()] = std::pow(basis.eigenvalues[i], decomp.alpha);
            qmodes.push_back(i);
        }
    const Eigen::VectorXd kweights = Eigen::VectorXd::Ones(nk);

    struct Triple {
        Eigen::VectorXd y, z, xhat;
    };
    std::vector<Triple> triples;
    std::normal_distribution<double> gauss;
    for (int t = 0; t < opts.n_samples; ++t) {
        Triple tr;
        tr.y = nq > 0 ? ball_sample(nq, qweights, opts.B1_radius, rng)
                      : Eigen::VectorXd();
        tr.z = ball_sample(nk, kweights, opts.B2_radius, rng);
        if (nk == 1) {
            tr.xhat = Eigen::VectorXd::Constant(1, t % 2 == 0 ? 1.0 : -1.0);
        } else {
            tr.xhat.resize(nk);
            for (int j = 0; j < nk; ++j) tr.xhat[j] = gauss(rng);
            tr.xhat.normalize();
        }
        triples.push_back(std::move(tr));
    }

    // min/max of D over samples, per grid radius.
    std::vector<double> min_D(R_grid.size()), max_D(R_grid.size());
    std::vector<std::vector<double>> worst(R_grid.size());
    for (size_t r = 0; r < R_grid.size(); ++r) {
        min_D[r] = std::numeric_limits<double>::infinity();
        max_D[r] = -min_D[r];
        for (const auto& tr : triples) {
            Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(n);
            for (int j = 0; j < nq; ++j) coeffs[qmodes[j]] = tr.y[j];
            Eigen::VectorXd xk = Eigen::VectorXd::Zero(n), zk = Eigen::VectorXd::Zero(n);
            for (int j = 0; j < nk; ++j) {
                coeffs[decomp.kernel_modes[j]] += R_grid[r] * tr.xhat[j];
                xk[decomp.kernel_modes[j]] = R_grid[r] * tr.xhat[j];
                zk[decomp.kernel_modes[j]] = tr.z[j];
            }
            const Eigen::VectorXd F = nemitskii(basis, f, coeffs);
            const double D = F.dot(xk) + F.dot(zk);
            if (D < min_D[r]) {
                worst[r].assign(tr.xhat.data(), tr.xhat.data() + nk);
                for (int j = 0; j < nk; ++j) worst[r].push_back(tr.z[j]);
            }
            min_D[r] = std::min(min_D[r], D);
            max_D[r] = std::max(max_D[r], D);
        }
    }

    ConditionReport rep;
    rep.samples_used = opts.n_samples * static_cast<int>(R_grid.size());
    rep.seed = opts.seed;

    // Certify at the smallest grid radius whose whole tail keeps the sign.
    for (size_t r = 0; r < R_grid.size(); ++r) {
        bool tail_pos = true, tail_neg = true;
        double tail_min = std::numeric_limits<double>::infinity();
        double tail_max = -tail_min;
        for (size_t q = r; q < R_grid.size(); ++q) {
            tail_pos = tail_pos && min_D[q] > 0.0;
            tail_neg = tail_neg && max_D[q] < 0.0;
            tail_min = std::min(tail_min, min_D[q]);
            tail_max = std::max(tail_max, max_D[q]);
        }
        if (tail_pos) {
            rep.verdict = Verdict::G1;
            rep.R3 = R_grid[r];
            rep.margin = tail_min;
            rep.rho = 0.9 * tail_min;
            rep.worst_case = worst[r];
            return rep;
        }
        if (tail_neg) {
            rep.verdict = Verdict::G2;
            rep.R3 = R_grid[r];
            rep.margin = -tail_max;
            rep.rho = 0.9 * rep.margin;
            rep.worst_case = worst[r];
            return rep;
        }
    }
    rep.verdict = Verdict::Inconclusive;
    return rep;
}

}  // namespace sdwave
