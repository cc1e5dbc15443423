#include "sdwave/state.hpp"

#include <cmath>
#include <stdexcept>

namespace sdwave {

double enorm(const StateE& w, const SpectralBasis& basis, double alpha) {
    return fractional_norm(w.x, alpha, basis) + w.y.norm();
}

double qnorm(const StateE& w, const ResonanceDecomposition& decomp,
             const SpectralBasis& basis) {
    double xa = 0.0, y2 = 0.0;
    for (int i = 0; i < w.x.size(); ++i) {
        if (decomp.is_kernel(i)) continue;
        xa += std::pow(basis.eigenvalues[i], 2.0 * decomp.alpha) * w.x[i] * w.x[i];
        y2 += w.y[i] * w.y[i];
    }
    return std::sqrt(xa) + std::sqrt(y2);
}

KernelCoords kernel_coordinates(const ResonanceDecomposition& decomp,
                                const StateE& w) {
    const int n = decomp.kernel_dim();
    const double a = decomp.a_constant();
    const double cl = decomp.c * decomp.lambda;
    KernelCoords out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (int j = 0; j < n; ++j) {
        const int i = decomp.kernel_modes[j];
        out.w1[j] = a * (cl * w.x[i] + w.y[i]);
        out.w2[j] = w.y[i];
    }
    return out;
}

StateE kernel_state(const ResonanceDecomposition& decomp,
                    const KernelCoords& wc, int n_modes) {
    if (wc.w1.size() != decomp.kernel_dim())
        throw std::invalid_argument("kernel coordinate dimension mismatch");
    const double a = decomp.a_constant();
    const double cl = decomp.c * decomp.lambda;
    StateE w = StateE::zero(n_modes);
    for (int j = 0; j < decomp.kernel_dim(); ++j) {
        const int i = decomp.kernel_modes[j];
        w.y[i] = wc.w2[j];
        w.x[i] = (wc.w1[j] / a - wc.w2[j]) / cl;
    }
    return w;
}

}  // namespace sdwave
