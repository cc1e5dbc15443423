#pragma once

#include <Eigen/Dense>

#include "sdwave/decomposition.hpp"
#include "sdwave/elliptic.hpp"

namespace sdwave {

/// A point (x, y) of the phase space E in eigencoordinates: x holds the
/// position coefficients, y the velocity coefficients.
struct StateE {
    Eigen::VectorXd x;
    Eigen::VectorXd y;

    static StateE zero(int n_modes) {
        return {Eigen::VectorXd::Zero(n_modes), Eigen::VectorXd::Zero(n_modes)};
    }
};

/// ||(x,y)||_E = ||x||_alpha + ||y||_{L2}
double enorm(const StateE& w, const SpectralBasis& basis, double alpha);

/// E-norm of the non-kernel part (Qx, Qy).
double qnorm(const StateE& w, const ResonanceDecomposition& decomp,
             const SpectralBasis& basis);

/// Linear chart on E0: w1_i = a (c lambda x0_i + y0_i), w2_i = y0_i.
struct KernelCoords {
    Eigen::VectorXd w1;
    Eigen::VectorXd w2;
};

KernelCoords kernel_coordinates(const ResonanceDecomposition& decomp,
                                const StateE& w);

/// Inverse chart: kernel-mode coefficients of the state W^{-1}(w1, w2),
/// zero on all non-kernel modes.
StateE kernel_state(const ResonanceDecomposition& decomp,
                    const KernelCoords& wc, int n_modes);

}  // namespace sdwave
