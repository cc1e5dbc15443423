#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sdwave/elliptic.hpp"

namespace sdwave {

enum class ModeClass { Kernel, Minus, Plus };

/// One 2x2 block of the phase-space operator in eigencoordinates:
///   B = [[0, -1], [mu - lambda, c mu]],  flow  d/dt (x_i, y_i) = -B (x_i, y_i).
struct ModeBlock {
    int mode = 0;                   // 0-based mode index
    double mu = 0.0;
    Eigen::Matrix2d B;
    ModeClass cls = ModeClass::Plus;
    std::complex<double> xi_minus;  // eigenvalue with smaller real part
    std::complex<double> xi_plus;
    bool real_eigenvalues = true;

    // For real hyperbolic splittings: right eigenvector of xi is (1, -xi).
    // proj_plus/proj_minus are the spectral projectors of B (identity / zero
    // when the whole block belongs to one subspace).
    Eigen::Matrix2d proj_plus = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d proj_minus = Eigen::Matrix2d::Zero();
};

/// Partition of the Galerkin modes around the resonant eigenvalue
/// lambda = mu_k, with the per-mode blocks of the phase-space operator.
struct ResonanceDecomposition {
    double lambda = 0.0;   // snapped exactly to mu_k
    int k = 0;             // 1-based resonant index
    double c = 1.0;        // damping factor
    double alpha = 0.5;    // fractional exponent of the E-norm

    std::vector<int> kernel_modes;  // 0-based indices with mu_i = lambda
    std::vector<int> minus_modes;
    std::vector<int> plus_modes;
    std::vector<int> d;             // d[l] = sum_{i<=l} dim ker(mu_i I - A), d[0] = 0
    std::vector<ModeBlock> blocks;  // one per retained mode, in mode order

    int n_modes() const { return static_cast<int>(blocks.size()); }
    int kernel_dim() const { return static_cast<int>(kernel_modes.size()); }
    int dim_E_minus() const { return static_cast<int>(minus_modes.size()); }
    double a_constant() const {  // ((c lambda)^2 + 1)^{-1/2}
        return 1.0 / std::sqrt(c * lambda * c * lambda + 1.0);
    }
    bool is_kernel(int mode) const {
        return blocks[mode].cls == ModeClass::Kernel;
    }
};

struct DecayConstants {
    double M = 1.0;
    double delta = 0.0;
};

struct ProjectionNorms {
    double P = 1.0, Q_plus = 1.0, Q_minus = 1.0;      // X-level, L2 operator norms
    double cP = 1.0, cQ_plus = 1.0, cQ_minus = 0.0;   // E-level counterparts
};

ResonanceDecomposition decompose(const SpectralBasis& basis, double lambda,
                                 double c, double tol = 1e-8,
                                 double alpha = 0.5);

/// The block of the phase-space operator on the kernel: [[0, -1], [0, c lambda]].
Eigen::Matrix2d center_block(const ResonanceDecomposition& decomp);

DecayConstants decay_constants(const ResonanceDecomposition& decomp,
                               const SpectralBasis& basis);

ProjectionNorms projection_norms(const ResonanceDecomposition& decomp,
                                 const SpectralBasis& basis);

}  // namespace sdwave
