#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sdwave/decomposition.hpp"
#include "sdwave/elliptic.hpp"
#include "sdwave/nonlinearity.hpp"
#include "sdwave/semiflow.hpp"
#include "sdwave/state.hpp"

namespace testsup {

/// Basis for a = 1 on (0, 1), the configuration used throughout the suite.
inline sdwave::SpectralBasis unit_basis(int n_modes = 8, int n_grid = 2000) {
    sdwave::EllipticOperator1D op;
    op.length = 1.0;
    op.n_grid = n_grid;
    return sdwave::build_basis(op, n_modes);
}

inline sdwave::ResonanceDecomposition unit_decomp(const sdwave::SpectralBasis& b,
                                                  int k = 1, double c = 1.0) {
    return sdwave::decompose(b, b.eigenvalues[k - 1], c);
}

/// Dense matrix exponential by scaling-and-squaring with a Taylor series;
/// an oracle independent of the closed-form 2x2 formula in the library.
inline Eigen::MatrixXd expm_dense(const Eigen::MatrixXd& a) {
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (nrm / std::pow(2.0, squarings) > 0.5) ++squarings;
    const Eigen::MatrixXd b = a / std::pow(2.0, squarings);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = (term * b) / k;
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Classical RK4 on the full Galerkin system
///   x' = y,  y'_i = (lambda - mu_i) x_i - c mu_i y_i + g_i(x),
/// a reference integrator independent of the exponential scheme.
inline sdwave::StateE rk4_reference(const sdwave::ResonanceDecomposition& d,
                                    const sdwave::SpectralBasis& basis,
                                    const sdwave::FieldFn& g,
                                    const sdwave::StateE& w0, double T,
                                    double dt) {
    const int n = d.n_modes();
    const auto deriv = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           Eigen::VectorXd& dx, Eigen::VectorXd& dy) {
        dx = y;
        dy = g(x);
        for (int i = 0; i < n; ++i)
            dy[i] += (d.lambda - basis.eigenvalues[i]) * x[i] -
                     d.c * basis.eigenvalues[i] * y[i];
    };
    const auto steps = static_cast<long>(std::ceil(T / dt - 1e-12));
    const double h = T / steps;
    Eigen::VectorXd x = w0.x, y = w0.y;
    Eigen::VectorXd k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
    for (long s = 0; s < steps; ++s) {
        deriv(x, y, k1x, k1y);
        deriv(x + 0.5 * h * k1x, y + 0.5 * h * k1y, k2x, k2y);
        deriv(x + 0.5 * h * k2x, y + 0.5 * h * k2y, k3x, k3y);
        deriv(x + h * k3x, y + h * k3y, k4x, k4y);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    }
    return {x, y};
}

inline double state_dist(const sdwave::StateE& a, const sdwave::StateE& b) {
    return (a.x - b.x).norm() + (a.y - b.y).norm();
}

}  // namespace testsup
