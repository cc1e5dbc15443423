#pragma once

#include <Eigen/Dense>
#include <functional>

namespace sdwave {

/// Symmetric second-order operator -(a u')' on (0, ell) with Dirichlet
/// boundary conditions, a(x) >= c0 > 0.
struct EllipticOperator1D {
    double length = 1.0;
    std::function<double(double)> coefficient = [](double) { return 1.0; };
    int n_grid = 2000;
    double c0 = 1e-8;  // ellipticity floor checked on the grid
};

/// Lowest eigenpairs of the finite-difference discretization, orthonormal
/// in the discrete L2(0, ell) inner product.
class SpectralBasis {
public:
    double length = 0.0;
    int n_grid = 0;                 // total grid points, endpoints included
    Eigen::VectorXd grid;           // interior nodes x_1 .. x_{n_grid-2}
    Eigen::VectorXd quad_weights;   // weight h per interior node
    Eigen::VectorXd eigenvalues;    // mu_1 < mu_2 < ..., ascending
    Eigen::MatrixXd eigenvectors;   // column i = e_{i+1} on the interior grid

    int n_modes() const { return static_cast<int>(eigenvalues.size()); }
    double spacing() const { return length / (n_grid - 1); }

    /// Discrete L2 inner product of two interior grid functions.
    double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
        return (quad_weights.array() * f.array() * g.array()).sum();
    }

    /// Synthesize a grid function from mode coefficients.
    Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) const {
        return eigenvectors.leftCols(coeffs.size()) * coeffs;
    }

    /// Project a grid function onto the retained modes.
    Eigen::VectorXd project(const Eigen::VectorXd& grid_fn) const {
        return eigenvectors.transpose() * (quad_weights.asDiagonal() * grid_fn);
    }

    /// Trapezoid rule over the full closed interval, endpoints included.
    double integrate(const std::function<double(double)>& fn) const;
};

SpectralBasis build_basis(const EllipticOperator1D& op, int n_modes);

/// Graph norm of the fractional power: (sum_i mu_i^{2 alpha} x_i^2)^{1/2}.
double fractional_norm(const Eigen::VectorXd& coeffs, double alpha,
                       const SpectralBasis& basis);

}  // namespace sdwave
