#include "sdwave/elliptic.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdwave {

double SpectralBasis::integrate(const std::function<double(double)>& fn) const {
    const double h = spacing();
    double acc = 0.5 * (fn(0.0) + fn(length));
    for (int j = 0; j < grid.size(); ++j) acc += fn(grid[j]);
    return acc * h;
}

SpectralBasis build_basis(const EllipticOperator1D& op, int n_modes) {
    if (op.n_grid < 16) throw std::invalid_argument("n_grid must be >= 16");
    if (n_modes < 1 || n_modes > op.n_grid - 2)
        throw std::invalid_argument("n_modes must be in [1, n_grid - 2]");
    if (op.length <= 0.0) throw std::invalid_argument("interval length must be positive");

    const int m = op.n_grid - 2;  // interior points
    const double h = op.length / (op.n_grid - 1);

    // Coefficient at half-nodes; ellipticity is checked on the same samples.
    Eigen::VectorXd a_half(m + 1);
    for (int j = 0; j <= m; ++j) {
        const double xh = (j + 0.5) * h;
        a_half[j] = op.coefficient(xh);
        if (a_half[j] < op.c0)
            throw std::domain_error("ellipticity violation: a(" + std::to_string(xh) +
                                    ") = " + std::to_string(a_half[j]) + " < c0");
    }

    // Symmetric tridiagonal discretization of -(a u')' with Dirichlet BCs.
    std::vector<double> diag(m), offd(m - 1);
    for (int j = 0; j < m; ++j) diag[j] = (a_half[j] + a_half[j + 1]) / (h * h);
    for (int j = 0; j + 1 < m; ++j) offd[j] = -a_half[j + 1] / (h * h);

    std::vector<double> w(m), z(static_cast<size_t>(m) * n_modes);
    std::vector<lapack_int> isuppz(2 * static_cast<size_t>(n_modes));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'V', 'I', m, diag.data(), offd.data(), 0.0, 0.0, 1,
        n_modes, 0.0, &found, w.data(), z.data(), m, isuppz.data());
    if (info != 0 || found < n_modes)
        throw std::runtime_error("tridiagonal eigensolver failed (dstevr info=" +
                                 std::to_string(info) + ")");

    SpectralBasis basis;
    basis.length = op.length;
    basis.n_grid = op.n_grid;
    basis.grid.resize(m);
    for (int j = 0; j < m; ++j) basis.grid[j] = (j + 1) * h;
    basis.quad_weights = Eigen::VectorXd::Constant(m, h);
    basis.eigenvalues = Eigen::Map<Eigen::VectorXd>(w.data(), n_modes);
    basis.eigenvectors = Eigen::Map<Eigen::MatrixXd>(z.data(), m, n_modes);

    // Rescale Euclidean-orthonormal vectors to quadrature-orthonormal ones
    // and fix the sign at the largest-magnitude entry.
    basis.eigenvectors /= std::sqrt(h);
    for (int i = 0; i < n_modes; ++i) {
        int jmax = 0;
        basis.eigenvectors.col(i).cwiseAbs().maxCoeff(&jmax);
        if (basis.eigenvectors(jmax, i) < 0.0) basis.eigenvectors.col(i) *= -1.0;
    }

    for (int i = 0; i + 1 < n_modes; ++i)
        if (basis.eigenvalues[i] >= basis.eigenvalues[i + 1])
            throw std::runtime_error("eigenvalues not strictly increasing");
    if (basis.eigenvalues[0] <= 0.0)
        throw std::runtime_error("non-positive leading eigenvalue");
    return basis;
}

double fractional_norm(const Eigen::VectorXd& coeffs, double alpha,
                       const SpectralBasis& basis) {
    double acc = 0.0;
    for (int i = 0; i < coeffs.size(); ++i)
        acc += std::pow(basis.eigenvalues[i], 2.0 * alpha) * coeffs[i] * coeffs[i];
    return std::sqrt(acc);
}

}  // namespace sdwave
