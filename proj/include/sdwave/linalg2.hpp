#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace sdwave {

/// Eigenvalues of a real 2x2 matrix by the quadratic formula.
inline std::pair<std::complex<double>, std::complex<double>>
eig2(const Eigen::Matrix2d& m) {
    const double tr = m.trace();
    const double det = m.determinant();
    const std::complex<double> disc =
        std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

/// exp(A) for a real 2x2 matrix, closed form via the shifted matrix A - tau I.
inline Eigen::Matrix2d expm2(const Eigen::Matrix2d& a) {
    const double tau = 0.5 * a.trace();
    const double disc = tau * tau - a.determinant();
    double ch, sh;  // cosh(q), sinh(q)/q continued through q^2 = disc
    if (disc > 1e-12) {
        const double q = std::sqrt(disc);
        ch = std::cosh(q);
        sh = std::sinh(q) / q;
    } else if (disc < -1e-12) {
        const double q = std::sqrt(-disc);
        ch = std::cos(q);
        sh = std::sin(q) / q;
    } else {
        ch = 1.0 + 0.5 * disc;
        sh = 1.0 + disc / 6.0;
    }
    return std::exp(tau) *
           (ch * Eigen::Matrix2d::Identity() + sh * (a - tau * Eigen::Matrix2d::Identity()));
}

/// Integral of exp(-B s) over [0, h]. Requires det B != 0 or B upper
/// triangular with B(0,0) = B(1,0) = 0 (the center block).
Eigen::Matrix2d phi2(const Eigen::Matrix2d& b, double h);

/// Operator norm of a 2x2 matrix with respect to the weighted norm
/// |x| * w + |y| (weighted l1; the per-mode restriction of the E-norm).
inline double weighted_opnorm2(const Eigen::Matrix2d& m, double w) {
    const double col0 = (w * std::abs(m(0, 0)) + std::abs(m(1, 0))) / w;
    const double col1 = w * std::abs(m(0, 1)) + std::abs(m(1, 1));
    return std::max(col0, col1);
}

}  // namespace sdwave
