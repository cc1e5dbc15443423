#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sdwave/decomposition.hpp"
#include "sdwave/nonlinearity.hpp"
#include "sdwave/state.hpp"

namespace sdwave {

/// Nemitskii operator in eigencoordinates: reconstruct u on the grid, apply
/// f pointwise, project back.
Eigen::VectorXd nemitskii(const SpectralBasis& basis, const Nonlinearity& f,
                          const Eigen::VectorXd& x);

/// Deformed field G(s, x) = PF(sQx + Px) + s QF(sQx + Px).
Eigen::VectorXd homotopy_field(const ResonanceDecomposition& decomp,
                               const SpectralBasis& basis,
                               const Nonlinearity& f, double s,
                               const Eigen::VectorXd& x);

/// Forcing term in mode coefficients as a function of the position coefficients.
using FieldFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct Trajectory {
    std::vector<double> times;
    std::vector<StateE> states;
    double s = 1.0;
};

/// Exponential integrator for  d/dt (x_i, y_i) = -B_i (x_i, y_i) + (0, g_i(x)).
/// Each mode pair advances by the exact block exponential; the forcing is
/// held at a midpoint predictor (second order).
class Integrator {
public:
    Integrator(const ResonanceDecomposition& decomp, FieldFn field, double dt);

    StateE step(const StateE& w) const;
    Trajectory integrate(const StateE& w0, double T, int sample_stride = 1) const;

    double dt() const { return dt_; }
    double s_label = 1.0;  // recorded into produced trajectories

private:
    const ResonanceDecomposition& decomp_;
    FieldFn field_;
    double dt_;
    std::vector<Eigen::Matrix2d> exp_full_, phi_full_;  // per mode
    std::vector<Eigen::Matrix2d> exp_half_, phi_half_;
};

/// Integrator for the homotopy family Psi^s (s = 1 is the semiflow of the
/// full equation).
Integrator make_homotopy_integrator(const ResonanceDecomposition& decomp,
                                    const SpectralBasis& basis,
                                    const Nonlinearity& f, double s, double dt);

struct DivergenceReport {
    double slope = 0.0;            // least-squares slope of the growth functional
    double expected_slope = 0.0;   // ||y0||_H^2
    double relative_error = 0.0;
    std::vector<double> times;
    std::vector<double> functional;  // <u0, c lambda y0>_H + <v0, y0>_H
};

/// Remark-style probe for the constant field F = y0 on the kernel: the
/// growth functional is linear in t with slope ||y0||_H^2, so no bounded
/// orbit exists. y0_kernel holds the kernel-mode coefficients of y0.
DivergenceReport divergence_probe(const ResonanceDecomposition& decomp,
                                  const SpectralBasis& basis,
                                  const Eigen::VectorXd& y0_kernel,
                                  const StateE& state0, double T, double dt);

}  // namespace sdwave
