#pragma once

#include <functional>
#include <optional>
#include <string>

#include "sdwave/elliptic.hpp"

namespace sdwave {

/// Pointwise nonlinearity f(x, s) with the constants of the growth and
/// asymptotics assumptions attached.
struct Nonlinearity {
    std::string name;
    std::function<double(double, double)> f;    // (x, s) -> f(x, s)
    double lipschitz = 1.0;                      // L
    double bound = 1.0;                          // m, |f| <= m
    std::optional<std::function<double(double)>> f_plus;   // lim_{s->+inf} f(x,s)
    std::optional<std::function<double(double)>> f_minus;  // lim_{s->-inf} f(x,s)
    std::optional<std::function<double(double)>> f_inf;    // lim f(x,s) * s
    std::optional<double> nu;                    // D_s f(x, 0), constant in x
};

namespace builtins {

Nonlinearity arctan();
Nonlinearity neg_arctan();
Nonlinearity rational_sr();      // s / (1 + s^2)
Nonlinearity neg_rational_sr();
Nonlinearity zero();

/// Constant field F = y0 with y0 = amplitude * e_{mode+1}; the value is a
/// linear interpolant of the discrete eigenfunction.
Nonlinearity const_kernel(const SpectralBasis& basis, int mode,
                          double amplitude);

/// Lookup by name; throws std::invalid_argument for unknown names.
Nonlinearity by_name(const std::string& name, const SpectralBasis& basis,
                     int kernel_mode, double amplitude);

}  // namespace builtins
}  // namespace sdwave
