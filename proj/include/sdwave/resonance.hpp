#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sdwave/decomposition.hpp"
#include "sdwave/nonlinearity.hpp"

namespace sdwave {

enum class Verdict { G1, G2, LL1, LL2, SR1, SR2, Inconclusive };

std::string to_string(Verdict v);

struct ConditionReport {
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0.0;     // minimal observed slack
    double R3 = 0.0;         // radius at which the inequality is certified
    double rho = 0.0;
    int samples_used = 0;
    std::uint64_t seed = 0;
    std::vector<double> worst_case;  // coordinates of the minimizing sample
    std::string detail;
};

/// Landesman-Lazer sign test on kernel-weighted integrals of f_+/f_-.
ConditionReport check_LL(const SpectralBasis& basis,
                         const ResonanceDecomposition& decomp,
                         const Nonlinearity& f, int n_sphere = 32);

/// Strong-resonance test: sign of \int f_inf plus grid-boundedness of the
/// one-sided minorant of f(x,s) s.
ConditionReport check_SR(const SpectralBasis& basis, const Nonlinearity& f);

struct GCheckOptions {
    double B1_radius = 1.0;          // alpha-norm ball over non-kernel modes
    double B2_radius = 1.0;          // H-norm ball over kernel modes
    std::vector<double> R_grid;      // empty -> geometric default [1, 1e3], 16 points
    int n_samples = 200;
    std::uint64_t seed = 20240817;
};

std::vector<double> default_R_grid();

/// Monte-Carlo certification of the geometric conditions (G1)/(G2) on the
/// sampled balls, with a 0.9 safety factor on rho.
ConditionReport check_G(const SpectralBasis& basis,
                        const ResonanceDecomposition& decomp,
                        const Nonlinearity& f, const GCheckOptions& opts);

}  // namespace sdwave
