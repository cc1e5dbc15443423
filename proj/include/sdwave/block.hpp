#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdwave/decomposition.hpp"
#include "sdwave/nonlinearity.hpp"
#include "sdwave/resonance.hpp"
#include "sdwave/semiflow.hpp"
#include "sdwave/state.hpp"

namespace sdwave {

/// Radii and constants of the isolating box N = N1 + N2: N1 is the E-ball
/// of radius R1 + 1 over the hyperbolic modes, N2 the W-chart box
/// {|w1| <= R4, |w2| <= R2} on the kernel.
struct IsolatingBlock {
    double R1 = 0.0, R2 = 0.0, R3 = 0.0, R4 = 0.0;
    double a = 0.0;        // ((c lambda)^2 + 1)^{-1/2}
    double m0 = 0.0;       // bound on the deformed field, 2 m sqrt(ell)
    double m1 = 0.0;       // bound on ||PF||_H, m sqrt(ell)
    double rho = 0.0;
    Verdict which = Verdict::G1;    // G1 or G2
    double b1_extra = 1.0;          // additive slack of the B1 ball radius
    ConditionReport g_report;       // the re-run certification at the block balls
};

struct DeriveOptions {
    std::vector<double> R_grid;     // empty -> default grid
    int n_samples = 200;
    std::uint64_t seed = 20240817;
    double b1_extra = 1.0;
};

IsolatingBlock derive_radii(const ResonanceDecomposition& decomp,
                            const DecayConstants& decay, const Nonlinearity& f,
                            const ConditionReport& g_report,
                            const SpectralBasis& basis,
                            const DeriveOptions& opts = {});

enum class BoundaryClass { Interior, Egress, Ingress, Bounce, Exterior };

std::string to_string(BoundaryClass b);

BoundaryClass classify_boundary(const IsolatingBlock& block,
                                const ResonanceDecomposition& decomp,
                                const StateE& state, double rel_tol = 1e-9);

struct BlockVerification {
    int samples_per_stratum = 0;
    std::vector<double> s_values;
    int w1_sign_violations = 0;   // egress test d/dt |w1|^2 at |w1| = R4
    int w2_sign_violations = 0;   // ingress test d/dt |w2|^2 at |w2| = R2
    int flow_violations = 0;      // short integrations of the product flow
    double min_w1_margin = 0.0;   // worst |d/dt 0.5 |w1|^2| observed
    double min_w2_margin = 0.0;
    std::uint64_t seed = 0;
    bool valid() const {
        return w1_sign_violations + w2_sign_violations + flow_violations == 0;
    }
};

BlockVerification verify_block(const IsolatingBlock& block,
                               const ResonanceDecomposition& decomp,
                               const SpectralBasis& basis, const Nonlinearity& f,
                               int n_boundary_samples, double dt,
                               std::uint64_t seed,
                               const std::vector<double>& s_values = {0.0, 0.25,
                                                                      0.5, 0.75,
                                                                      1.0});

struct IndexReport {
    int exponent = 0;
    std::string formula;        // "Sigma^{d_k}" or "Sigma^{d_{k-1}}"
    Verdict condition_used = Verdict::G1;
    bool nonempty = true;       // nontrivial index => K_infty nonempty
    std::vector<int> d_table;
};

IndexReport conley_index(const ResonanceDecomposition& decomp, Verdict which);

struct OrbitRecord {
    int seed_index = 0;
    bool stayed = false;
    double exit_time = -1.0;
    double final_Enorm = 0.0;
    double max_Qnorm = 0.0;
};

struct OrbitCensus {
    std::vector<OrbitRecord> orbits;
    int n_stayers = 0;
    double max_stayer_Qnorm = 0.0;  // empirical bound, <= R1 expected
    double horizon = 0.0;
    std::uint64_t seed = 0;
};

OrbitCensus detect_bounded_orbits(const IsolatingBlock& block,
                                  const ResonanceDecomposition& decomp,
                                  const SpectralBasis& basis,
                                  const Nonlinearity& f, int n_initial, double T,
                                  double dt, std::uint64_t seed,
                                  double interior_fraction = 0.5);

struct EquilibriumRecord {
    Eigen::VectorXd x;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool in_block_interior = false;
    std::vector<std::complex<double>> linearization_spectrum;  // of the flow
    int unstable_dim = 0;
};

/// Damped Newton on the Galerkin stationary system
/// (mu_i - lambda) x_i - F_i(x) = 0.
EquilibriumRecord equilibrium_solve(const ResonanceDecomposition& decomp,
                                    const SpectralBasis& basis,
                                    const Nonlinearity& f,
                                    const Eigen::VectorXd& x0, double tol = 1e-10,
                                    const IsolatingBlock* block = nullptr,
                                    int max_iter = 80);

struct ConnectionReport {
    bool applicable = false;
    bool resonant_at_zero = false;
    int clause = 0;               // 1..4, or 0 when no clause matches
    std::string clause_name;      // "(i)".."(iv)" / "none" / "resonant at zero"
    Verdict condition = Verdict::Inconclusive;
    double lambda_plus_nu = 0.0;
    int spectral_slot = 0;        // l with mu_l < lambda+nu < mu_{l+1} (0 if below mu_1)
    int zero_index_exponent = 0;  // b_l of the index of {0}
    std::string conclusion;
};

ConnectionReport connecting_orbit_criteria(const ResonanceDecomposition& decomp,
                                           const Nonlinearity& f,
                                           Verdict condition_verdict,
                                           double tol = 1e-8);

struct ConnectionProbe {
    int launched = 0;
    int converged_to_nonzero = 0;
    double best_final_distance = 0.0;  // H-distance of the best terminal state from 0
};

/// Numerical evidence only: launch trajectories from an eps-sphere around 0
/// along the unstable eigenspace of the linearization and look for a
/// nonzero stayer.
ConnectionProbe connection_probe(const IsolatingBlock& block,
                                 const ResonanceDecomposition& decomp,
                                 const SpectralBasis& basis, const Nonlinearity& f,
                                 double eps, double T, double dt,
                                 std::uint64_t seed, int n_launch = 8);

}  // namespace sdwave
