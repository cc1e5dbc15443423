#include "sdwave/reports.hpp"

#include <cstdio>
#include <sstream>

namespace sdwave {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json to_json(const ConditionReport& r) {
    return {{"verdict", to_string(r.verdict)},
            {"margin", r.margin},
            {"R3", r.R3},
            {"rho", r.rho},
            {"samples_used", r.samples_used},
            {"seed", r.seed},
            {"worst_case", r.worst_case},
            {"detail", r.detail}};
}

nlohmann::json to_json(const IsolatingBlock& b) {
    return {{"R1", b.R1},
            {"R2", b.R2},
            {"R3", b.R3},
            {"R4", b.R4},
            {"a", b.a},
            {"m0", b.m0},
            {"m1", b.m1},
            {"rho", b.rho},
            {"which", to_string(b.which)},
            {"b1_extra", b.b1_extra},
            {"certification", to_json(b.g_report)}};
}

nlohmann::json to_json(const BlockVerification& v) {
    return {{"samples_per_stratum", v.samples_per_stratum},
            {"s_values", v.s_values},
            {"w1_sign_violations", v.w1_sign_violations},
            {"w2_sign_violations", v.w2_sign_violations},
            {"flow_violations", v.flow_violations},
            {"min_w1_margin", v.min_w1_margin},
            {"min_w2_margin", v.min_w2_margin},
            {"seed", v.seed},
            {"valid", v.valid()}};
}

nlohmann::json to_json(const IndexReport& r) {
    return {{"exponent", r.exponent},
            {"formula", r.formula},
            {"condition_used", to_string(r.condition_used)},
            {"nonempty", r.nonempty},
            {"d_table", r.d_table}};
}

nlohmann::json to_json(const EquilibriumRecord& r) {
    nlohmann::json spectrum = nlohmann::json::array();
    for (const auto& z : r.linearization_spectrum)
        spectrum.push_back({{"re", z.real()}, {"im", z.imag()}});
    return {{"x", std::vector<double>(r.x.data(), r.x.data() + r.x.size())},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"in_block_interior", r.in_block_interior},
            {"linearization_spectrum", spectrum},
            {"unstable_dim", r.unstable_dim}};
}

nlohmann::json to_json(const ConnectionReport& r) {
    return {{"applicable", r.applicable},
            {"resonant_at_zero", r.resonant_at_zero},
            {"clause", r.clause},
            {"clause_name", r.clause_name},
            {"condition", to_string(r.condition)},
            {"lambda_plus_nu", r.lambda_plus_nu},
            {"spectral_slot", r.spectral_slot},
            {"zero_index_exponent", r.zero_index_exponent},
            {"conclusion", r.conclusion}};
}

nlohmann::json to_json(const DivergenceReport& r) {
    return {{"slope", r.slope},
            {"expected_slope", r.expected_slope},
            {"relative_error", r.relative_error},
            {"times", r.times},
            {"functional", r.functional}};
}

std::string trajectory_csv(const Trajectory& traj,
                           const ResonanceDecomposition& decomp,
                           const SpectralBasis& basis,
                           const Eigen::VectorXd* y0_kernel) {
    std::ostringstream out;
    out << "t,Enorm,Qnorm,w1_norm,w2_norm,phi_functional\n";
    const double cl = decomp.c * decomp.lambda;
    for (size_t k = 0; k < traj.states.size(); ++k) {
        const StateE& w = traj.states[k];
        const KernelCoords wc = kernel_coordinates(decomp, w);
        double phi = 0.0;
        if (y0_kernel) {
            for (int j = 0; j < decomp.kernel_dim(); ++j) {
                const int i = decomp.kernel_modes[j];
                phi += (cl * w.x[i] + w.y[i]) * (*y0_kernel)[j];
            }
        }
        out << format_double(traj.times[k]) << ','
            << format_double(enorm(w, basis, decomp.alpha)) << ','
            << format_double(qnorm(w, decomp, basis)) << ','
            << format_double(wc.w1.norm()) << ',' << format_double(wc.w2.norm())
            << ',' << format_double(phi) << '\n';
    }
    return out.str();
}

std::string census_csv(const OrbitCensus& census) {
    std::ostringstream out;
    out << "seed_index,stayed,exit_time,final_Enorm\n";
    for (const auto& rec : census.orbits)
        out << rec.seed_index << ',' << (rec.stayed ? 1 : 0) << ','
            << format_double(rec.exit_time) << ','
            << format_double(rec.final_Enorm) << '\n';
    return out.str();
}

std::string basis_csv(const SpectralBasis& basis) {
    std::ostringstream out;
    out << "i,mu_i";
    for (int j = 0; j < basis.grid.size(); ++j)
        out << ",x" << j;
    out << '\n';
    for (int i = 0; i < basis.n_modes(); ++i) {
        out << (i + 1) << ',' << format_double(basis.eigenvalues[i]);
        for (int j = 0; j < basis.grid.size(); ++j)
            out << ',' << format_double(basis.eigenvectors(j, i));
        out << '\n';
    }
    return out.str();
}

}  // namespace sdwave
