#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "sdwave/block.hpp"
#include "sdwave/resonance.hpp"
#include "sdwave/semiflow.hpp"

namespace sdwave {

std::string format_double(double v);  // locale-independent, 17 significant digits

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const IsolatingBlock& b);
nlohmann::json to_json(const BlockVerification& v);
nlohmann::json to_json(const IndexReport& r);
nlohmann::json to_json(const EquilibriumRecord& r);
nlohmann::json to_json(const ConnectionReport& r);
nlohmann::json to_json(const DivergenceReport& r);

/// Trajectory CSV: t,Enorm,Qnorm,w1_norm,w2_norm,phi_functional. The
/// functional column needs the kernel element y0; it is written as 0 when
/// y0 is absent.
std::string trajectory_csv(const Trajectory& traj,
                           const ResonanceDecomposition& decomp,
                           const SpectralBasis& basis,
                           const Eigen::VectorXd* y0_kernel = nullptr);

/// Census CSV: seed_index,stayed,exit_time,final_Enorm.
std::string census_csv(const OrbitCensus& census);

/// Basis CSV: i, mu_i, then grid values of e_i.
std::string basis_csv(const SpectralBasis& basis);

}  // namespace sdwave
