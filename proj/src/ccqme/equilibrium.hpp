// equilibrium.hpp: Gibbs and second-order mean-force states, regime labels
#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "ccqme/bath.hpp"
#include "ccqme/generators.hpp"
#include "ccqme/system_model.hpp"

namespace ccqme {

Eigen::MatrixXcd gibbs_state(const NLevelSystem& sys, double beta);

struct EquilibriumStates {
    Eigen::MatrixXcd gibbs;
    Eigen::MatrixXcd mean_force;  // second order in the coupling
    Eigen::MatrixXcd correction;  // mean_force - gibbs, traceless
    double min_eigenvalue = 0.0;  // of mean_force; may be negative at strong coupling
};

// gibbs + C[gibbs] - gibbs tr(C[gibbs]) with C the canonical map.
EquilibriumStates mean_force_gibbs2(const NLevelSystem& sys, const BathSpec& bath);

// Stationary state of a Liouville-space generator: solves S x = 0 with the
// trace condition replacing the first population row.
Eigen::MatrixXcd stationary_state(const Superoperator& generator);

enum class Regime { ultraweak, weak, intermediate };
std::string_view regime_name(Regime r);

struct RegimeReport {
    double coupling = 0.0;
    double gibbs_vs_mean_force = 0.0;              // relative error of the ground population
    std::optional<double> mean_force_vs_reference; // vs an exact steady state, if supplied
    Regime label = Regime::ultraweak;
    bool intermediate_checked = false;             // false: no reference state was available
};

inline constexpr double default_regime_threshold = 4e-3;

RegimeReport classify_regime(const NLevelSystem& sys, const BathSpec& bath,
                             const Eigen::MatrixXcd* reference_steady_state = nullptr,
                             double threshold = default_regime_threshold);

}  // namespace ccqme
