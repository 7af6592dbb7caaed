// system_model.hpp: truncated N-level system: energies and coupling operator
#pragma once

#include <string>

#include <Eigen/Dense>

namespace ccqme {

class NLevelSystem {
public:
    // Energies must be strictly increasing; coupling must be real symmetric.
    NLevelSystem(Eigen::VectorXd energies, Eigen::MatrixXd coupling, std::string label = "custom");

    int size() const noexcept { return static_cast<int>(energies_.size()); }
    const Eigen::VectorXd& energies() const noexcept { return energies_; }
    const Eigen::MatrixXd& coupling() const noexcept { return coupling_; }
    const std::string& label() const noexcept { return label_; }

private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXd coupling_;
    std::string label_;
};

// Six-level proton-transfer model of thioacetylacetone, bare Hamiltonian.
NLevelSystem taa6_system();

// First n levels of a system.
NLevelSystem truncate(const NLevelSystem& sys, int n);

// delta(n, m) = E_n - E_m
Eigen::MatrixXd bohr_frequencies(const NLevelSystem& sys);

Eigen::MatrixXd hamiltonian_matrix(const NLevelSystem& sys);

// Adds (reorganization / 2) q^2 in the truncated basis and re-diagonalizes.
// The reorganization coefficient of an Ohmic-Drude bath is coupling * cutoff.
NLevelSystem renormalize(const NLevelSystem& sys, double coupling, double cutoff);

// Text format: N, then N energies, then N*N coupling entries (row-major),
// whitespace separated, '#' starts a comment. Atomic units throughout.
NLevelSystem load_system_file(const std::string& path);
void save_system_file(const NLevelSystem& sys, const std::string& path);

}  // namespace ccqme
