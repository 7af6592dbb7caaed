// dynamics.hpp: fixed-step RK4 propagation, initial states, observables
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ccqme/grid_dvr.hpp"
#include "ccqme/linear_generator.hpp"
#include "ccqme/system_model.hpp"

namespace ccqme {

struct PropagationSettings {
    double t_max = 0.0;  // a.u.
    double dt = 1.0;     // a.u.
    int stride = 1;      // sample every stride steps
    std::vector<std::pair<int, int>> coherences;  // (n, m) pairs to record
    bool keep_states = false;
};

struct Trajectory {
    std::vector<double> times_au;
    std::vector<Eigen::VectorXd> populations;
    std::vector<std::pair<int, int>> coherence_pairs;
    std::vector<std::vector<cplx>> coherences;  // one row per sample
    std::vector<double> q_expect;
    std::vector<double> energy;  // tr(rho H)
    std::vector<double> trace;
    std::vector<double> min_eig;
    std::vector<double> hermiticity;  // max |rho - rho^dagger|
    std::vector<Eigen::MatrixXcd> states;  // only with keep_states
    Eigen::VectorXcd final_state;          // full generator state at t_max

    std::size_t size() const noexcept { return times_au.size(); }
    double time_fs(std::size_t i) const;
    Eigen::VectorXd population_series(int level) const;
};

// RK4 on dx/dt = G x starting from the embedded rho0. Samples t = 0 and every
// stride-th step; the last step is always sampled. Throws on non-finite state.
Trajectory propagate(const LinearGenerator& generator, const NLevelSystem& sys, const Eigen::MatrixXcd& rho0,
                     const PropagationSettings& settings);

Eigen::MatrixXcd initial_eigenstate(const NLevelSystem& sys, int n);

struct WavepacketSpec {
    double center = 0.0;    // bohr
    double width = 0.5;     // bohr
    double momentum = 0.0;  // a.u.
    double mass = 1836.15;  // m_e
};

struct ProjectedWavepacket {
    Eigen::MatrixXcd rho;
    double leakage = 0.0;  // norm outside the retained levels
};

ProjectedWavepacket initial_wavepacket(const EigenSolution& sol, const Grid1D& grid, const WavepacketSpec& wp,
                                       int n_levels);

// Momentum giving kinetic energy e to a particle of the given mass.
double momentum_for_energy(double energy, double mass);

double expectation_q(const NLevelSystem& sys, const Eigen::MatrixXcd& rho);

// time_fs, p_0..p_{N-1}, re/im of recorded coherences, q_expect_bohr, trace, min_eig
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace ccqme
