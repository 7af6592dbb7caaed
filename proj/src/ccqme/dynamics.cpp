#include "ccqme/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "ccqme/errors.hpp"
#include "ccqme/units.hpp"

namespace ccqme {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

VectorXcd LinearGenerator::embed(const MatrixXcd& rho) const
{
    const int n = system_size();
    if (rho.rows() != n || rho.cols() != n) throw InvalidInput("initial state has the wrong dimension");
    VectorXcd x = VectorXcd::Zero(state_size());
    x.head(Eigen::Index(n) * n) = vectorize(rho);
    return x;
}

MatrixXcd LinearGenerator::physical(const VectorXcd& x) const
{
    const int n = system_size();
    return unvectorize(x.head(Eigen::Index(n) * n), n);
}

double Trajectory::time_fs(std::size_t i) const { return units::au_to_fs(times_au.at(i)); }

Eigen::VectorXd Trajectory::population_series(int level) const
{
    Eigen::VectorXd out(populations.size());
    for (std::size_t i = 0; i < populations.size(); ++i) out(Eigen::Index(i)) = populations[i](level);
    return out;
}

namespace {

void record(Trajectory& traj, double t, const MatrixXcd& rho, const NLevelSystem& sys, bool keep)
{
    traj.times_au.push_back(t);
    traj.populations.push_back(rho.diagonal().real());
    std::vector<cplx> coh;
    coh.reserve(traj.coherence_pairs.size());
    for (auto [n, m] : traj.coherence_pairs) coh.push_back(rho(n, m));
    traj.coherences.push_back(std::move(coh));
    traj.q_expect.push_back(expectation_q(sys, rho));
    traj.energy.push_back((rho.diagonal().real().array() * sys.energies().array()).sum());
    traj.trace.push_back(rho.trace().real());
    traj.hermiticity.push_back((rho - rho.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    traj.min_eig.push_back(eig.eigenvalues().minCoeff());
    if (keep) traj.states.push_back(rho);
}

}  // namespace

Trajectory propagate(const LinearGenerator& generator, const NLevelSystem& sys, const MatrixXcd& rho0,
                     const PropagationSettings& settings)
{
    if (!(settings.dt > 0.0)) throw InvalidInput("time step must be positive");
    if (!(settings.t_max >= settings.dt)) throw InvalidInput("t_max must be at least one time step");
    if (settings.stride < 1) throw InvalidInput("stride must be at least 1");
    if (generator.system_size() != sys.size()) throw InvalidInput("generator and system sizes differ");
    const int n = sys.size();
    for (auto [a, b] : settings.coherences)
        if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidInput("coherence index out of range");

    const double dt = settings.dt;
    const long steps = std::lround(settings.t_max / dt);
    Trajectory traj;
    traj.coherence_pairs = settings.coherences;
    VectorXcd x = generator.embed(rho0);
    VectorXcd k1, k2, k3, k4, tmp;
    record(traj, 0.0, generator.physical(x), sys, settings.keep_states);
    for (long s = 1; s <= steps; ++s) {
        generator.apply(x, k1);
        tmp = x + (0.5 * dt) * k1;
        generator.apply(tmp, k2);
        tmp = x + (0.5 * dt) * k2;
        generator.apply(tmp, k3);
        tmp = x + dt * k3;
        generator.apply(tmp, k4);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t = s * dt;
        if (!x.allFinite()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6g", t);
            throw NumericalFailure(std::string("non-finite state at t = ") + buf + " a.u.");
        }
        if (s % settings.stride == 0 || s == steps) record(traj, t, generator.physical(x), sys, settings.keep_states);
    }
    traj.final_state = std::move(x);
    return traj;
}

MatrixXcd initial_eigenstate(const NLevelSystem& sys, int n)
{
    if (n < 0 || n >= sys.size()) throw InvalidInput("eigenstate index " + std::to_string(n) + " out of range");
    MatrixXcd rho = MatrixXcd::Zero(sys.size(), sys.size());
    rho(n, n) = 1.0;
    return rho;
}

double momentum_for_energy(double energy, double mass)
{
    if (energy < 0.0 || !(mass > 0.0)) throw InvalidInput("momentum needs energy >= 0 and mass > 0");
    return std::sqrt(2.0 * mass * energy);
}

ProjectedWavepacket initial_wavepacket(const EigenSolution& sol, const Grid1D& grid, const WavepacketSpec& wp,
                                       int n_levels)
{
    if (!(wp.width > 0.0)) throw InvalidInput("wavepacket width must be positive");
    if (n_levels < 1 || n_levels > sol.wavefunctions.rows())
        throw InvalidInput("wavepacket projection needs 1 <= N <= number of computed states");
    const double dq = grid.spacing();
    const double norm = std::pow(2.0 / (std::numbers::pi * wp.width * wp.width), 0.25);
    VectorXcd psi(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        const double x = grid.point(i) - wp.center;
        psi(i) = norm * std::exp(-x * x / (wp.width * wp.width)) * std::exp(cplx(0.0, wp.momentum * x));
    }
    VectorXcd c(n_levels);
    for (int k = 0; k < n_levels; ++k) c(k) = (sol.wavefunctions.row(k).cast<cplx>() * psi).value() * dq;
    const double kept = c.squaredNorm();
    if (!(kept > 0.0)) throw NumericalFailure("wavepacket has no overlap with the retained levels");
    ProjectedWavepacket out;
    out.leakage = 1.0 - kept;
    out.rho = c * c.adjoint() / kept;
    return out;
}

double expectation_q(const NLevelSystem& sys, const MatrixXcd& rho)
{
    const cplx v = (rho * sys.coupling().cast<cplx>()).trace();
    return v.real();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    const int n = traj.populations.empty() ? 0 : static_cast<int>(traj.populations.front().size());
    os << "time_fs";
    for (int k = 0; k < n; ++k) os << ",p_" << k;
    for (auto [a, b] : traj.coherence_pairs) os << ",re_rho_" << a << '_' << b << ",im_rho_" << a << '_' << b;
    os << ",q_expect_bohr,trace,min_eig\n";
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12e", v);
        os << buf;
    };
    for (std::size_t i = 0; i < traj.size(); ++i) {
        put(traj.time_fs(i));
        for (int k = 0; k < n; ++k) os << ',', put(traj.populations[i](k));
        for (const cplx& z : traj.coherences[i]) os << ',', put(z.real()), os << ',', put(z.imag());
        os << ',', put(traj.q_expect[i]);
        os << ',', put(traj.trace[i]);
        os << ',', put(traj.min_eig[i]);
        os << '\n';
    }
}

}  // namespace ccqme
