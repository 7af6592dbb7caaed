// grid_dvr.hpp: sinc discrete-variable representation for 1D Schroedinger problems
#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "ccqme/system_model.hpp"

namespace ccqme {

class Grid1D {
public:
    Grid1D(double q_min, double q_max, int n_points);

    double q_min() const noexcept { return q_min_; }
    double q_max() const noexcept { return q_max_; }
    int n_points() const noexcept { return n_points_; }
    double spacing() const noexcept { return (q_max_ - q_min_) / (n_points_ - 1); }
    double point(int i) const noexcept { return q_min_ + i * spacing(); }
    Eigen::VectorXd points() const;

private:
    double q_min_;
    double q_max_;
    int n_points_;
};

// 121 points on [-1.5, 2.1] bohr.
Grid1D default_taa_grid();

struct PotentialCurve {
    std::function<double(double)> evaluate;
    std::string label;

    double operator()(double q) const { return evaluate(q); }
};

PotentialCurve harmonic_potential(double omega, double mass);
PotentialCurve constant_potential(double value);

// Quartic double well calibrated against the six-level spectrum and the
// 1573.3 cm^-1 barrier; see README for the fit and its residuals.
struct QuarticCoefficients {
    double a4, a3, a2, a1, a0;
};
QuarticCoefficients surrogate_taa_coefficients();
PotentialCurve quartic_potential(const QuarticCoefficients& c, std::string label);
PotentialCurve surrogate_taa_potential();

// Two-column text file (q in bohr, V in hartree), linearly interpolated.
PotentialCurve load_potential_file(const std::string& path);

// V(q) + (reorganization / 2) q^2
PotentialCurve with_counterterm(PotentialCurve base, double reorganization);

struct EigenSolution {
    Eigen::VectorXd energies;         // ascending, hartree
    Eigen::MatrixXd wavefunctions;    // n_states x n_points, normalized with weight spacing
};

Eigen::MatrixXd kinetic_matrix(const Grid1D& grid, double mass);
EigenSolution solve_schroedinger(const Grid1D& grid, const PotentialCurve& potential, double mass, int n_states);
Eigen::MatrixXd matrix_elements(const EigenSolution& sol, const Grid1D& grid, const std::function<double(double)>& f);

// Lowest n levels of a DVR solution as an N-level system with q as coupling.
NLevelSystem system_from_dvr(const EigenSolution& sol, const Grid1D& grid, int n, std::string label);

// Position of the leftmost local minimum of the potential on the grid,
// refined by parabolic interpolation.
double left_well_minimum(const Grid1D& grid, const PotentialCurve& potential);

}  // namespace ccqme
