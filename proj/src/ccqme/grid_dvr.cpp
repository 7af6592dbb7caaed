#include "ccqme/grid_dvr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "ccqme/errors.hpp"

namespace ccqme {

Grid1D::Grid1D(double q_min, double q_max, int n_points) : q_min_(q_min), q_max_(q_max), n_points_(n_points)
{
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_min < q_max))
        throw InvalidInput("grid requires finite q_min < q_max");
    if (n_points < 2) throw InvalidInput("grid requires at least 2 points");
}

Eigen::VectorXd Grid1D::points() const
{
    Eigen::VectorXd q(n_points_);
    for (int i = 0; i < n_points_; ++i) q(i) = point(i);
    return q;
}

Grid1D default_taa_grid() { return Grid1D(-1.5, 2.1, 121); }

PotentialCurve harmonic_potential(double omega, double mass)
{
    const double k = mass * omega * omega;
    return {[k](double q) { return 0.5 * k * q * q; }, "harmonic"};
}

PotentialCurve constant_potential(double value)
{
    return {[value](double) { return value; }, "constant"};
}

QuarticCoefficients surrogate_taa_coefficients()
{
    // Least-squares fit to the six tabulated levels and the barrier height,
    // with a weak pull on the two lowest diagonal coordinate elements.
    return {1.9346000000e-02, -1.2096279960e-02, -1.9756102720e-02, 7.2781005769e-03, 6.9980922013e-03};
}

PotentialCurve quartic_potential(const QuarticCoefficients& c, std::string label)
{
    return {[c](double q) { return (((c.a4 * q + c.a3) * q + c.a2) * q + c.a1) * q + c.a0; }, std::move(label)};
}

PotentialCurve surrogate_taa_potential() { return quartic_potential(surrogate_taa_coefficients(), "surrogate-taa"); }

PotentialCurve load_potential_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open potential file '" + path + "'");
    std::vector<double> qs, vs;
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double q = 0.0, v = 0.0;
        if (!(ls >> q)) continue;
        if (!(ls >> v)) throw IoError("potential file '" + path + "': line without value column");
        if (!qs.empty() && !(q > qs.back()))
            throw IoError("potential file '" + path + "': coordinates must be strictly increasing");
        qs.push_back(q);
        vs.push_back(v);
    }
    if (qs.size() < 2) throw IoError("potential file '" + path + "' needs at least two points");
    auto table = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(std::move(qs), std::move(vs));
    auto eval = [table](double q) {
        const auto& [x, y] = *table;
        if (q < x.front() || q > x.back())
            throw InvalidInput("potential evaluated outside its tabulated range at q = " + std::to_string(q));
        auto it = std::upper_bound(x.begin(), x.end(), q);
        if (it == x.end()) return y.back();
        const auto k = static_cast<size_t>(it - x.begin());
        const double t = (q - x[k - 1]) / (x[k] - x[k - 1]);
        return (1.0 - t) * y[k - 1] + t * y[k];
    };
    return {eval, path};
}

PotentialCurve with_counterterm(PotentialCurve base, double reorganization)
{
    auto f = base.evaluate;
    return {[f, reorganization](double q) { return f(q) + 0.5 * reorganization * q * q; },
            base.label + "+counterterm"};
}

Eigen::MatrixXd kinetic_matrix(const Grid1D& grid, double mass)
{
    if (!(mass > 0.0)) throw InvalidInput("mass must be positive");
    const int n = grid.n_points();
    const double dq = grid.spacing();
    const double pref = 1.0 / (mass * dq * dq);
    Eigen::MatrixXd t(n, n);
    for (int i = 0; i < n; ++i) {
        t(i, i) = pref * std::numbers::pi * std::numbers::pi / 6.0;
        for (int j = 0; j < i; ++j) {
            const int d = i - j;
            const double v = pref * ((d % 2 == 0) ? 1.0 : -1.0) / (double(d) * d);
            t(i, j) = v;
            t(j, i) = v;
        }
    }
    return t;
}

EigenSolution solve_schroedinger(const Grid1D& grid, const PotentialCurve& potential, double mass, int n_states)
{
    const int n = grid.n_points();
    if (n_states < 1 || n_states > n) throw InvalidInput("n_states must lie in [1, n_points]");
    Eigen::MatrixXd h = kinetic_matrix(grid, mass);
    for (int i = 0; i < n; ++i) {
        const double v = potential(grid.point(i));
        if (!std::isfinite(v))
            throw InvalidInput("potential '" + potential.label + "' is not finite at q = " + std::to_string(grid.point(i)));
        h(i, i) += v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success)
        throw NumericalFailure("DVR eigensolver did not converge (n_points = " + std::to_string(n) + ")");

    EigenSolution sol;
    sol.energies = eig.eigenvalues().head(n_states);
    sol.wavefunctions = eig.eigenvectors().leftCols(n_states).transpose() / std::sqrt(grid.spacing());
    for (int k = 0; k < n_states; ++k) {
        Eigen::Index imax = 0;
        sol.wavefunctions.row(k).cwiseAbs().maxCoeff(&imax);
        if (sol.wavefunctions(k, imax) < 0.0) sol.wavefunctions.row(k) *= -1.0;
    }
    return sol;
}

Eigen::MatrixXd matrix_elements(const EigenSolution& sol, const Grid1D& grid, const std::function<double(double)>& f)
{
    if (sol.wavefunctions.cols() != grid.n_points()) throw InvalidInput("solution and grid sizes differ");
    Eigen::VectorXd w(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        w(i) = f(grid.point(i)) * grid.spacing();
        if (!std::isfinite(w(i))) throw InvalidInput("matrix-element function is not finite on the grid");
    }
    Eigen::MatrixXd m = sol.wavefunctions * w.asDiagonal() * sol.wavefunctions.transpose();
    return 0.5 * (m + m.transpose());
}

NLevelSystem system_from_dvr(const EigenSolution& sol, const Grid1D& grid, int n, std::string label)
{
    if (n < 1 || n > sol.energies.size()) throw InvalidInput("requested more levels than the DVR solution holds");
    const Eigen::MatrixXd q = matrix_elements(sol, grid, [](double x) { return x; });
    return NLevelSystem(sol.energies.head(n), q.topLeftCorner(n, n), std::move(label));
}

double left_well_minimum(const Grid1D& grid, const PotentialCurve& potential)
{
    const int n = grid.n_points();
    for (int i = 1; i + 1 < n; ++i) {
        const double vm = potential(grid.point(i - 1)), v0 = potential(grid.point(i)), vp = potential(grid.point(i + 1));
        if (v0 <= vm && v0 < vp) {
            const double curv = vm - 2.0 * v0 + vp;
            const double shift = curv > 0.0 ? 0.5 * (vm - vp) / curv : 0.0;
            return grid.point(i) + shift * grid.spacing();
        }
    }
    throw InvalidInput("potential '" + potential.label + "' has no interior minimum on the grid");
}

}  // namespace ccqme
