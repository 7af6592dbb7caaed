#include "ccqme/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccqme/errors.hpp"

namespace ccqme {

namespace {

double interpolate(const std::vector<double>& t, const Eigen::VectorXd& y, double x)
{
    auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it == t.end()) return y(y.size() - 1);
    const auto j = static_cast<Eigen::Index>(it - t.begin());
    if (*it == x || j == 0) return y(j);
    const double w = (x - t[j - 1]) / (t[j] - t[j - 1]);
    return (1.0 - w) * y(j - 1) + w * y(j);
}

}  // namespace

double time_averaged_error(const Trajectory& a, const Trajectory& b, int level, double t0, double t1, Averaging mode)
{
    if (a.size() == 0 || b.size() == 0) throw InvalidInput("empty trajectory");
    if (level < 0 || level >= a.populations.front().size() || level >= b.populations.front().size())
        throw InvalidInput("population index out of range");
    const double lo = std::max({t0, a.times_au.front(), b.times_au.front()});
    const double hi = std::min({t1, a.times_au.back(), b.times_au.back()});
    if (!(hi > lo)) throw InvalidInput("trajectories do not overlap on the requested window");

    const Eigen::VectorXd pa = a.population_series(level);
    const Eigen::VectorXd pb = b.population_series(level);
    std::vector<double> grid{lo};
    for (double t : a.times_au)
        if (t > lo && t < hi) grid.push_back(t);
    grid.push_back(hi);

    auto diff = [&](double t) {
        const double d = std::abs(interpolate(a.times_au, pa, t) - interpolate(b.times_au, pb, t));
        return mode == Averaging::mean_absolute ? d : d * d;
    };
    double integral = 0.0;
    double prev = diff(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = diff(grid[i]);
        integral += 0.5 * (prev + cur) * (grid[i] - grid[i - 1]);
        prev = cur;
    }
    const double mean = integral / (hi - lo);
    return 100.0 * (mode == Averaging::mean_absolute ? mean : std::sqrt(mean));
}

double steady_state_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("state dimensions differ");
    const Eigen::MatrixXcd d = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

}  // namespace ccqme
