// metrics.hpp: comparisons between trajectories and between states
#pragma once

#include <Eigen/Dense>

#include "ccqme/dynamics.hpp"

namespace ccqme {

enum class Averaging { mean_absolute, root_mean_square };

// 100 / (t1 - t0) * integral of |p_A - p_B| over [t0, t1] (a.u.), trapezoidal.
// Samples of b are linearly interpolated onto the grid of a where they differ.
double time_averaged_error(const Trajectory& a, const Trajectory& b, int level, double t0, double t1,
                           Averaging mode = Averaging::mean_absolute);

// Half the sum of absolute eigenvalues of a - b.
double steady_state_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace ccqme
