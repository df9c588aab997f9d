#pragma once

#include <Eigen/Dense>

namespace qbandit {

/// `count` unit vectors equally spaced on the quarter circle from (1, 0)
/// to (0, 1), one per row.
Eigen::MatrixXd generate_quarter_circle_actions(int count);

/// (cos(angle_over_pi * pi), sin(angle_over_pi * pi)).
Eigen::VectorXd unit_vector_at(double angle_over_pi);

}  // namespace qbandit
