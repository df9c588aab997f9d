#include "qbandit/harness/actions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbandit {

Eigen::MatrixXd generate_quarter_circle_actions(int count) {
  if (count < 2) throw std::invalid_argument("quarter-circle action count must be at least 2");
  Eigen::MatrixXd actions(count, 2);
  const double step = std::numbers::pi / (2.0 * static_cast<double>(count - 1));
  for (int k = 0; k < count; ++k) {
    actions(k, 0) = std::cos(step * k);
    actions(k, 1) = std::sin(step * k);
  }
  // Pin the endpoints so (0, 1) is exact rather than (6e-17, 1).
  actions(count - 1, 0) = 0.0;
  actions(count - 1, 1) = 1.0;
  return actions;
}

Eigen::VectorXd unit_vector_at(double angle_over_pi) {
  Eigen::VectorXd v(2);
  v << std::cos(angle_over_pi * std::numbers::pi), std::sin(angle_over_pi * std::numbers::pi);
  return v;
}

}  // namespace qbandit
