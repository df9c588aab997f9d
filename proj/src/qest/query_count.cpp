#include "qbandit/qest/query_count.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbandit/env/numeric.hpp"
#include "qbandit/qest/amplify.hpp"
#include "qbandit/qest/qae.hpp"

namespace qbandit {
namespace {

void check_open_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

}  // namespace

void EstimatorGuarantee::validate() const {
  check_open_unit(epsilon, "epsilon");
  check_open_unit(delta, "delta");
  if (mode == ValueBound::bounded_variance) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(epsilon < 4.0 * sigma)) {
      throw std::invalid_argument("bounded-variance estimation requires epsilon < 4 sigma");
    }
  }
}

std::int64_t qmc1_query_count(double epsilon, double delta, double c1) {
  check_open_unit(epsilon, "epsilon");
  check_open_unit(delta, "delta");
  if (!(c1 >= 1.0)) throw std::invalid_argument("C1 must be at least 1");
  return std::max<std::int64_t>(1, ceil_count(c1 / epsilon * std::log(1.0 / delta)));
}

std::int64_t qmc2_query_count(double epsilon, double delta, double sigma, double c2) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(epsilon < 4.0 * sigma)) {
    throw std::invalid_argument("bounded-variance estimation requires epsilon < 4 sigma");
  }
  check_open_unit(delta, "delta");
  if (!(c2 >= 1.0)) throw std::invalid_argument("C2 must be at least 1");
  const double ratio = 8.0 * sigma / epsilon;
  const double l2 = std::log2(ratio);
  const double n = c2 * sigma / epsilon * std::pow(l2, 1.5) * std::log2(l2) * std::log(1.0 / delta);
  return std::max<std::int64_t>(1, ceil_count(n));
}

std::int64_t qae_query_count(double epsilon, double delta) {
  const int d = qae_depth_for_accuracy(epsilon);
  return (std::int64_t{1} << d) * powering_repetitions(delta);
}

}  // namespace qbandit
