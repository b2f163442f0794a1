#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace qdc::detail {

// Condition estimate for a partial-pivoting LU. Eigen's rcond() stays finite
// when a pivot is exactly zero, so singular factors are caught here and the
// pivot growth ratio serves as a lower bound.
template <typename LU>
double condition_estimate(const LU& lu) {
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.size() == 0) return 1.0;
  const double smallest = pivots.minCoeff();
  if (!(smallest > 0.0)) return std::numeric_limits<double>::infinity();
  const double rcond = lu.rcond();
  const double from_rcond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  const double cond = std::max(from_rcond, pivots.maxCoeff() / smallest);
  return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

}  // namespace qdc::detail
