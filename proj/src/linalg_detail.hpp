#pragma once

#include "spinflip/types.hpp"

#include <limits>

namespace spinflip::detail {

/// 2-norm condition number; infinity for an exactly singular matrix.
inline double condition_number(const Mat4& a) {
  const Eigen::JacobiSVD<Mat4> svd(a);
  const auto& s = svd.singularValues();
  if (s(3) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(3);
}

inline constexpr double kMaxCondition = 1e12;

}  // namespace spinflip::detail
