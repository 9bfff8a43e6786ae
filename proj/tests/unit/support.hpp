#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>

#include <Eigen/Dense>

#include "pbergman/domain.hpp"

namespace testing {

using pbergman::Complex;
using pbergman::Point;

inline constexpr double pi = std::numbers::pi;

inline Point pt(std::initializer_list<Complex> coords) {
  Point z(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index j = 0;
  for (Complex c : coords) z[j++] = c;
  return z;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing
