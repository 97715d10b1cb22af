#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace fracfem {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Selects the kernel implementation: the plain loop kept as reference, or
/// the OpenMP version used in production runs.
enum class Exec { serial, parallel };

/// Real scalar field on the plane, evaluated at Cartesian coordinates.
using ScalarField = std::function<double(double x, double y)>;
using ComplexField = std::function<Complex(double x, double y)>;
using VectorField = std::function<std::array<double, 2>(double x, double y)>;

/// Polar angle in [0, 2*pi), so that the sector 0 < theta < pi/beta is
/// described without a cut for 1/2 < beta < 1.
inline double polar_angle(double x, double y) {
  double theta = std::atan2(y, x);
  if (theta < 0.0) theta += 2.0 * kPi;
  return theta;
}

}  // namespace fracfem
