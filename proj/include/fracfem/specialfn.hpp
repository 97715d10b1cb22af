#pragma once

namespace fracfem {

/// omega_alpha(t) = t^(alpha-1) / Gamma(alpha), the Riemann-Liouville kernel.
/// Throws std::invalid_argument for t <= 0 or alpha outside (0, 2].
double omega_kernel(double alpha, double t);

struct MLEvalConfig {
  double series_cutoff = 1.0;  // series for x <= cutoff, contour integral above
  double series_tol = 1e-16;   // stop once terms fall below tol * |sum|
  int contour_M = 20;          // node half-count for the contour backend
};

/// E_alpha(-x) for 0 < alpha <= 1 and x >= 0.
double mittag_leffler_neg(double alpha, double x, const MLEvalConfig& cfg = {});

/// Power series with Neumaier-compensated summation. Accurate only while
/// the largest term stays moderate (x of order one).
double mittag_leffler_series(double alpha, double x, const MLEvalConfig& cfg = {});

/// E_alpha(-x) = (1/2 pi i) int e^z z^(alpha-1) / (z^alpha + x) dz along the
/// hyperbolic contour with M nodes in each half.
double mittag_leffler_contour(double alpha, double x, int M);

/// J_nu(x) for 0 <= nu <= 2 and 0 <= x <= 20.
double bessel_j(double nu, double x);

/// Smallest positive zero of J_nu for 0 < nu <= 2.
double first_bessel_zero(double nu);

}  // namespace fracfem
