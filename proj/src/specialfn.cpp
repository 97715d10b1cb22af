#include "fracfem/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracfem/common.hpp"
#include "fracfem/contour.hpp"

namespace fracfem {

double omega_kernel(double alpha, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("omega_kernel: t must be positive");
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("omega_kernel: alpha must lie in (0, 2]");
  return std::pow(t, alpha - 1.0) / std::tgamma(alpha);
}

namespace {

void check_ml_args(double alpha, double x) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("mittag_leffler: alpha must lie in (0, 1]");
  if (!(x >= 0.0)) throw std::invalid_argument("mittag_leffler: x must be >= 0");
}

}  // namespace

double mittag_leffler_series(double alpha, double x, const MLEvalConfig& cfg) {
  check_ml_args(alpha, x);
  double sum = 1.0, comp = 0.0;
  double power = 1.0;  // (-x)^p
  for (int p = 1; p < 500; ++p) {
    power *= -x;
    const double term = power / std::tgamma(1.0 + p * alpha);
    if (!std::isfinite(term)) break;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (std::abs(term) <= cfg.series_tol * std::abs(sum + comp) && p > 2) break;
  }
  return sum + comp;
}

double mittag_leffler_contour(double alpha, double x, int M) {
  check_ml_args(alpha, x);
  return invert_scalar(
      [alpha, x](Complex z) {
        return std::pow(z, alpha - 1.0) / (std::pow(z, alpha) + x);
      },
      1.0, M);
}

double mittag_leffler_neg(double alpha, double x, const MLEvalConfig& cfg) {
  check_ml_args(alpha, x);
  if (x == 0.0) return 1.0;
  const double value = x <= cfg.series_cutoff
                           ? mittag_leffler_series(alpha, x, cfg)
                           : mittag_leffler_contour(alpha, x, cfg.contour_M);
  return std::clamp(value, 0.0, 1.0);
}

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0 && nu <= 2.0)) throw std::invalid_argument("bessel_j: nu outside [0, 2]");
  if (!(x >= 0.0 && x <= 20.0)) throw std::invalid_argument("bessel_j: x outside [0, 20]");
  return std::cyl_bessel_j(nu, x);
}

double first_bessel_zero(double nu) {
  if (!(nu > 0.0 && nu <= 2.0))
    throw std::invalid_argument("first_bessel_zero: nu outside (0, 2]");
  // j_{nu,1} > nu, and J_nu > 0 on (0, j_{nu,1}); scan for the first sign change.
  double lo = std::max(nu, 0.1), hi = lo;
  const double step = 0.05;
  while (bessel_j(nu, hi) > 0.0) {
    lo = hi;
    hi += step;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j(nu, mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fracfem
