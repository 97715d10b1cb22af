#include "fracfem/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "fracfem/specialfn.hpp"

namespace fracfem {

Complex ProblemSpec::fhat(Complex z, double x, double y) const {
  Complex sum{};
  for (const auto& term : source) sum += term.coefficient(z) * term.field(x, y);
  return sum;
}

double normalize_K(double beta, BcKind bc) {
  if (!(beta > 0.5 && beta < 1.0))
    throw std::invalid_argument("normalize_K: beta must lie in (1/2, 1)");
  double zero = 0.0;
  switch (bc) {
    case BcKind::dirichlet: zero = first_bessel_zero(beta); break;
    case BcKind::mixed: zero = first_bessel_zero(0.5 * beta); break;
    case BcKind::natural:
      throw std::invalid_argument("normalize_K: no positive first eigenvalue without constraints");
  }
  return 1.0 / (zero * zero);
}

ScalarField singular_profile(double beta) {
  return [beta](double x, double y) {
    const double r = std::hypot(x, y);
    return std::pow(r, beta) * (1.0 - r) * std::sin(beta * polar_angle(x, y));
  };
}

VectorField singular_profile_gradient(double beta) {
  return [beta](double x, double y) -> std::array<double, 2> {
    const double r = std::hypot(x, y);
    const double theta = polar_angle(x, y);
    const double rb1 = std::pow(r, beta - 1.0);
    const double du_dr = (beta - (beta + 1.0) * r) * rb1 * std::sin(beta * theta);
    const double du_dt = beta * rb1 * (1.0 - r) * std::cos(beta * theta);  // (1/r) d/dtheta
    const double c = x / r, s = y / r;
    return {du_dr * c - du_dt * s, du_dr * s + du_dt * c};
  };
}

ScalarField singular_profile_operator(double beta, double K) {
  return [beta, K](double x, double y) {
    const double r = std::hypot(x, y);
    return K * (2.0 * beta + 1.0) * std::pow(r, beta - 1.0) *
           std::sin(beta * polar_angle(x, y));
  };
}

ProblemSpec example1(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("example1: alpha must lie in (0, 1)");
  ProblemSpec p;
  p.label = "example1";
  p.alpha = alpha;
  p.beta = beta;
  p.bc = BcKind::dirichlet;
  p.K = normalize_K(beta, p.bc);
  const ScalarField g = singular_profile(beta);
  const ScalarField ag = singular_profile_operator(beta, p.K);
  p.u0 = g;
  p.source = {
      {[alpha](Complex z) { return std::pow(z, -alpha); }, g},
      {[alpha](Complex z) { return std::pow(z, -alpha) + std::pow(z, -2.0 * alpha); }, ag},
  };
  p.exact_at = [g, alpha](double t) -> ScalarField {
    const double factor = t > 0.0 ? 1.0 + omega_kernel(alpha + 1.0, t) : 1.0;
    return [g, factor](double x, double y) { return factor * g(x, y); };
  };
  return p;
}

ProblemSpec example2(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("example2: alpha must lie in (0, 1)");
  ProblemSpec p;
  p.label = "example2";
  p.alpha = alpha;
  p.beta = beta;
  p.bc = BcKind::mixed;
  p.K = normalize_K(beta, p.bc);
  const double nu = 0.5 * beta;
  const double omega = first_bessel_zero(nu);
  p.u0 = [nu, omega](double x, double y) {
    const double r = std::hypot(x, y);
    return bessel_j(nu, omega * std::min(r, 1.0)) * std::sin(nu * polar_angle(x, y));
  };
  p.exact_at = [u0 = p.u0, alpha](double t) -> ScalarField {
    const double decay = t > 0.0 ? mittag_leffler_neg(alpha, std::pow(t, alpha)) : 1.0;
    return [u0, decay](double x, double y) { return decay * u0(x, y); };
  };
  return p;
}

EllipticSpec elliptic_singular(double beta) {
  EllipticSpec e;
  e.label = "elliptic";
  e.beta = beta;
  e.K = normalize_K(beta, BcKind::dirichlet);
  e.bc = BcKind::dirichlet;
  e.exact = singular_profile(beta);
  e.exact_grad = singular_profile_gradient(beta);
  e.f = singular_profile_operator(beta, e.K);
  return e;
}

}  // namespace fracfem
