#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracfem/common.hpp"
#include "fracfem/fem.hpp"

namespace fracfem {

/// One separable piece c(z) * g(x, y) of a Laplace-domain source term.
struct LaplaceSourceTerm {
  std::function<Complex(Complex z)> coefficient;
  ScalarField field;
};

/// Time-fractional diffusion problem u_t - d_t^{1-alpha} K lap u = f on the
/// sector, with the source given through its Laplace transform.
struct ProblemSpec {
  std::string label;
  double alpha = 0.5;
  double beta = 2.0 / 3.0;
  BcKind bc = BcKind::dirichlet;
  double K = 1.0;
  ScalarField u0;
  std::vector<LaplaceSourceTerm> source;  // empty: f = 0
  /// Exact solution frozen at time t; time factors are evaluated once.
  std::function<ScalarField(double t)> exact_at;

  double exact(double x, double y, double t) const { return exact_at(t)(x, y); }
  /// Pointwise f_hat(z)(x, y).
  Complex fhat(Complex z, double x, double y) const;
};

/// -K lap u = f with homogeneous Dirichlet data.
struct EllipticSpec {
  std::string label;
  double beta = 2.0 / 3.0;
  double K = 1.0;
  BcKind bc = BcKind::dirichlet;
  ScalarField f;
  ScalarField exact;
  VectorField exact_grad;
};

/// Diffusivity making the smallest eigenvalue of -K lap equal to one:
/// 1 / j_{beta,1}^2 (Dirichlet) or 1 / j_{beta/2,1}^2 (mixed).
double normalize_K(double beta, BcKind bc);

/// g = r^beta (1 - r) sin(beta theta), vanishing on the whole boundary.
ScalarField singular_profile(double beta);
/// Gradient of singular_profile.
VectorField singular_profile_gradient(double beta);
/// -K lap g = K (2 beta + 1) r^(beta-1) sin(beta theta).
ScalarField singular_profile_operator(double beta, double K);

/// u = (1 + omega_{alpha+1}(t)) g, Dirichlet, with
/// f_hat(z) = z^-alpha g + (z^-alpha + z^-2alpha) A g.
ProblemSpec example1(double alpha, double beta = 2.0 / 3.0);

/// u = E_alpha(-t^alpha) J_{beta/2}(omega r) sin(beta theta / 2), mixed
/// boundary conditions, f = 0.
ProblemSpec example2(double alpha, double beta = 2.0 / 3.0);

/// u = g with f = A g, Dirichlet.
EllipticSpec elliptic_singular(double beta = 2.0 / 3.0);

}  // namespace fracfem
