#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracfem/common.hpp"
#include "fracfem/fem.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/problems.hpp"

namespace fracfem {

inline constexpr int kErrorQuadDegree = 6;

/// ||u_h - exact||_{L2} with the degree-6 rule; triangles touching the
/// corner are split into four before integrating. Throws std::domain_error
/// on non-finite exact values.
double l2_error(const Mesh& mesh, const DofMap& dofmap, std::span<const double> uh,
                const ScalarField& exact, int quad_degree = kErrorQuadDegree,
                Exec exec = Exec::parallel);

/// |u_h - exact|_{H1} given the exact gradient.
double h1_seminorm_error(const Mesh& mesh, const DofMap& dofmap,
                         std::span<const double> uh, const VectorField& exact_grad,
                         int quad_degree = kErrorQuadDegree,
                         Exec exec = Exec::parallel);

/// Error predictor for Dirichlet data. The middle branch applies when
/// gamma equals 1/beta to within 1e-9.
double epsilon(double h, double gamma, double beta);
/// Predictor for mixed data: beta replaced by beta/2.
double epsilon_mix(double h, double gamma, double beta);

/// Least-squares slope of log(error) against log(x). Needs at least three
/// points with positive coordinates and two distinct abscissae.
double fit_rate(std::span<const std::pair<double, double>> points);

enum class RateAxis { dofs, h };

struct ConvergenceRow {
  double h_star = 0.0;
  int N = 0;
  double error = 0.0;
  std::optional<double> rate;  // log2(err_{k-1} / err_k)
  std::optional<double> h1_error;
  bool failed = false;
  std::string failure;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  RateAxis axis = RateAxis::dofs;
  double fitted_slope = 0.0;
  std::string predictor;
};

struct ConvergenceOptions {
  double gamma = 1.0;
  std::vector<double> h_stars;  // strictly decreasing
  double t = 1.0;
  int M = 8;
  RateAxis axis = RateAxis::dofs;
  Exec exec = Exec::parallel;
};

/// Mesh, discretise, evolve to t and measure the L2 error for each h*.
ConvergenceReport run_convergence(const ProblemSpec& problem,
                                  const ConvergenceOptions& opts);
/// Static solve of the elliptic problem; rows also carry the H1 error.
ConvergenceReport run_convergence(const EllipticSpec& spec,
                                  const ConvergenceOptions& opts);

/// Fills pairwise rates and the fitted slope from the rows.
void finalize_report(ConvergenceReport& report);

/// Predicted L2 rate in powers of h: twice the rate of epsilon (or
/// epsilon_mix), with the log factor ignored.
double predicted_h_rate(double gamma, double beta, BcKind bc);

/// "hstar,N,l2_error,rate" rows, then "# fitted_slope=... predictor=...".
void write_report_csv(std::ostream& os, const ConvergenceReport& report);

/// Parses "2^-3,2^-4,0.05" style lists.
std::vector<double> parse_hstar_list(const std::string& text);

}  // namespace fracfem
