#include "fracfem/harness.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracfem/contour.hpp"
#include "fracfem/quadrature.hpp"

namespace fracfem {

namespace {

using Bary = std::array<double, 3>;

// Midpoint refinement of the reference triangle, in parent barycentrics.
constexpr std::array<std::array<Bary, 3>, 4> kQuadrisection = {{
    {{{1, 0, 0}, {0.5, 0.5, 0}, {0.5, 0, 0.5}}},
    {{{0.5, 0.5, 0}, {0, 1, 0}, {0, 0.5, 0.5}}},
    {{{0.5, 0, 0.5}, {0, 0.5, 0.5}, {0, 0, 1}}},
    {{{0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}}},
}};

constexpr std::array<std::array<Bary, 3>, 1> kWhole = {{
    {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
}};

// Sum over triangles of integral of integrand(t, x, y, parent barycentrics).
template <class Integrand>
double integrate_elements(const Mesh& mesh, int quad_degree, Exec exec,
                          Integrand&& integrand) {
  const TriangleRule& rule = triangle_rule(quad_degree);
  const std::size_t nt = mesh.n_triangles();
  std::vector<double> local(nt, 0.0);
  std::vector<char> bad(nt, 0);

  auto one = [&](std::size_t t) {
    const auto& tri = mesh.triangles[t];
    const Point& a = mesh.vertices[tri[0]];
    const Point& b = mesh.vertices[tri[1]];
    const Point& c = mesh.vertices[tri[2]];
    const double area = std::abs(triangle_area(mesh, t));
    const bool touches_origin = distance_to_origin(mesh, t) == 0.0;
    auto run = [&](const auto& pieces) {
      const double piece_area = area / static_cast<double>(pieces.size());
      double sum = 0.0;
      for (const auto& piece : pieces) {
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const auto& l = rule.points[q];
          Bary lam{};
          for (int k = 0; k < 3; ++k)
            lam[k] = l[0] * piece[0][k] + l[1] * piece[1][k] + l[2] * piece[2][k];
          const double x = lam[0] * a.x + lam[1] * b.x + lam[2] * c.x;
          const double y = lam[0] * a.y + lam[1] * b.y + lam[2] * c.y;
          const double v = integrand(t, x, y, lam);
          if (!std::isfinite(v)) {
            bad[t] = 1;
            return 0.0;
          }
          sum += rule.weights[q] * piece_area * v;
        }
      }
      return sum;
    };
    local[t] = touches_origin ? run(kQuadrisection) : run(kWhole);
  };

  if (exec == Exec::serial) {
    for (std::size_t t = 0; t < nt; ++t) one(t);
  } else {
    const long count = static_cast<long>(nt);
#pragma omp parallel for schedule(dynamic, 256)
    for (long t = 0; t < count; ++t) one(static_cast<std::size_t>(t));
  }
  double total = 0.0;
  for (std::size_t t = 0; t < nt; ++t) {
    if (bad[t]) {
      const auto& v = mesh.vertices[mesh.triangles[t][0]];
      std::ostringstream msg;
      msg << "error integral: non-finite exact value in triangle " << t << " near ("
          << v.x << ", " << v.y << ")";
      throw std::domain_error(msg.str());
    }
    total += local[t];
  }
  return total;
}

std::vector<double> vertex_values(const Mesh& mesh, const DofMap& dofmap,
                                  std::span<const double> uh) {
  if (uh.size() != static_cast<std::size_t>(dofmap.n_dofs) ||
      dofmap.vertex_to_dof.size() != mesh.n_vertices())
    throw std::invalid_argument("error norm: coefficient vector does not match dof map");
  return to_vertex_values(dofmap, uh);
}

bool same_gamma(double gamma, double threshold) {
  return std::abs(gamma - threshold) <= 1e-9 * threshold;
}

double epsilon_impl(double h, double gamma, double b) {
  const double threshold = 1.0 / b;
  if (same_gamma(gamma, threshold)) return h * std::sqrt(std::log(1.0 + 1.0 / h));
  if (gamma < threshold) return std::pow(h, gamma * b) / std::sqrt(1.0 / gamma - b);
  return h / std::sqrt(b - 1.0 / gamma);
}

std::string format_number(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string predictor_label(double gamma, double beta, BcKind bc, RateAxis axis) {
  const double eff = bc == BcKind::mixed ? 0.5 * beta : beta;
  const double rate = predicted_h_rate(gamma, beta, bc);
  std::string label = bc == BcKind::mixed ? "eps_mix^2~h^" : "eps^2~h^";
  label += format_number(rate);
  if (same_gamma(gamma, 1.0 / eff)) label += "*log^2(1+1/h)";
  if (axis == RateAxis::dofs) label += ";N-slope=" + format_number(-0.5 * rate);
  return label;
}

}  // namespace

double l2_error(const Mesh& mesh, const DofMap& dofmap, std::span<const double> uh,
                const ScalarField& exact, int quad_degree, Exec exec) {
  const auto nodal = vertex_values(mesh, dofmap, uh);
  const double sq = integrate_elements(
      mesh, quad_degree, exec, [&](std::size_t t, double x, double y, const Bary& lam) {
        const auto& tri = mesh.triangles[t];
        const double u = lam[0] * nodal[tri[0]] + lam[1] * nodal[tri[1]] + lam[2] * nodal[tri[2]];
        const double d = u - exact(x, y);
        return d * d;
      });
  return std::sqrt(sq);
}

double h1_seminorm_error(const Mesh& mesh, const DofMap& dofmap,
                         std::span<const double> uh, const VectorField& exact_grad,
                         int quad_degree, Exec exec) {
  const auto nodal = vertex_values(mesh, dofmap, uh);
  const double sq = integrate_elements(
      mesh, quad_degree, exec, [&](std::size_t t, double x, double y, const Bary&) {
        const auto& tri = mesh.triangles[t];
        const Point& a = mesh.vertices[tri[0]];
        const Point& b = mesh.vertices[tri[1]];
        const Point& c = mesh.vertices[tri[2]];
        const double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        const double ua = nodal[tri[0]], ub = nodal[tri[1]], uc = nodal[tri[2]];
        const double gx = (ua * (b.y - c.y) + ub * (c.y - a.y) + uc * (a.y - b.y)) / det;
        const double gy = (ua * (c.x - b.x) + ub * (a.x - c.x) + uc * (b.x - a.x)) / det;
        const auto g = exact_grad(x, y);
        const double dx = gx - g[0], dy = gy - g[1];
        return dx * dx + dy * dy;
      });
  return std::sqrt(sq);
}

double epsilon(double h, double gamma, double beta) {
  return epsilon_impl(h, gamma, beta);
}

double epsilon_mix(double h, double gamma, double beta) {
  return epsilon_impl(h, gamma, 0.5 * beta);
}

double predicted_h_rate(double gamma, double beta, BcKind bc) {
  const double eff = bc == BcKind::mixed ? 0.5 * beta : beta;
  return 2.0 * std::min(gamma * eff, 1.0);
}

double fit_rate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("fit_rate: need at least three points");
  double sx = 0, sy = 0;
  for (const auto& [x, e] : points) {
    if (!(x > 0.0 && e > 0.0)) throw std::invalid_argument("fit_rate: values must be positive");
    sx += std::log(x);
    sy += std::log(e);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, e] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(e) - my);
  }
  if (!(sxx > 1e-300)) throw std::invalid_argument("fit_rate: abscissae are all equal");
  return sxy / sxx;
}

void finalize_report(ConvergenceReport& report) {
  const ConvergenceRow* prev = nullptr;
  std::vector<std::pair<double, double>> points;
  for (auto& row : report.rows) {
    row.rate.reset();
    if (row.failed) {
      prev = nullptr;
      continue;
    }
    if (prev != nullptr)
      row.rate = std::log(prev->error / row.error) / std::log(prev->h_star / row.h_star);
    prev = &row;
    const double x = report.axis == RateAxis::dofs ? static_cast<double>(row.N) : row.h_star;
    points.emplace_back(x, row.error);
  }
  report.fitted_slope = points.size() >= 3 ? fit_rate(points)
                                           : std::numeric_limits<double>::quiet_NaN();
}

ConvergenceReport run_convergence(const ProblemSpec& problem,
                                  const ConvergenceOptions& opts) {
  ConvergenceReport report;
  report.axis = opts.axis;
  report.predictor = predictor_label(opts.gamma, problem.beta, problem.bc, opts.axis);
  const ScalarField exact = problem.exact_at(opts.t);
  for (double h : opts.h_stars) {
    ConvergenceRow row;
    row.h_star = h;
    try {
      const Mesh mesh = generate_sector_mesh(problem.beta, h, opts.gamma);
      const Semidiscretization sd(problem, mesh, opts.exec);
      row.N = sd.dofmap().n_dofs;
      const auto u = sd.evolve(opts.t, opts.M, opts.exec);
      row.error = l2_error(mesh, sd.dofmap(), u, exact, kErrorQuadDegree, opts.exec);
    } catch (const SolverError& e) {
      row.failed = true;
      row.failure = e.what();
      row.error = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(row);
  }
  finalize_report(report);
  return report;
}

ConvergenceReport run_convergence(const EllipticSpec& spec,
                                  const ConvergenceOptions& opts) {
  ConvergenceReport report;
  report.axis = opts.axis;
  report.predictor = predictor_label(opts.gamma, spec.beta, spec.bc, opts.axis);
  for (double h : opts.h_stars) {
    ConvergenceRow row;
    row.h_star = h;
    try {
      const Mesh mesh = generate_sector_mesh(spec.beta, h, opts.gamma);
      const DofMap dofmap = make_dofmap(mesh, spec.bc);
      row.N = dofmap.n_dofs;
      const SparseMatrix s = assemble_stiffness(mesh, dofmap, spec.K, opts.exec);
      const auto b = assemble_load(mesh, dofmap, spec.f, kDefaultLoadDegree, opts.exec);
      const auto u = solve_real_spd(s, b);
      row.error = l2_error(mesh, dofmap, u, spec.exact, kErrorQuadDegree, opts.exec);
      row.h1_error = h1_seminorm_error(mesh, dofmap, u, spec.exact_grad,
                                       kErrorQuadDegree, opts.exec);
    } catch (const SolverError& e) {
      row.failed = true;
      row.failure = e.what();
      row.error = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(row);
  }
  finalize_report(report);
  return report;
}

void write_report_csv(std::ostream& os, const ConvergenceReport& report) {
  const auto old_precision = os.precision(10);
  os << "hstar,N,l2_error,rate\n";
  for (const auto& row : report.rows) {
    os << row.h_star << ',' << row.N << ',' << row.error << ',';
    if (row.rate) os << *row.rate;
    os << '\n';
  }
  os << "# fitted_slope=" << report.fitted_slope << " predictor=" << report.predictor << '\n';
  os.precision(old_precision);
}

std::vector<double> parse_hstar_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto caret = item.find('^');
    try {
      if (caret == std::string::npos) {
        out.push_back(std::stod(item));
      } else {
        out.push_back(std::pow(std::stod(item.substr(0, caret)),
                               std::stod(item.substr(caret + 1))));
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("parse_hstar_list: cannot parse '" + item + "'");
    }
  }
  for (std::size_t k = 1; k < out.size(); ++k)
    if (!(out[k] < out[k - 1]))
      throw std::invalid_argument("parse_hstar_list: values must be strictly decreasing");
  return out;
}

}  // namespace fracfem
