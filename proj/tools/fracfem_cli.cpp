// Command-line front end: mesh generation, Mittag-Leffler evaluation,
// single-time solves and convergence studies.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>

#include "fracfem/contour.hpp"
#include "fracfem/harness.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/problems.hpp"
#include "fracfem/specialfn.hpp"

using namespace fracfem;

namespace {

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

ProblemSpec time_problem(const std::string& example, double alpha) {
  if (example == "1") return example1(alpha);
  if (example == "2") return example2(alpha);
  throw std::invalid_argument("unknown time-dependent example '" + example + "'");
}

BcKind default_bc(const std::string& example) {
  return example == "2" ? BcKind::mixed : BcKind::dirichlet;
}

void check_bc(const std::string& example, const std::string& bc) {
  if (bc.empty()) return;
  const std::string expected = bc_name(default_bc(example));
  if (bc != expected)
    throw std::invalid_argument("example " + example + " is posed with " + expected +
                                " boundary conditions, not " + bc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-fractional diffusion on a sector with a re-entrant corner"};
  app.require_subcommand(1);

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "generate a graded sector mesh");
  double mesh_beta = 2.0 / 3.0, mesh_hstar = 0.125, mesh_gamma = 1.0;
  std::string mesh_out;
  mesh_cmd->add_option("--beta", mesh_beta, "aperture parameter (angle pi/beta)");
  mesh_cmd->add_option("--hstar", mesh_hstar, "nominal mesh size");
  mesh_cmd->add_option("--gamma", mesh_gamma, "grading exponent");
  mesh_cmd->add_option("--out", mesh_out, "output file (stdout if omitted)");

  // mlf
  auto* mlf_cmd = app.add_subcommand("mlf", "evaluate E_alpha(-x)");
  double mlf_alpha = 0.5, mlf_x = 1.0;
  mlf_cmd->add_option("--alpha", mlf_alpha)->required();
  mlf_cmd->add_option("--x", mlf_x)->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "evaluate U_{M,h}(t) and write nodal values");
  std::string solve_example = "1", solve_bc, solve_out;
  double solve_alpha = 0.5, solve_hstar = 0.0625, solve_gamma = 1.5, solve_t = 1.0;
  int solve_M = kDefaultContourM;
  solve_cmd->add_option("--example", solve_example)->check(CLI::IsMember({"1", "2"}));
  solve_cmd->add_option("--alpha", solve_alpha);
  solve_cmd->add_option("--hstar", solve_hstar);
  solve_cmd->add_option("--gamma", solve_gamma);
  solve_cmd->add_option("--t", solve_t);
  solve_cmd->add_option("--M", solve_M);
  solve_cmd->add_option("--bc", solve_bc)->check(CLI::IsMember({"dirichlet", "mixed"}));
  solve_cmd->add_option("--out", solve_out, "CSV output (stdout if omitted)");

  // converge
  auto* conv_cmd = app.add_subcommand("converge", "run a convergence study");
  std::string conv_example = "1", conv_bc, conv_out, conv_list = "2^-3,2^-4,2^-5,2^-6";
  std::string conv_fit;
  double conv_alpha = 0.5, conv_gamma = 1.0, conv_t = 1.0;
  int conv_M = kDefaultContourM;
  conv_cmd->add_option("--example", conv_example)
      ->check(CLI::IsMember({"1", "2", "elliptic"}));
  conv_cmd->add_option("--alpha", conv_alpha);
  conv_cmd->add_option("--gamma", conv_gamma);
  conv_cmd->add_option("--t", conv_t);
  conv_cmd->add_option("--M", conv_M);
  conv_cmd->add_option("--hstar-list", conv_list, "comma separated, e.g. 2^-3,2^-4");
  conv_cmd->add_option("--bc", conv_bc)->check(CLI::IsMember({"dirichlet", "mixed"}));
  conv_cmd->add_option("--fit", conv_fit, "slope abscissa: dofs or h")
      ->check(CLI::IsMember({"dofs", "h"}));
  conv_cmd->add_option("--out", conv_out, "CSV output (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mesh_cmd) {
      const Mesh mesh = generate_sector_mesh(mesh_beta, mesh_hstar, mesh_gamma);
      std::ofstream file;
      write_mesh(open_output(mesh_out, file), mesh);
      const MeshStats stats = mesh_stats(mesh);
      std::cerr << stats.n_vertices << " vertices, " << stats.n_triangles
                << " triangles, h_max=" << stats.h_max << ", min angle "
                << stats.min_angle << " deg\n";
    } else if (*mlf_cmd) {
      std::cout << std::setprecision(16) << mittag_leffler_neg(mlf_alpha, mlf_x) << '\n';
    } else if (*solve_cmd) {
      check_bc(solve_example, solve_bc);
      const ProblemSpec problem = time_problem(solve_example, solve_alpha);
      const Mesh mesh = generate_sector_mesh(problem.beta, solve_hstar, solve_gamma);
      const Semidiscretization sd(problem, mesh);
      const auto u = sd.evolve(solve_t, solve_M);
      const auto nodal = to_vertex_values(sd.dofmap(), u);
      std::ofstream file;
      std::ostream& os = open_output(solve_out, file);
      os << std::setprecision(10) << "x,y,value\n";
      for (std::size_t v = 0; v < mesh.n_vertices(); ++v)
        os << mesh.vertices[v].x << ',' << mesh.vertices[v].y << ',' << nodal[v] << '\n';
      const double err = l2_error(mesh, sd.dofmap(), u, problem.exact_at(solve_t));
      std::cerr << "N=" << sd.dofmap().n_dofs << " L2 error at t=" << solve_t << ": "
                << err << '\n';
    } else if (*conv_cmd) {
      ConvergenceOptions opts;
      opts.gamma = conv_gamma;
      opts.h_stars = parse_hstar_list(conv_list);
      opts.t = conv_t;
      opts.M = conv_M;
      ConvergenceReport report;
      if (conv_example == "elliptic") {
        if (!conv_bc.empty() && conv_bc != "dirichlet")
          throw std::invalid_argument("the elliptic example is posed with dirichlet conditions");
        opts.axis = conv_fit == "dofs" ? RateAxis::dofs : RateAxis::h;
        report = run_convergence(elliptic_singular(), opts);
      } else {
        check_bc(conv_example, conv_bc);
        const RateAxis fallback = conv_example == "1" ? RateAxis::dofs : RateAxis::h;
        opts.axis = conv_fit.empty() ? fallback
                                     : (conv_fit == "dofs" ? RateAxis::dofs : RateAxis::h);
        report = run_convergence(time_problem(conv_example, conv_alpha), opts);
      }
      std::ofstream file;
      write_report_csv(open_output(conv_out, file), report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
