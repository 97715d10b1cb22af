// Serial versus OpenMP timings for the hot kernels on one Example 1 mesh.

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>

#include "fracfem/contour.hpp"
#include "fracfem/harness.hpp"

using namespace fracfem;

namespace {

double best_of(int repeat, const std::function<void()>& body) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < repeat; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-12s %10.2f %10.2f %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark"};
  double hstar = 1.0 / 64.0, gamma = 1.5;
  int repeat = 3, M = kDefaultContourM;
  app.add_option("--hstar", hstar);
  app.add_option("--gamma", gamma);
  app.add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  app.add_option("--M", M);
  CLI11_PARSE(app, argc, argv);

  const ProblemSpec problem = example1(0.5);
  const Mesh mesh = generate_sector_mesh(problem.beta, hstar, gamma);
  const DofMap dofmap = make_dofmap(mesh, problem.bc);
  const AssemblyPlan plan = make_assembly_plan(mesh, dofmap);
  std::printf("h*=%g gamma=%g: %zu triangles, N=%d, %d threads\n", hstar, gamma,
              mesh.n_triangles(), dofmap.n_dofs, omp_get_max_threads());
  std::printf("%-12s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  auto both = [&](const char* name, const std::function<void(Exec)>& kernel) {
    const double s = best_of(repeat, [&] { kernel(Exec::serial); });
    const double p = best_of(repeat, [&] { kernel(Exec::parallel); });
    report(name, s, p);
  };

  both("mass", [&](Exec e) { (void)assemble_mass(mesh, plan, e); });
  both("stiffness", [&](Exec e) { (void)assemble_stiffness(mesh, plan, problem.K, e); });
  both("load", [&](Exec e) { (void)assemble_load(mesh, dofmap, problem.source[1].field, 4, e); });

  const Semidiscretization sd(problem, mesh);
  const auto u = sd.evolve(1.0, M);
  const ScalarField exact = problem.exact_at(1.0);
  both("l2_error", [&](Exec e) { (void)l2_error(mesh, dofmap, u, exact, kErrorQuadDegree, e); });
  both("evolve", [&](Exec e) { (void)sd.evolve(1.0, M, e); });
  return 0;
}
