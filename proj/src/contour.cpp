#include "fracfem/contour.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

namespace fracfem {

ContourParams make_contour(int M, double t) {
  if (M < 2) throw std::invalid_argument("make_contour: M must be >= 2");
  if (!(t > 0.0)) throw std::invalid_argument("make_contour: t must be positive");
  ContourParams c;
  c.M = M;
  c.t = t;
  c.mu = kContourMuScale * M / t;
  c.dxi = kContourStepScale / M;
  c.nodes.resize(M + 1);
  c.derivatives.resize(M + 1);
  const Complex i{0.0, 1.0};
  for (int j = 0; j <= M; ++j) {
    const Complex w{c.delta, -j * c.dxi};  // delta - i xi_j
    c.nodes[j] = c.mu * (1.0 - std::sin(w));
    c.derivatives[j] = i * c.mu * std::cos(w);
  }
  c.nodes[0] = Complex{c.mu * (1.0 - std::sin(c.delta)), 0.0};
  return c;
}

double invert_scalar(const std::function<Complex(Complex)>& transform, double t,
                     int M) {
  const ContourParams c = make_contour(M, t);
  double sum = 0.0;
  for (int j = 0; j <= M; ++j) {
    const Complex term = std::exp(c.nodes[j] * t) * transform(c.nodes[j]) * c.derivatives[j];
    sum += (j == 0 ? 0.5 : 1.0) * term.imag();
  }
  return c.dxi / kPi * sum;
}

LaplaceSystem::LaplaceSystem(SparseMatrix mass, SparseMatrix stiffness)
    : mass_(std::move(mass)), stiffness_(std::move(stiffness)) {
  if (!mass_.same_pattern(stiffness_))
    throw std::invalid_argument("LaplaceSystem: mass and stiffness patterns differ");
  symbolic_ = std::make_shared<const SymbolicLdlt>(mass_);
}

std::vector<Complex> LaplaceSystem::solve(Complex w,
                                          std::span<const Complex> rhs) const {
  const ComplexSparseMatrix a = combine(w, mass_, stiffness_);
  const LdltFactor<Complex> factor(symbolic_, a);
  ++solves_;
  return solve_refined(a, factor, rhs);
}

namespace {

std::vector<Complex> node_solve(Complex z, double alpha, const LaplaceSystem& system,
                                std::span<const double> mass_u0h,
                                const LoadFunction& fhat) {
  const Complex zalpha = std::pow(z, alpha);
  const Complex zalpha1 = std::pow(z, alpha - 1.0);
  std::vector<Complex> rhs(mass_u0h.begin(), mass_u0h.end());
  if (fhat) {
    const std::vector<Complex> load = fhat(z);
    if (load.size() != rhs.size())
      throw std::invalid_argument("uhat_solve: load vector has wrong size");
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += load[i];
  }
  for (auto& v : rhs) v *= zalpha1;
  return system.solve(zalpha, rhs);
}

std::vector<double> mass_times(const LaplaceSystem& system, std::span<const double> u0h) {
  if (u0h.size() != static_cast<std::size_t>(system.size()))
    throw std::invalid_argument("initial data has wrong size");
  return multiply(system.mass(), u0h);
}

}  // namespace

std::vector<Complex> uhat_solve(Complex z, double alpha, const LaplaceSystem& system,
                                std::span<const double> u0h,
                                const LoadFunction& fhat) {
  const auto mu0 = mass_times(system, u0h);
  return node_solve(z, alpha, system, mu0, fhat);
}

std::vector<Complex> uhat_solve(Complex z, double alpha, const SparseMatrix& mass,
                                const SparseMatrix& stiffness,
                                std::span<const double> u0h,
                                const LoadFunction& fhat) {
  const LaplaceSystem system(mass, stiffness);
  return uhat_solve(z, alpha, system, u0h, fhat);
}

std::vector<double> inverse_laplace_evolve(const LaplaceSystem& system,
                                           double alpha,
                                           std::span<const double> u0h,
                                           const LoadFunction& fhat, double t,
                                           int M, Exec exec) {
  const ContourParams c = make_contour(M, t);
  const auto mu0 = mass_times(system, u0h);
  const std::size_t n = u0h.size();

  // contributions[j] = weight_j * Im(T_j); summed afterwards in increasing j
  // so the result does not depend on thread scheduling.
  std::vector<std::vector<double>> contributions(M + 1);
  std::vector<std::exception_ptr> errors(M + 1);
  auto run_node = [&](int j) {
    try {
      const auto uhat = node_solve(c.nodes[j], alpha, system, mu0, fhat);
      const Complex factor = std::exp(c.nodes[j] * t) * c.derivatives[j];
      const double weight = j == 0 ? 0.5 : 1.0;
      std::vector<double> part(n);
      for (std::size_t i = 0; i < n; ++i) part[i] = weight * (factor * uhat[i]).imag();
      contributions[j] = std::move(part);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  if (exec == Exec::serial) {
    for (int j = 0; j <= M; ++j) run_node(j);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j <= M; ++j) run_node(j);
  }
  for (int j = 0; j <= M; ++j) {
    if (!errors[j]) continue;
    try {
      std::rethrow_exception(errors[j]);
    } catch (const SolverError& e) {
      throw SolverError("contour node " + std::to_string(j) + ": " + e.what(),
                        e.residual());
    }
  }

  std::vector<double> u(n, 0.0);
  for (int j = 0; j <= M; ++j)
    for (std::size_t i = 0; i < n; ++i) u[i] += contributions[j][i];
  const double scale = c.dxi / kPi;
  for (double& v : u) v *= scale;
  return u;
}

std::vector<Complex> inverse_laplace_full_sum(const LaplaceSystem& system,
                                              double alpha,
                                              std::span<const double> u0h,
                                              const LoadFunction& fhat, double t,
                                              int M) {
  if (M < 2) throw std::invalid_argument("inverse_laplace_full_sum: M must be >= 2");
  if (!(t > 0.0)) throw std::invalid_argument("inverse_laplace_full_sum: t must be positive");
  const auto mu0 = mass_times(system, u0h);
  const double mu = kContourMuScale * M / t;
  const double dxi = kContourStepScale / M;
  const Complex i{0.0, 1.0};
  std::vector<Complex> u(u0h.size(), Complex{});
  for (int j = -M; j <= M; ++j) {
    const Complex w{kContourDelta, -j * dxi};
    const Complex z = mu * (1.0 - std::sin(w));
    const Complex dz = i * mu * std::cos(w);
    const auto uhat = node_solve(z, alpha, system, mu0, fhat);
    const Complex factor = std::exp(z * t) * dz;
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += factor * uhat[k];
  }
  const Complex scale = dxi / (2.0 * kPi * i);
  for (auto& v : u) v *= scale;
  return u;
}

Semidiscretization::Semidiscretization(const ProblemSpec& problem, const Mesh& mesh,
                                       Exec exec)
    : problem_(problem), mesh_(mesh), dofmap_(make_dofmap(mesh, problem.bc)) {
  const AssemblyPlan plan = make_assembly_plan(mesh_, dofmap_);
  system_ = std::make_unique<LaplaceSystem>(assemble_mass(mesh_, plan, exec),
                                            assemble_stiffness(mesh_, plan, problem_.K, exec));
  const auto b0 = assemble_load(mesh_, dofmap_, problem_.u0, kDefaultLoadDegree, exec);
  u0h_ = solve_real_spd(system_->mass(), b0);
  for (const auto& term : problem_.source)
    term_loads_.push_back(
        assemble_load(mesh_, dofmap_, term.field, kDefaultLoadDegree, exec));
}

LoadFunction Semidiscretization::source_load() const {
  if (term_loads_.empty()) return {};
  return [this](Complex z) {
    std::vector<Complex> load(dofmap_.n_dofs, Complex{});
    for (std::size_t k = 0; k < term_loads_.size(); ++k) {
      const Complex c = problem_.source[k].coefficient(z);
      const auto& b = term_loads_[k];
      for (std::size_t i = 0; i < load.size(); ++i) load[i] += c * b[i];
    }
    return load;
  };
}

std::vector<double> Semidiscretization::evolve(double t, int M, Exec exec) const {
  return inverse_laplace_evolve(*system_, problem_.alpha, u0h_, source_load(), t, M, exec);
}

std::vector<double> inverse_laplace_evolve(const ProblemSpec& problem, const Mesh& mesh,
                                           const DofMap& dofmap,
                                           const SparseMatrix& mass,
                                           const SparseMatrix& stiffness, double t,
                                           int M) {
  const LaplaceSystem system(mass, stiffness);
  const auto u0h = solve_real_spd(mass, assemble_load(mesh, dofmap, problem.u0));
  std::vector<std::vector<double>> loads;
  for (const auto& term : problem.source)
    loads.push_back(assemble_load(mesh, dofmap, term.field));
  LoadFunction fhat;
  if (!loads.empty()) {
    fhat = [&](Complex z) {
      std::vector<Complex> load(dofmap.n_dofs, Complex{});
      for (std::size_t k = 0; k < loads.size(); ++k) {
        const Complex c = problem.source[k].coefficient(z);
        for (std::size_t i = 0; i < load.size(); ++i) load[i] += c * loads[k][i];
      }
      return load;
    };
  }
  return inverse_laplace_evolve(system, problem.alpha, u0h, fhat, t, M);
}

}  // namespace fracfem
