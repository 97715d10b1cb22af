#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fracfem/common.hpp"
#include "fracfem/fem.hpp"
#include "fracfem/ldlt.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/problems.hpp"
#include "fracfem/sparse.hpp"

namespace fracfem {

inline constexpr double kContourDelta = 1.17210423;
inline constexpr double kContourMuScale = 4.49207528;
inline constexpr double kContourStepScale = 1.08179214;
inline constexpr int kDefaultContourM = 8;

/// Left branch of the hyperbola z(xi) = mu (1 - sin(delta - i xi)) sampled at
/// xi_j = j dxi for j = 0..M. Nodes with negative j are the conjugates and
/// are never stored.
struct ContourParams {
  int M = 0;
  double t = 0.0;
  double delta = kContourDelta;
  double mu = 0.0;
  double dxi = 0.0;
  std::vector<Complex> nodes;
  std::vector<Complex> derivatives;
};

/// mu = 4.49207528 M / t and dxi = 1.08179214 / M.
/// Throws std::invalid_argument for M < 2 or t <= 0.
ContourParams make_contour(int M, double t);

/// Folded trapezoidal sum (dxi/pi) (Im T_0 / 2 + sum_{j>=1} Im T_j) with
/// T_j = e^{z_j t} F(z_j) z'_j. Valid for F with F(conj z) = conj F(z).
double invert_scalar(const std::function<Complex(Complex)>& transform,
                     double t, int M = kDefaultContourM);

/// z -> load vector of f_hat(z) over the free dofs.
using LoadFunction = std::function<std::vector<Complex>(Complex z)>;

/// Mass and stiffness matrices with one symbolic factorisation shared by
/// every shifted matrix w M + S. solve() is safe to call concurrently.
class LaplaceSystem {
 public:
  LaplaceSystem(SparseMatrix mass, SparseMatrix stiffness);

  const SparseMatrix& mass() const { return mass_; }
  const SparseMatrix& stiffness() const { return stiffness_; }
  int size() const { return mass_.n; }

  /// Solves (w M + S) x = rhs to the 1e-10 residual contract.
  std::vector<Complex> solve(Complex w, std::span<const Complex> rhs) const;

  std::size_t solve_count() const { return solves_.load(); }
  void reset_solve_count() const { solves_.store(0); }

 private:
  SparseMatrix mass_;
  SparseMatrix stiffness_;
  std::shared_ptr<const SymbolicLdlt> symbolic_;
  mutable std::atomic<std::size_t> solves_{0};
};

/// Solves (z^a M + S) u = z^(a-1) (M u0h + fhat(z)) with the principal branch
/// of z^a. fhat may be empty (f = 0).
std::vector<Complex> uhat_solve(Complex z, double alpha,
                                const LaplaceSystem& system,
                                std::span<const double> u0h,
                                const LoadFunction& fhat);
std::vector<Complex> uhat_solve(Complex z, double alpha, const SparseMatrix& mass,
                                const SparseMatrix& stiffness,
                                std::span<const double> u0h,
                                const LoadFunction& fhat);

/// U_{M,h}(t) from M + 1 node solves, run concurrently under Exec::parallel
/// and reduced in increasing j.
std::vector<double> inverse_laplace_evolve(const LaplaceSystem& system,
                                           double alpha,
                                           std::span<const double> u0h,
                                           const LoadFunction& fhat, double t,
                                           int M = kDefaultContourM,
                                           Exec exec = Exec::parallel);

/// Reference evaluation of the unfolded sum over j = -M..M (2M + 1 serial
/// solves). The imaginary part of the result vanishes up to round-off.
std::vector<Complex> inverse_laplace_full_sum(const LaplaceSystem& system,
                                              double alpha,
                                              std::span<const double> u0h,
                                              const LoadFunction& fhat,
                                              double t, int M = kDefaultContourM);

/// A ProblemSpec discretised on a mesh: dof map, matrices, projected initial
/// data and the precomputed load vectors of the separable source terms.
class Semidiscretization {
 public:
  Semidiscretization(const ProblemSpec& problem, const Mesh& mesh,
                     Exec exec = Exec::parallel);
  Semidiscretization(const Semidiscretization&) = delete;
  Semidiscretization& operator=(const Semidiscretization&) = delete;

  const ProblemSpec& problem() const { return problem_; }
  const Mesh& mesh() const { return mesh_; }
  const DofMap& dofmap() const { return dofmap_; }
  const LaplaceSystem& system() const { return *system_; }
  const std::vector<double>& initial_data() const { return u0h_; }
  LoadFunction source_load() const;

  std::vector<double> evolve(double t, int M = kDefaultContourM,
                             Exec exec = Exec::parallel) const;

 private:
  ProblemSpec problem_;
  Mesh mesh_;
  DofMap dofmap_;
  std::unique_ptr<LaplaceSystem> system_;
  std::vector<double> u0h_;
  std::vector<std::vector<double>> term_loads_;
};

/// Convenience form: projects u0, assembles the source loads and evolves.
std::vector<double> inverse_laplace_evolve(const ProblemSpec& problem,
                                           const Mesh& mesh,
                                           const DofMap& dofmap,
                                           const SparseMatrix& mass,
                                           const SparseMatrix& stiffness,
                                           double t, int M = kDefaultContourM);

}  // namespace fracfem
