#pragma once

#include <array>
#include <span>
#include <vector>

#include "fracfem/common.hpp"
#include "fracfem/ldlt.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/sparse.hpp"

namespace fracfem {

/// natural: no constraints at all (used for consistency checks).
enum class BcKind { dirichlet, mixed, natural };

const char* bc_name(BcKind bc);

struct DofMap {
  static constexpr int kConstrained = -1;
  std::vector<int> vertex_to_dof;
  int n_dofs = 0;
  BcKind bc = BcKind::dirichlet;

  bool is_free(int vertex) const { return vertex_to_dof[vertex] != kConstrained; }
  std::vector<int> dof_to_vertex() const;
};

/// Dirichlet constrains every boundary vertex. Mixed constrains the theta = 0
/// edge and the arc and leaves the interior of the theta = pi/beta edge free.
DofMap make_dofmap(const Mesh& mesh, BcKind bc);

/// Sparsity pattern over free dofs plus, for every triangle, the nine CSR
/// slots its element matrix scatters into (-1 where a row or column is
/// constrained). Triangles are greedily coloured so that no two triangles of
/// one colour share a vertex.
struct AssemblyPlan {
  SparseMatrix pattern;  // values zero
  std::vector<std::array<int, 9>> scatter;
  std::vector<std::vector<int>> colors;
};

AssemblyPlan make_assembly_plan(const Mesh& mesh, const DofMap& dofmap);

SparseMatrix assemble_mass(const Mesh& mesh, const AssemblyPlan& plan,
                           Exec exec = Exec::parallel);
SparseMatrix assemble_stiffness(const Mesh& mesh, const AssemblyPlan& plan,
                                double diffusivity, Exec exec = Exec::parallel);

SparseMatrix assemble_mass(const Mesh& mesh, const DofMap& dofmap,
                           Exec exec = Exec::parallel);
SparseMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofmap,
                                double diffusivity, Exec exec = Exec::parallel);

/// Exact P1 element blocks for the triangle (a, b, c).
std::array<double, 9> element_mass(const Point& a, const Point& b, const Point& c);
std::array<double, 9> element_stiffness(const Point& a, const Point& b,
                                        const Point& c, double diffusivity);

inline constexpr int kDefaultLoadDegree = 4;
inline constexpr int kOriginLoadDegree = 6;

/// b_i = integral of g * phi_i over free basis functions. Triangles with
/// dist(0, T) < h^gamma use at least the degree-6 rule. Throws
/// std::domain_error if g returns a non-finite value.
std::vector<double> assemble_load(const Mesh& mesh, const DofMap& dofmap,
                                  const ScalarField& g,
                                  int quad_degree = kDefaultLoadDegree,
                                  Exec exec = Exec::parallel);
std::vector<Complex> assemble_load(const Mesh& mesh, const DofMap& dofmap,
                                   const ComplexField& g,
                                   int quad_degree = kDefaultLoadDegree,
                                   Exec exec = Exec::parallel);

/// L2 projection onto V_h: solves M x = assemble_load(u0).
std::vector<double> l2_project(const Mesh& mesh, const DofMap& dofmap,
                               const ScalarField& u0,
                               int quad_degree = kDefaultLoadDegree);

inline constexpr double kSolveTolerance = 1e-10;

/// Sparse LDL^T with AMD ordering plus iterative refinement. Throws
/// SolverError if the relative residual stays above 1e-10.
std::vector<double> solve_real_spd(const SparseMatrix& a,
                                   std::span<const double> b);

/// Solves (zalpha M + S) x = b. The matrix is complex symmetric, never
/// treated as Hermitian.
std::vector<Complex> solve_complex_symmetric(Complex zalpha,
                                             const SparseMatrix& mass,
                                             const SparseMatrix& stiffness,
                                             std::span<const Complex> b);

/// Factor-and-solve with refinement against a prepared symbolic analysis.
template <class Scalar>
std::vector<Scalar> solve_refined(const CsrMatrix<Scalar>& a,
                                  const LdltFactor<Scalar>& factor,
                                  std::span<const Scalar> b);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // M-normalised
  int iterations = 0;
};

/// Smallest eigenpair of S x = lambda M x by inverse iteration.
EigenPair smallest_generalized_eigenpair(const SparseMatrix& stiffness,
                                         const SparseMatrix& mass,
                                         double tol = 1e-12,
                                         int max_iterations = 500);

/// Expands dof coefficients to one value per vertex (zero on constrained
/// vertices).
std::vector<double> to_vertex_values(const DofMap& dofmap,
                                     std::span<const double> coefficients);

/// Nodal interpolant of f on the free dofs.
std::vector<double> interpolate(const Mesh& mesh, const DofMap& dofmap,
                                const ScalarField& f);

/// Largest triangle diameter.
double max_diameter(const Mesh& mesh);

}  // namespace fracfem
