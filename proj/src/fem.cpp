#include "fracfem/fem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "fracfem/quadrature.hpp"

namespace fracfem {

const char* bc_name(BcKind bc) {
  switch (bc) {
    case BcKind::dirichlet: return "dirichlet";
    case BcKind::mixed: return "mixed";
    case BcKind::natural: return "natural";
  }
  return "?";
}

std::vector<int> DofMap::dof_to_vertex() const {
  std::vector<int> out(n_dofs);
  for (std::size_t v = 0; v < vertex_to_dof.size(); ++v)
    if (vertex_to_dof[v] != kConstrained) out[vertex_to_dof[v]] = static_cast<int>(v);
  return out;
}

DofMap make_dofmap(const Mesh& mesh, BcKind bc) {
  DofMap map;
  map.bc = bc;
  std::vector<bool> constrained(mesh.n_vertices(), false);
  if (bc != BcKind::natural) {
    for (const auto& e : mesh.boundary_edges) {
      if (bc == BcKind::mixed && e.tag == EdgeTag::radial_theta_max) continue;
      constrained[e.v[0]] = constrained[e.v[1]] = true;
    }
  }
  map.vertex_to_dof.resize(mesh.n_vertices());
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v)
    map.vertex_to_dof[v] = constrained[v] ? DofMap::kConstrained : map.n_dofs++;
  return map;
}

AssemblyPlan make_assembly_plan(const Mesh& mesh, const DofMap& dofmap) {
  AssemblyPlan plan;
  const int n = dofmap.n_dofs;
  std::vector<std::vector<int>> rows(n);
  for (const auto& tri : mesh.triangles) {
    for (int a : tri) {
      const int i = dofmap.vertex_to_dof[a];
      if (i == DofMap::kConstrained) continue;
      for (int b : tri) {
        const int j = dofmap.vertex_to_dof[b];
        if (j != DofMap::kConstrained) rows[i].push_back(j);
      }
    }
  }
  SparseMatrix& pat = plan.pattern;
  pat.n = n;
  pat.row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    pat.row_ptr[i + 1] = pat.row_ptr[i] + static_cast<int>(r.size());
  }
  pat.col.reserve(pat.row_ptr[n]);
  for (auto& r : rows) pat.col.insert(pat.col.end(), r.begin(), r.end());
  pat.val.assign(pat.col.size(), 0.0);

  plan.scatter.resize(mesh.n_triangles());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const int i = dofmap.vertex_to_dof[tri[a]];
        const int j = dofmap.vertex_to_dof[tri[b]];
        plan.scatter[t][3 * a + b] =
            (i == DofMap::kConstrained || j == DofMap::kConstrained)
                ? -1
                : static_cast<int>(pat.find(i, j));
      }
    }
  }

  std::vector<std::uint64_t> used(mesh.n_vertices(), 0);
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const std::uint64_t busy = used[tri[0]] | used[tri[1]] | used[tri[2]];
    if (busy == ~std::uint64_t{0})
      throw std::runtime_error("make_assembly_plan: vertex valence too high");
    const int color = std::countr_one(busy);
    for (int v : tri) used[v] |= std::uint64_t{1} << color;
    if (static_cast<std::size_t>(color) >= plan.colors.size())
      plan.colors.resize(color + 1);
    plan.colors[color].push_back(static_cast<int>(t));
  }
  return plan;
}

std::array<double, 9> element_mass(const Point& a, const Point& b, const Point& c) {
  const double area =
      0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
  const double off = area / 12.0;
  const double diag = area / 6.0;
  return {diag, off, off, off, diag, off, off, off, diag};
}

std::array<double, 9> element_stiffness(const Point& a, const Point& b,
                                        const Point& c, double diffusivity) {
  const double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  // Rows of 2A * grad(lambda_i).
  const double g[3][2] = {{b.y - c.y, c.x - b.x},
                          {c.y - a.y, a.x - c.x},
                          {a.y - b.y, b.x - a.x}};
  const double scale = diffusivity / (2.0 * std::abs(det));
  std::array<double, 9> k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k[3 * i + j] = scale * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
  return k;
}

namespace {

template <class ElementFn>
SparseMatrix assemble_matrix(const Mesh& mesh, const AssemblyPlan& plan,
                             ElementFn&& element, Exec exec) {
  SparseMatrix out = plan.pattern;
  std::fill(out.val.begin(), out.val.end(), 0.0);
  double* val = out.val.data();
  auto scatter_one = [&](std::size_t t) {
    const auto& tri = mesh.triangles[t];
    const auto k = element(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                           mesh.vertices[tri[2]]);
    const auto& slots = plan.scatter[t];
    for (int e = 0; e < 9; ++e)
      if (slots[e] >= 0) val[slots[e]] += k[e];
  };
  if (exec == Exec::serial) {
    for (std::size_t t = 0; t < mesh.n_triangles(); ++t) scatter_one(t);
  } else {
    for (const auto& color : plan.colors) {
      const long count = static_cast<long>(color.size());
#pragma omp parallel for schedule(static)
      for (long c = 0; c < count; ++c) scatter_one(static_cast<std::size_t>(color[c]));
    }
  }
  return out;
}

double mesh_parameter_power(const Mesh& mesh) {
  return std::pow(max_diameter(mesh), mesh.gamma);
}

template <class T>
std::vector<T> assemble_load_impl(const Mesh& mesh, const DofMap& dofmap,
                                  const std::function<T(double, double)>& g,
                                  int quad_degree, Exec exec) {
  if (quad_degree < 1 || quad_degree > kMaxRuleDegree)
    throw std::invalid_argument("assemble_load: unsupported quadrature degree");
  const TriangleRule& base = triangle_rule(quad_degree);
  const TriangleRule& origin =
      triangle_rule(std::max(quad_degree, kOriginLoadDegree));
  const double origin_radius = mesh_parameter_power(mesh);
  const std::size_t nt = mesh.n_triangles();
  std::vector<std::array<T, 3>> local(nt);
  // Non-finite evaluations are recorded per element and reported after the
  // loop; exceptions must not escape an OpenMP region.
  std::vector<char> bad(nt, 0);

  auto integrate = [&](std::size_t t) {
    const auto& tri = mesh.triangles[t];
    const Point& a = mesh.vertices[tri[0]];
    const Point& b = mesh.vertices[tri[1]];
    const Point& c = mesh.vertices[tri[2]];
    const double area = std::abs(triangle_area(mesh, t));
    const TriangleRule& rule =
        distance_to_origin(mesh, t) < origin_radius ? origin : base;
    std::array<T, 3> acc{};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto& l = rule.points[q];
      const double x = l[0] * a.x + l[1] * b.x + l[2] * c.x;
      const double y = l[0] * a.y + l[1] * b.y + l[2] * c.y;
      const T value = g(x, y);
      if (!std::isfinite(std::abs(value))) {
        bad[t] = 1;
        return;
      }
      const T wv = value * (rule.weights[q] * area);
      for (int k = 0; k < 3; ++k) acc[k] += wv * l[k];
    }
    local[t] = acc;
  };

  if (exec == Exec::serial) {
    for (std::size_t t = 0; t < nt; ++t) integrate(t);
  } else {
    const long count = static_cast<long>(nt);
#pragma omp parallel for schedule(dynamic, 256)
    for (long t = 0; t < count; ++t) integrate(static_cast<std::size_t>(t));
  }

  std::vector<T> b(dofmap.n_dofs, T{});
  for (std::size_t t = 0; t < nt; ++t) {
    if (bad[t]) {
      std::ostringstream msg;
      const auto& v = mesh.vertices[mesh.triangles[t][0]];
      msg << "assemble_load: non-finite field value in triangle " << t
          << " near (" << v.x << ", " << v.y << ")";
      throw std::domain_error(msg.str());
    }
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int i = dofmap.vertex_to_dof[tri[k]];
      if (i != DofMap::kConstrained) b[i] += local[t][k];
    }
  }
  return b;
}

template <class Scalar>
double relative_residual(const CsrMatrix<Scalar>& a, std::span<const Scalar> x,
                         std::span<const Scalar> b, std::vector<Scalar>& r) {
  r = multiply(a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double bn = norm2(b);
  return bn > 0.0 ? norm2(std::span<const Scalar>(r)) / bn
                  : norm2(std::span<const Scalar>(r));
}

}  // namespace

double max_diameter(const Mesh& mesh) {
  double h = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t)
    h = std::max(h, triangle_diameter(mesh, t));
  return h;
}

SparseMatrix assemble_mass(const Mesh& mesh, const AssemblyPlan& plan, Exec exec) {
  return assemble_matrix(mesh, plan, element_mass, exec);
}

SparseMatrix assemble_stiffness(const Mesh& mesh, const AssemblyPlan& plan,
                                double diffusivity, Exec exec) {
  if (!(diffusivity > 0.0))
    throw std::invalid_argument("assemble_stiffness: diffusivity must be positive");
  return assemble_matrix(
      mesh, plan,
      [diffusivity](const Point& a, const Point& b, const Point& c) {
        return element_stiffness(a, b, c, diffusivity);
      },
      exec);
}

SparseMatrix assemble_mass(const Mesh& mesh, const DofMap& dofmap, Exec exec) {
  return assemble_mass(mesh, make_assembly_plan(mesh, dofmap), exec);
}

SparseMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofmap,
                                double diffusivity, Exec exec) {
  return assemble_stiffness(mesh, make_assembly_plan(mesh, dofmap), diffusivity, exec);
}

std::vector<double> assemble_load(const Mesh& mesh, const DofMap& dofmap,
                                  const ScalarField& g, int quad_degree, Exec exec) {
  return assemble_load_impl<double>(mesh, dofmap, g, quad_degree, exec);
}

std::vector<Complex> assemble_load(const Mesh& mesh, const DofMap& dofmap,
                                   const ComplexField& g, int quad_degree,
                                   Exec exec) {
  return assemble_load_impl<Complex>(mesh, dofmap, g, quad_degree, exec);
}

template <class Scalar>
std::vector<Scalar> solve_refined(const CsrMatrix<Scalar>& a,
                                  const LdltFactor<Scalar>& factor,
                                  std::span<const Scalar> b) {
  std::vector<Scalar> x = factor.solve(b);
  std::vector<Scalar> r;
  double res = relative_residual(a, std::span<const Scalar>(x), b, r);
  // A couple of refinement sweeps recover the digits lost to pivot growth.
  for (int sweep = 0; sweep < 3 && res > 1e-14; ++sweep) {
    factor.solve_in_place(r);
    std::vector<Scalar> trial = x;
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] += r[i];
    std::vector<Scalar> r_trial;
    const double res_trial =
        relative_residual(a, std::span<const Scalar>(trial), b, r_trial);
    if (!(res_trial < res)) break;
    x.swap(trial);
    r.swap(r_trial);
    res = res_trial;
  }
  if (!(res <= kSolveTolerance)) {
    std::ostringstream msg;
    msg << "linear solve missed residual target: " << res;
    throw SolverError(msg.str(), res);
  }
  return x;
}

template std::vector<double> solve_refined(const CsrMatrix<double>&,
                                           const LdltFactor<double>&,
                                           std::span<const double>);
template std::vector<Complex> solve_refined(const CsrMatrix<Complex>&,
                                            const LdltFactor<Complex>&,
                                            std::span<const Complex>);

std::vector<double> solve_real_spd(const SparseMatrix& a, std::span<const double> b) {
  if (b.size() != static_cast<std::size_t>(a.n))
    throw std::invalid_argument("solve_real_spd: dimension mismatch");
  auto symbolic = std::make_shared<const SymbolicLdlt>(a);
  const LdltFactor<double> factor(symbolic, a);
  return solve_refined(a, factor, b);
}

std::vector<Complex> solve_complex_symmetric(Complex zalpha,
                                             const SparseMatrix& mass,
                                             const SparseMatrix& stiffness,
                                             std::span<const Complex> b) {
  if (!std::isfinite(zalpha.real()) || !std::isfinite(zalpha.imag()))
    throw std::invalid_argument("solve_complex_symmetric: non-finite shift");
  if (b.size() != static_cast<std::size_t>(mass.n))
    throw std::invalid_argument("solve_complex_symmetric: dimension mismatch");
  const ComplexSparseMatrix a = combine(zalpha, mass, stiffness);
  auto symbolic = std::make_shared<const SymbolicLdlt>(a);
  const LdltFactor<Complex> factor(symbolic, a);
  return solve_refined(a, factor, b);
}

std::vector<double> l2_project(const Mesh& mesh, const DofMap& dofmap,
                               const ScalarField& u0, int quad_degree) {
  const SparseMatrix mass = assemble_mass(mesh, dofmap);
  const std::vector<double> b = assemble_load(mesh, dofmap, u0, quad_degree);
  return solve_real_spd(mass, b);
}

EigenPair smallest_generalized_eigenpair(const SparseMatrix& stiffness,
                                         const SparseMatrix& mass, double tol,
                                         int max_iterations) {
  const int n = stiffness.n;
  auto symbolic = std::make_shared<const SymbolicLdlt>(stiffness);
  const LdltFactor<double> factor(symbolic, stiffness);
  EigenPair pair;
  std::vector<double> x(n, 1.0);
  double lambda = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<double> y = multiply(mass, std::span<const double>(x));
    factor.solve_in_place(y);
    const double norm = energy_norm(mass, y);
    for (double& v : y) v /= norm;
    const auto sy = multiply(stiffness, std::span<const double>(y));
    double rq = 0.0;
    for (int i = 0; i < n; ++i) rq += y[i] * sy[i];
    x.swap(y);
    pair.iterations = it;
    if (it > 1 && std::abs(rq - lambda) <= tol * std::abs(rq)) {
      lambda = rq;
      break;
    }
    lambda = rq;
  }
  pair.value = lambda;
  pair.vector = std::move(x);
  return pair;
}

std::vector<double> to_vertex_values(const DofMap& dofmap,
                                     std::span<const double> coefficients) {
  std::vector<double> out(dofmap.vertex_to_dof.size(), 0.0);
  for (std::size_t v = 0; v < out.size(); ++v) {
    const int i = dofmap.vertex_to_dof[v];
    if (i != DofMap::kConstrained) out[v] = coefficients[i];
  }
  return out;
}

std::vector<double> interpolate(const Mesh& mesh, const DofMap& dofmap,
                                const ScalarField& f) {
  std::vector<double> out(dofmap.n_dofs);
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    const int i = dofmap.vertex_to_dof[v];
    if (i != DofMap::kConstrained) out[i] = f(mesh.vertices[v].x, mesh.vertices[v].y);
  }
  return out;
}

}  // namespace fracfem
