#pragma once

#include <cmath>

#include "fracfem/mesh.hpp"

namespace fracfem::testing {

// The triangle (0,0), (1,0), (0,1) with its three edges tagged.
inline Mesh unit_right_triangle() {
  Mesh m;
  m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  m.triangles = {{0, 1, 2}};
  m.boundary_edges = {{{0, 1}, EdgeTag::radial_theta0},
                      {{1, 2}, EdgeTag::arc},
                      {{2, 0}, EdgeTag::radial_theta_max}};
  m.h_star = 1.0;
  return m;
}

// Unit square [0,1]^2 split into n x n cells, two triangles each.
inline Mesh unit_square(int n) {
  Mesh m;
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  for (int i = 0; i < n; ++i) {
    m.boundary_edges.push_back({{id(i, 0), id(i + 1, 0)}, EdgeTag::radial_theta0});
    m.boundary_edges.push_back({{id(n, i), id(n, i + 1)}, EdgeTag::arc});
    m.boundary_edges.push_back({{id(i + 1, n), id(i, n)}, EdgeTag::arc});
    m.boundary_edges.push_back({{id(0, i + 1), id(0, i)}, EdgeTag::radial_theta_max});
  }
  m.h_star = 1.0 / n;
  return m;
}

inline double pow2(int k) { return std::ldexp(1.0, k); }

}  // namespace fracfem::testing
