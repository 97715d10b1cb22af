#pragma once

#include <array>
#include <vector>

namespace fracfem {

/// Symmetric Gauss rule on a triangle. Points are barycentric coordinates and
/// weights are fractions of the triangle area (they sum to one).
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Dunavant rule exact for polynomials up to the requested degree (1..8).
/// All returned rules have positive weights and interior points; requests for
/// degree 3 and 7 are served by the degree 4 and 8 rules.
const TriangleRule& triangle_rule(int degree);

inline constexpr int kMaxRuleDegree = 8;

}  // namespace fracfem
