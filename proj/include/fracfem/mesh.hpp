#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fracfem/common.hpp"

namespace fracfem {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class EdgeTag { radial_theta0, radial_theta_max, arc };

struct BoundaryEdge {
  std::array<int, 2> v;
  EdgeTag tag;
};

/// Triangulation of the sector {0 < r < 1, 0 < theta < pi/beta} with the
/// re-entrant corner at the origin. Triangles are counter-clockwise and the
/// arc r = 1 is represented by chords between its vertices.
struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double beta = 2.0 / 3.0;
  double gamma = 1.0;
  double h_star = 0.0;

  double aperture() const { return kPi / beta; }
  std::size_t n_vertices() const { return vertices.size(); }
  std::size_t n_triangles() const { return triangles.size(); }
};

struct GradingViolation {
  enum class Bound { lower, upper };
  int triangle;
  double diameter;
  double distance;  // dist(0, triangle)
  Bound bound;
  bool origin_zone;  // r < h^gamma, the h^gamma branch applied
};

struct GradingReport {
  bool pass = true;
  std::vector<GradingViolation> violations;
  // Extremes of diameter / reference size over all audited triangles.
  double observed_c = 0.0;
  double observed_C = 0.0;
  double h = 0.0;  // maximum element diameter used as the mesh parameter
};

struct MeshStats {
  double h_max = 0.0;
  std::size_t n_vertices = 0;
  std::size_t n_triangles = 0;
  double min_angle = 0.0;  // degrees
};

/// Ring-based graded mesh. Ring radii follow r_1 = h^gamma and
/// r_{i+1} = r_i + h * r_i^{1 - 1/gamma}, rescaled so that the outermost ring
/// is r = 1; each ring carries at least as many angular segments as the one
/// inside it.
///
/// Throws std::invalid_argument unless 0 < h_star <= 1/2, 1/2 < beta < 1 and
/// gamma >= 1.
Mesh generate_sector_mesh(double beta, double h_star, double gamma);

/// Audits the local refinement conditions with the mesh's own gamma.
GradingReport verify_grading(const Mesh& mesh, double c_lo, double c_hi);
/// Same audit with an explicitly supplied grading exponent.
GradingReport verify_grading(const Mesh& mesh, double gamma, double c_lo,
                             double c_hi);

MeshStats mesh_stats(const Mesh& mesh);

double triangle_area(const Mesh& mesh, std::size_t t);
double triangle_diameter(const Mesh& mesh, std::size_t t);
double distance_to_origin(const Mesh& mesh, std::size_t t);
/// Ratio of circumradius to inradius (2 for an equilateral triangle).
double radius_ratio(const Mesh& mesh, std::size_t t);
double total_area(const Mesh& mesh);

/// Each interior edge shared by exactly two triangles, each tagged boundary
/// edge by exactly one, and no untagged edge with a single triangle.
bool is_conforming(const Mesh& mesh);

/// Plain-text format: "V vertices T triangles B boundary_edges", then one
/// "x y" per vertex, one "i j k" per triangle and one "i j tag" per boundary
/// edge, followed by a "# beta=.. gamma=.. hstar=.." trailer.
void write_mesh(std::ostream& os, const Mesh& mesh);
/// Throws std::runtime_error on malformed input.
Mesh read_mesh(std::istream& is);

const char* edge_tag_name(EdgeTag tag);

}  // namespace fracfem
