#include "fracfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fracfem {

namespace {

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double cross(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Distance from the origin to the segment [a, b].
double segment_distance(const Point& a, const Point& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double s = len2 > 0.0 ? -(a.x * dx + a.y * dy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(a.x + s * dx, a.y + s * dy);
}

std::vector<double> ring_radii(double h, double gamma) {
  std::vector<double> radii{0.0};
  double r = std::pow(h, gamma);
  radii.push_back(r);
  const double expo = 1.0 - 1.0 / gamma;
  while (r < 1.0 - 1e-12) {
    r += h * std::pow(r, expo);
    radii.push_back(r);
  }
  const double scale = radii.back();
  for (double& v : radii) v /= scale;
  radii.back() = 1.0;
  return radii;
}

}  // namespace

const char* edge_tag_name(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::radial_theta0: return "theta0";
    case EdgeTag::radial_theta_max: return "thetamax";
    case EdgeTag::arc: return "arc";
  }
  return "?";
}

Mesh generate_sector_mesh(double beta, double h_star, double gamma) {
  if (!(h_star > 0.0 && h_star <= 0.5))
    throw std::invalid_argument("generate_sector_mesh: h_star must lie in (0, 1/2]");
  if (!(beta > 0.5 && beta < 1.0))
    throw std::invalid_argument("generate_sector_mesh: beta must lie in (1/2, 1)");
  if (!(gamma >= 1.0))
    throw std::invalid_argument("generate_sector_mesh: gamma must be >= 1");

  Mesh mesh;
  mesh.beta = beta;
  mesh.gamma = gamma;
  mesh.h_star = h_star;
  const double aperture = mesh.aperture();
  const std::vector<double> radii = ring_radii(h_star, gamma);
  const std::size_t n_rings = radii.size() - 1;

  // Angular segment counts, nondecreasing outwards.
  std::vector<int> segments(n_rings + 1, 0);
  for (std::size_t i = 1; i <= n_rings; ++i) {
    const double width = radii[i] - radii[i - 1];
    const int wanted =
        static_cast<int>(std::ceil(aperture * radii[i] / width - 1e-9));
    segments[i] = std::max({wanted, segments[i - 1], 3});
  }

  mesh.vertices.push_back({0.0, 0.0});
  std::vector<std::vector<int>> ring_ids(n_rings + 1);
  std::vector<std::vector<double>> ring_angles(n_rings + 1);
  ring_ids[0] = {0};
  for (std::size_t i = 1; i <= n_rings; ++i) {
    const int m = segments[i];
    for (int k = 0; k <= m; ++k) {
      const double theta = (k == m) ? aperture : aperture * k / m;
      ring_ids[i].push_back(static_cast<int>(mesh.vertices.size()));
      ring_angles[i].push_back(theta);
      const double x = (k == 0) ? radii[i] : radii[i] * std::cos(theta);
      const double y = (k == 0) ? 0.0 : radii[i] * std::sin(theta);
      mesh.vertices.push_back({x, y});
    }
  }

  auto add_triangle = [&](int a, int b, int c) {
    if (cross(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]) < 0.0)
      std::swap(b, c);
    mesh.triangles.push_back({a, b, c});
  };

  // Fan around the corner.
  for (int k = 0; k < segments[1]; ++k)
    add_triangle(0, ring_ids[1][k], ring_ids[1][k + 1]);

  // Zipper between consecutive rings: always advance the side whose next
  // vertex has the smaller angle.
  for (std::size_t i = 2; i <= n_rings; ++i) {
    const auto& in = ring_ids[i - 1];
    const auto& out = ring_ids[i];
    const auto& in_ang = ring_angles[i - 1];
    const auto& out_ang = ring_angles[i];
    const std::size_t p = in.size() - 1;
    const std::size_t q = out.size() - 1;
    std::size_t a = 0, b = 0;
    while (a < p || b < q) {
      bool advance_outer;
      if (a == p) {
        advance_outer = true;
      } else if (b == q) {
        advance_outer = false;
      } else {
        advance_outer = out_ang[b + 1] <= in_ang[a + 1] + 1e-14;
      }
      if (advance_outer) {
        add_triangle(in[a], out[b], out[b + 1]);
        ++b;
      } else {
        add_triangle(in[a], out[b], in[a + 1]);
        ++a;
      }
    }
  }

  for (std::size_t i = 1; i <= n_rings; ++i) {
    const int prev0 = ring_ids[i - 1].front();
    const int prev1 = ring_ids[i - 1].back();
    mesh.boundary_edges.push_back(
        {{prev0, ring_ids[i].front()}, EdgeTag::radial_theta0});
    mesh.boundary_edges.push_back(
        {{prev1, ring_ids[i].back()}, EdgeTag::radial_theta_max});
  }
  const auto& outer = ring_ids[n_rings];
  for (std::size_t k = 0; k + 1 < outer.size(); ++k)
    mesh.boundary_edges.push_back({{outer[k], outer[k + 1]}, EdgeTag::arc});
  return mesh;
}

double triangle_area(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  return 0.5 * cross(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                     mesh.vertices[tri[2]]);
}

double triangle_diameter(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Point& a = mesh.vertices[tri[0]];
  const Point& b = mesh.vertices[tri[1]];
  const Point& c = mesh.vertices[tri[2]];
  return std::max({dist(a, b), dist(b, c), dist(c, a)});
}

double distance_to_origin(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Point& a = mesh.vertices[tri[0]];
  const Point& b = mesh.vertices[tri[1]];
  const Point& c = mesh.vertices[tri[2]];
  const Point o{0.0, 0.0};
  const double s0 = cross(a, b, o);
  const double s1 = cross(b, c, o);
  const double s2 = cross(c, a, o);
  const bool inside = (s0 >= 0 && s1 >= 0 && s2 >= 0) ||
                      (s0 <= 0 && s1 <= 0 && s2 <= 0);
  if (inside) return 0.0;
  return std::min({segment_distance(a, b), segment_distance(b, c),
                   segment_distance(c, a)});
}

double radius_ratio(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const double la = dist(mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
  const double lb = dist(mesh.vertices[tri[2]], mesh.vertices[tri[0]]);
  const double lc = dist(mesh.vertices[tri[0]], mesh.vertices[tri[1]]);
  const double area = std::abs(triangle_area(mesh, t));
  const double s = 0.5 * (la + lb + lc);
  const double inradius = area / s;
  const double circumradius = la * lb * lc / (4.0 * area);
  return circumradius / inradius;
}

double total_area(const Mesh& mesh) {
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t)
    sum += triangle_area(mesh, t);
  return sum;
}

GradingReport verify_grading(const Mesh& mesh, double c_lo, double c_hi) {
  return verify_grading(mesh, mesh.gamma, c_lo, c_hi);
}

GradingReport verify_grading(const Mesh& mesh, double gamma, double c_lo,
                             double c_hi) {
  GradingReport report;
  double h = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t)
    h = std::max(h, triangle_diameter(mesh, t));
  report.h = h;
  const double h_gamma = std::pow(h, gamma);
  const double expo = 1.0 - 1.0 / gamma;

  bool first = true;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const double d = triangle_diameter(mesh, t);
    const double r = distance_to_origin(mesh, t);
    if (r > 1.0 + 1e-12) continue;
    const bool origin_zone = r < h_gamma;
    const double reference = origin_zone ? h_gamma : h * std::pow(r, expo);
    const double ratio = d / reference;
    if (first) {
      report.observed_c = report.observed_C = ratio;
      first = false;
    } else {
      report.observed_c = std::min(report.observed_c, ratio);
      report.observed_C = std::max(report.observed_C, ratio);
    }
    if (ratio < c_lo || ratio > c_hi) {
      report.violations.push_back(
          {static_cast<int>(t), d, r,
           ratio < c_lo ? GradingViolation::Bound::lower
                        : GradingViolation::Bound::upper,
           origin_zone});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

MeshStats mesh_stats(const Mesh& mesh) {
  MeshStats stats;
  stats.n_vertices = mesh.n_vertices();
  stats.n_triangles = mesh.n_triangles();
  stats.min_angle = 180.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    stats.h_max = std::max(stats.h_max, triangle_diameter(mesh, t));
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const Point& p = mesh.vertices[tri[k]];
      const Point& q = mesh.vertices[tri[(k + 1) % 3]];
      const Point& s = mesh.vertices[tri[(k + 2) % 3]];
      const double ux = q.x - p.x, uy = q.y - p.y;
      const double vx = s.x - p.x, vy = s.y - p.y;
      const double angle =
          std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
      stats.min_angle = std::min(stats.min_angle, angle * 180.0 / kPi);
    }
  }
  return stats;
}

bool is_conforming(const Mesh& mesh) {
  std::map<std::pair<int, int>, int> edge_count;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) ++edge_count[key(tri[k], tri[(k + 1) % 3])];
  std::map<std::pair<int, int>, int> boundary;
  for (const auto& e : mesh.boundary_edges) ++boundary[key(e.v[0], e.v[1])];
  for (const auto& [e, n] : boundary) {
    if (n != 1) return false;
    auto it = edge_count.find(e);
    if (it == edge_count.end() || it->second != 1) return false;
  }
  for (const auto& [e, n] : edge_count) {
    if (n > 2) return false;
    if (n == 1 && !boundary.contains(e)) return false;
  }
  return true;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << mesh.vertices.size() << " vertices " << mesh.triangles.size()
     << " triangles " << mesh.boundary_edges.size() << " boundary_edges\n";
  os.precision(17);
  for (const auto& p : mesh.vertices) os << p.x << ' ' << p.y << '\n';
  for (const auto& t : mesh.triangles)
    os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges)
    os << e.v[0] << ' ' << e.v[1] << ' ' << edge_tag_name(e.tag) << '\n';
  os << "# beta=" << mesh.beta << " gamma=" << mesh.gamma
     << " hstar=" << mesh.h_star << '\n';
}

Mesh read_mesh(std::istream& is) {
  auto fail = [](const std::string& what) {
    throw std::runtime_error("read_mesh: " + what);
  };
  std::size_t nv = 0, nt = 0, nb = 0;
  std::string w1, w2, w3;
  if (!(is >> nv >> w1 >> nt >> w2 >> nb >> w3) || w1 != "vertices" ||
      w2 != "triangles" || w3 != "boundary_edges")
    fail("bad header");
  Mesh mesh;
  mesh.vertices.resize(nv);
  for (auto& p : mesh.vertices)
    if (!(is >> p.x >> p.y)) fail("truncated vertex list");
  mesh.triangles.resize(nt);
  for (auto& t : mesh.triangles) {
    if (!(is >> t[0] >> t[1] >> t[2])) fail("truncated triangle list");
    for (int v : t)
      if (v < 0 || static_cast<std::size_t>(v) >= nv) fail("vertex index out of range");
  }
  mesh.boundary_edges.resize(nb);
  for (auto& e : mesh.boundary_edges) {
    std::string tag;
    if (!(is >> e.v[0] >> e.v[1] >> tag)) fail("truncated boundary list");
    if (tag == "theta0") e.tag = EdgeTag::radial_theta0;
    else if (tag == "thetamax") e.tag = EdgeTag::radial_theta_max;
    else if (tag == "arc") e.tag = EdgeTag::arc;
    else fail("unknown edge tag '" + tag + "'");
  }
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) != 0) continue;
    std::istringstream ls(line.substr(1));
    std::string item;
    while (ls >> item) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) continue;
      const std::string k = item.substr(0, eq);
      const double v = std::stod(item.substr(eq + 1));
      if (k == "beta") mesh.beta = v;
      else if (k == "gamma") mesh.gamma = v;
      else if (k == "hstar") mesh.h_star = v;
    }
  }
  return mesh;
}

}  // namespace fracfem
