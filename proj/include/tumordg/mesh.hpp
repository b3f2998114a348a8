#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

namespace tumordg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

/// Oriented mesh edge. The owner triangle K is the incident triangle with
/// the smaller index; the unit normal points from K to the neighbor L
/// (outward on boundary edges, where neighbor == -1).
struct Edge {
  int v0 = -1;
  int v1 = -1;
  int owner = -1;
  int neighbor = -1;
  Vec2 normal{};
  double length = 0.0;
  double barycenter_distance = 0.0;  // D_e; interior edges only, else 0

  bool interior() const { return neighbor >= 0; }
};

/// Conforming 2D triangulation with the edge/area metadata used by the
/// P0/P1 spaces and the edge-based upwind form.
class Mesh {
public:
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_interior_edges() const { return num_interior_edges_; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Vec2& vertex(int j) const { return vertices_[j]; }
  const std::array<int, 3>& triangle(int k) const { return triangles_[k]; }
  const Edge& edge(int e) const { return edges_[e]; }

  double triangle_area(int k) const { return triangle_area_[k]; }
  const std::vector<double>& triangle_areas() const { return triangle_area_; }
  Vec2 barycenter(int k) const { return barycenter_[k]; }

  /// Sum of incident triangle areas per vertex (denominator of the
  /// area-weighted vertex regularization).
  double vertex_support_area(int j) const { return vertex_support_area_[j]; }
  const std::vector<double>& vertex_support_areas() const { return vertex_support_area_; }
  const std::vector<int>& vertex_triangles(int j) const { return vertex_triangles_[j]; }

  double total_area() const { return total_area_; }
  /// Mesh size: max over triangles of the circumscribed-circle diameter.
  double h() const { return h_; }

private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<double> triangle_area_;
  std::vector<Vec2> barycenter_;
  std::vector<double> vertex_support_area_;
  std::vector<std::vector<int>> vertex_triangles_;
  double total_area_ = 0.0;
  double h_ = 0.0;
  int num_interior_edges_ = 0;
};

/// Criss-cross triangulation of an axis-aligned rectangle: nx*ny cells,
/// each split into 4 triangles by both diagonals. Satisfies the
/// barycenter-orthogonality condition when the cells are square.
Mesh generate_crisscross(const Rect& domain, int nx, int ny);

struct AdmissibilityReport {
  struct Offender {
    int edge = -1;
    double deviation = 0.0;  // |sin| of angle between barycenter segment and edge normal
  };

  bool pass = true;
  double max_deviation = 0.0;
  int interior_edges = 0;
  std::vector<Offender> worst;  // up to 5, largest deviation first
};

/// Checks that for every interior edge the segment joining the adjacent
/// barycenters is orthogonal to the edge within tol (deviation measured as
/// |unit barycenter segment . unit edge tangent|).
AdmissibilityReport check_admissibility(const Mesh& mesh, double tol);

/// Plain-text mesh format: header "nv nt", nv lines "x y", nt lines
/// "i j k" (0-based, counterclockwise).
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);
void write_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace tumordg
