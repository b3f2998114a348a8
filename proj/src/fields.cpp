#include "tumordg/fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace tumordg {

namespace {

void require_p0(const P0Field& v, const Mesh& mesh, const char* who) {
  if (v.size() != mesh.num_triangles())
    throw std::invalid_argument(std::string(who) + ": P0 field size mismatch");
}

void require_p1(const P1Field& v, const Mesh& mesh, const char* who) {
  if (v.size() != mesh.num_vertices())
    throw std::invalid_argument(std::string(who) + ": P1 field size mismatch");
}

}  // namespace

P0Field project_p0(const P1Field& g, const Mesh& mesh) {
  require_p1(g, mesh, "project_p0");
  P0Field out(mesh.num_triangles(), 0.0);
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    out[k] = (g[t[0]] + g[t[1]] + g[t[2]]) / 3.0;
  }
  return out;
}

P1Field regularize_p1(const P0Field& v, const Mesh& mesh) {
  require_p0(v, mesh, "regularize_p1");
  P1Field out(mesh.num_vertices(), 0.0);
  for (int j = 0; j < mesh.num_vertices(); ++j) {
    double acc = 0.0;
    for (int k : mesh.vertex_triangles(j)) acc += mesh.triangle_area(k) * v[k];
    out[j] = acc / mesh.vertex_support_area(j);
  }
  return out;
}

P0Field project_p0_of_p1(const P1Field& w, const Mesh& mesh) {
  require_p1(w, mesh, "project_p0_of_p1");
  P0Field out(mesh.num_triangles(), 0.0);
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    out[k] = (w[t[0]] + w[t[1]] + w[t[2]]) / 3.0;
  }
  return out;
}

double lumped_inner(const P1Field& a, const P1Field& b, const Mesh& mesh) {
  require_p1(a, mesh, "lumped_inner");
  require_p1(b, mesh, "lumped_inner");
  double acc = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    const double w = mesh.triangle_area(k) / 3.0;
    acc += w * (a[t[0]] * b[t[0]] + a[t[1]] * b[t[1]] + a[t[2]] * b[t[2]]);
  }
  return acc;
}

double integrate(const P0Field& v, const Mesh& mesh) {
  require_p0(v, mesh, "integrate");
  double acc = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) acc += mesh.triangle_area(k) * v[k];
  return acc;
}

double integrate(const P1Field& v, const Mesh& mesh) {
  require_p1(v, mesh, "integrate");
  double acc = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    acc += mesh.triangle_area(k) * (v[t[0]] + v[t[1]] + v[t[2]]) / 3.0;
  }
  return acc;
}

double integrate_product(const P0Field& v, const P1Field& w, const Mesh& mesh) {
  require_p0(v, mesh, "integrate_product");
  require_p1(w, mesh, "integrate_product");
  double acc = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    acc += mesh.triangle_area(k) * v[k] * (w[t[0]] + w[t[1]] + w[t[2]]) / 3.0;
  }
  return acc;
}

std::pair<double, double> min_max(const std::vector<double>& values) {
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

}  // namespace tumordg
