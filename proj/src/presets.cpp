#include "tumordg/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace tumordg {

namespace {

double bump(double radius, double cx, double cy, double x, double y, double eps) {
  const double r = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
  return std::tanh((radius - r) / (std::sqrt(2.0) * eps));
}

double three_tumors_u0(double x, double y, double eps) {
  return 0.5 * (bump(1.0, 2.0, 2.0, x, y, eps) + bump(1.0, 3.0, -5.0, x, y, eps) +
                bump(1.73, -1.5, -1.5, x, y, eps) + 3.0);
}

double irregular_u0(double x, double y, double eps) {
  return 0.5 * (bump(1.75, 0.0, 0.0, x, y, eps) + 1.0);
}

double irregular_n0(double x, double y, double eps) {
  return 0.5 * (1.0 - irregular_u0(x, y, eps)) +
         0.25 * (bump(1.0, 2.45, 1.45, x, y, eps) + bump(1.75, -3.75, 1.0, x, y, eps) +
                 bump(2.5, 0.0, -5.0, x, y, eps) + 3.0);
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

const std::vector<ICPreset>& ic_presets() {
  static const std::vector<ICPreset> presets = {
      {"three_tumors",
       "three tanh bumps at (2,2) r=1, (3,-5) r=1, (-1.5,-1.5) r=1.73; n0 = 1 - u0"},
      {"irregular_tumor",
       "central tanh bump r=1.75; nutrients (1-u0)/2 plus three off-center bumps"},
      {"zero", "u0 = n0 = 0"},
      {"constant", "u0 = ic_u0, n0 = ic_n0"},
  };
  return presets;
}

bool is_ic_preset(const std::string& name) {
  for (const auto& p : ic_presets())
    if (p.name == name) return true;
  return false;
}

double ic_u0(const std::string& preset, double x, double y, const ModelParams& params,
             double const_u0, double const_n0) {
  (void)const_n0;
  if (preset == "three_tumors") return three_tumors_u0(x, y, params.eps);
  if (preset == "irregular_tumor") return irregular_u0(x, y, params.eps);
  if (preset == "zero") return 0.0;
  if (preset == "constant") return const_u0;
  throw std::invalid_argument("unknown ic preset: " + preset);
}

double ic_n0(const std::string& preset, double x, double y, const ModelParams& params,
             double const_u0, double const_n0) {
  if (preset == "three_tumors") return 1.0 - three_tumors_u0(x, y, params.eps);
  if (preset == "irregular_tumor") return irregular_n0(x, y, params.eps);
  if (preset == "zero") return 0.0;
  if (preset == "constant") {
    (void)const_u0;
    return const_n0;
  }
  throw std::invalid_argument("unknown ic preset: " + preset);
}

std::pair<P0Field, P0Field> sample_ic(const std::string& preset, const Mesh& mesh,
                                      const ModelParams& params, double const_u0,
                                      double const_n0) {
  P0Field u(mesh.num_triangles(), 0.0), n(mesh.num_triangles(), 0.0);
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const Vec2 b = mesh.barycenter(k);
    u[k] = clamp01(ic_u0(preset, b.x, b.y, params, const_u0, const_n0));
    n[k] = clamp01(ic_n0(preset, b.x, b.y, params, const_u0, const_n0));
  }
  return {std::move(u), std::move(n)};
}

std::pair<P1Field, P1Field> sample_ic_vertices(const std::string& preset, const Mesh& mesh,
                                               const ModelParams& params, double const_u0,
                                               double const_n0) {
  P1Field u(mesh.num_vertices(), 0.0), n(mesh.num_vertices(), 0.0);
  for (int j = 0; j < mesh.num_vertices(); ++j) {
    const Vec2 v = mesh.vertex(j);
    u[j] = clamp01(ic_u0(preset, v.x, v.y, params, const_u0, const_n0));
    n[j] = clamp01(ic_n0(preset, v.x, v.y, params, const_u0, const_n0));
  }
  return {std::move(u), std::move(n)};
}

}  // namespace tumordg
