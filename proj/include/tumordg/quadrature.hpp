#pragma once

#include <array>

#include "tumordg/mesh.hpp"

namespace tumordg {

/// 6-point triangle rule, exact for polynomials of degree 4. Barycentric
/// points with weights normalized to sum to 1 (multiply by |K|).
struct TriangleQuadrature {
  static constexpr int size = 6;
  std::array<std::array<double, 3>, size> bary;
  std::array<double, size> weight;
};

inline const TriangleQuadrature& degree4_rule() {
  static const TriangleQuadrature rule = [] {
    TriangleQuadrature q{};
    const double a1 = 0.445948490915965, b1 = 0.108103018168070;
    const double a2 = 0.091576213509771, b2 = 0.816847572980459;
    const double w1 = 0.223381589678011, w2 = 0.109951743655322;
    q.bary = {{{b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1},
               {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}}};
    q.weight = {w1, w1, w1, w2, w2, w2};
    return q;
  }();
  return rule;
}

/// Gradients of the three barycentric (P1 hat) functions on triangle k;
/// constant on the triangle.
inline std::array<Vec2, 3> p1_gradients(const Mesh& mesh, int k) {
  const auto& t = mesh.triangle(k);
  const Vec2 a = mesh.vertex(t[0]), b = mesh.vertex(t[1]), c = mesh.vertex(t[2]);
  const double inv2A = 1.0 / (2.0 * mesh.triangle_area(k));
  return {Vec2{(b.y - c.y) * inv2A, (c.x - b.x) * inv2A},
          Vec2{(c.y - a.y) * inv2A, (a.x - c.x) * inv2A},
          Vec2{(a.y - b.y) * inv2A, (b.x - a.x) * inv2A}};
}

}  // namespace tumordg
