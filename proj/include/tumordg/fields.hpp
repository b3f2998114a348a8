#pragma once

#include <utility>
#include <vector>

#include "tumordg/mesh.hpp"

namespace tumordg {

/// Piecewise-constant scalar field, one value per triangle.
struct P0Field {
  std::vector<double> values;

  P0Field() = default;
  explicit P0Field(std::vector<double> v) : values(std::move(v)) {}
  P0Field(int n, double fill) : values(static_cast<size_t>(n), fill) {}

  int size() const { return static_cast<int>(values.size()); }
  double& operator[](int k) { return values[k]; }
  double operator[](int k) const { return values[k]; }
};

/// Continuous piecewise-linear scalar field, one value per vertex.
struct P1Field {
  std::vector<double> values;

  P1Field() = default;
  explicit P1Field(std::vector<double> v) : values(std::move(v)) {}
  P1Field(int n, double fill) : values(static_cast<size_t>(n), fill) {}

  int size() const { return static_cast<int>(values.size()); }
  double& operator[](int j) { return values[j]; }
  double operator[](int j) const { return values[j]; }
};

/// Element-mean projection: per triangle the integral mean of g, which for
/// P1 arguments is the barycenter value (mean of the three vertex values).
P0Field project_p0(const P1Field& g, const Mesh& mesh);

/// Area-weighted vertex regularization: vertex value is the area-weighted
/// average of the incident element values. Preserves [min v, max v] and the
/// integral of v.
P1Field regularize_p1(const P0Field& v, const Mesh& mesh);

/// Element mean of a P1 field (arithmetic mean of its 3 vertex values).
P0Field project_p0_of_p1(const P1Field& w, const Mesh& mesh);

/// Mass-lumped P1 inner product: sum_K (|K|/3) sum_{vertices of K} a*b.
double lumped_inner(const P1Field& a, const P1Field& b, const Mesh& mesh);

double integrate(const P0Field& v, const Mesh& mesh);
double integrate(const P1Field& v, const Mesh& mesh);  // exact for P1

/// Exact integral of the product of a P0 and a P1 field.
double integrate_product(const P0Field& v, const P1Field& w, const Mesh& mesh);

std::pair<double, double> min_max(const std::vector<double>& values);

}  // namespace tumordg
