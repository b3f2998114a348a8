#include "tumordg/model.hpp"

#include <cmath>
#include <stdexcept>

#include "tumordg/quadrature.hpp"

namespace tumordg {

void ModelParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("ModelParams: ") + name + " must be > 0");
  };
  auto nonnegative = [](double v, const char* name) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string("ModelParams: ") + name + " must be >= 0");
  };
  positive(delta, "delta");
  positive(cu, "cu");
  positive(cn, "cn");
  nonnegative(eps, "eps");
  nonnegative(chi0, "chi0");
  nonnegative(p0, "p0");
  if (mob_p < 0 || mob_q < 0) throw std::invalid_argument("ModelParams: mobility exponents must be >= 0");
  if (mob_p + mob_q < 1) throw std::invalid_argument("ModelParams: mob_p + mob_q must be >= 1");
  if (prolif_r < 0 || prolif_s < 0)
    throw std::invalid_argument("ModelParams: proliferation exponents must be >= 0");
  if (prolif_r + prolif_s < 1)
    throw std::invalid_argument("ModelParams: prolif_r + prolif_s must be >= 1");
}

double potential(double u) {
  const double w = 1.0 - u;
  return 0.25 * u * u * w * w;
}

double potential_derivative(double u) { return u * (u - 1.0) * (u - 0.5); }

double split_f(double u_new, double u_old) {
  return split_f_implicit_slope * u_new + split_f_explicit(u_old);
}

double split_f_explicit(double u_old) {
  return 0.25 * (4.0 * u_old * u_old * u_old - 6.0 * u_old * u_old - u_old);
}

namespace {

double int_pow(double v, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= v;
  return r;
}

}  // namespace

double normalized_hump(double v, int p, int q) {
  if (v < 0.0 || v > 1.0) return 0.0;
  const double vstar = static_cast<double>(p) / (p + q);
  const double k = 1.0 / (int_pow(vstar, p) * int_pow(1.0 - vstar, q));
  return k * int_pow(v, p) * int_pow(1.0 - v, q);
}

namespace {

double normalized_hump_derivative(double v, int p, int q) {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  const double vstar = static_cast<double>(p) / (p + q);
  const double k = 1.0 / (int_pow(vstar, p) * int_pow(1.0 - vstar, q));
  const double w = 1.0 - v;
  double d = 0.0;
  if (p > 0) d += p * int_pow(v, p - 1) * int_pow(w, q);
  if (q > 0) d -= q * int_pow(v, p) * int_pow(w, q - 1);
  return k * d;
}

}  // namespace

MobilitySplit::MobilitySplit(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0 || p + q < 1)
    throw std::invalid_argument("MobilitySplit: exponents must be >= 0 with p+q >= 1");
  vstar_ = static_cast<double>(p) / (p + q);
  kpq_ = 1.0 / (int_pow(vstar_, p_) * int_pow(1.0 - vstar_, q_));
}

double MobilitySplit::value(double v) const {
  if (v < 0.0 || v > 1.0) return 0.0;
  return kpq_ * int_pow(v, p_) * int_pow(1.0 - v, q_);
}

double MobilitySplit::increasing(double v) const {
  return v <= vstar_ ? value(v) : 1.0;
}

double MobilitySplit::decreasing(double v) const {
  return v <= vstar_ ? 0.0 : value(v) - 1.0;
}

double MobilitySplit::derivative(double v) const {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  const double w = 1.0 - v;
  double d = 0.0;
  if (p_ > 0) d += p_ * int_pow(v, p_ - 1) * int_pow(w, q_);
  if (q_ > 0) d -= q_ * int_pow(v, p_) * int_pow(w, q_ - 1);
  return kpq_ * d;
}

double MobilitySplit::increasing_derivative(double v) const {
  return v <= vstar_ ? derivative(v) : 0.0;
}

double MobilitySplit::decreasing_derivative(double v) const {
  return v <= vstar_ ? 0.0 : derivative(v);
}

double proliferation(double u, double n, const ModelParams& params) {
  return normalized_hump(u, params.prolif_r, params.prolif_s) * pos_part(n);
}

double proliferation_du(double u, double n, const ModelParams& params) {
  return normalized_hump_derivative(u, params.prolif_r, params.prolif_s) * pos_part(n);
}

double proliferation_dn(double u, double n, const ModelParams& params) {
  return normalized_hump(u, params.prolif_r, params.prolif_s) * pos_part_derivative(n);
}

P0Field mu_n_field(const P0Field& n_new, const P0Field& u_old_reg_proj,
                   const ModelParams& params) {
  if (n_new.size() != u_old_reg_proj.size())
    throw std::invalid_argument("mu_n_field: size mismatch");
  P0Field out(n_new.size(), 0.0);
  for (int k = 0; k < n_new.size(); ++k)
    out[k] = n_new[k] / params.delta - params.chi0 * u_old_reg_proj[k];
  return out;
}

namespace {

double gradient_energy(const P1Field& u, const Mesh& mesh, double eps) {
  double acc = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto grads = p1_gradients(mesh, k);
    const auto& t = mesh.triangle(k);
    Vec2 g{0.0, 0.0};
    for (int i = 0; i < 3; ++i) g = g + u[t[i]] * grads[i];
    acc += mesh.triangle_area(k) * dot(g, g);
  }
  return 0.5 * eps * eps * acc;
}

double potential_energy(const P1Field& u, const Mesh& mesh) {
  const auto& quad = degree4_rule();
  double acc = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    double local = 0.0;
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      const double uq = quad.bary[q][0] * u[t[0]] + quad.bary[q][1] * u[t[1]] +
                        quad.bary[q][2] * u[t[2]];
      local += quad.weight[q] * potential(uq);
    }
    acc += mesh.triangle_area(k) * local;
  }
  return acc;
}

}  // namespace

double energy(const P1Field& u_reg, const P0Field& n, const Mesh& mesh,
              const ModelParams& params) {
  double e = gradient_energy(u_reg, mesh, params.eps) + potential_energy(u_reg, mesh);
  e -= params.chi0 * integrate_product(n, u_reg, mesh);
  for (int k = 0; k < mesh.num_triangles(); ++k)
    e += mesh.triangle_area(k) * n[k] * n[k] / (2.0 * params.delta);
  return e;
}

double energy(const P1Field& u, const P1Field& n, const Mesh& mesh,
              const ModelParams& params) {
  double e = gradient_energy(u, mesh, params.eps) + potential_energy(u, mesh);
  // Cross and quadratic terms are at most quadratic per triangle; the
  // degree-4 rule integrates them exactly.
  const auto& quad = degree4_rule();
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& t = mesh.triangle(k);
    double local = 0.0;
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      double uq = 0.0, nq = 0.0;
      for (int i = 0; i < 3; ++i) {
        uq += quad.bary[q][i] * u[t[i]];
        nq += quad.bary[q][i] * n[t[i]];
      }
      local += quad.weight[q] * (-params.chi0 * uq * nq + nq * nq / (2.0 * params.delta));
    }
    e += mesh.triangle_area(k) * local;
  }
  return e;
}

}  // namespace tumordg
