#pragma once

#include "tumordg/fields.hpp"
#include "tumordg/mesh.hpp"

namespace tumordg {

/// Physical constants and mobility/proliferation exponents of the coupled
/// tumor/nutrient model.
struct ModelParams {
  double eps = 0.1;     // interface width
  double delta = 0.01;  // potential scaling of the nutrient
  double chi0 = 0.1;    // cross-diffusion coefficient
  double p0 = 0.5;      // proliferation rate
  double cu = 2.8;      // tumor diffusion scale
  double cn = 2.8e-4;   // nutrient diffusion scale
  int mob_p = 1;        // mobility exponents (p, q)
  int mob_q = 1;
  int prolif_r = 1;  // proliferation exponents (r, s)
  int prolif_s = 1;

  void validate() const;  // throws std::invalid_argument naming the field
};

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
inline double neg_part(double x) { return x < 0.0 ? -x : 0.0; }
/// Semismooth derivative of pos_part: 1 for x > 0, 0 for x <= 0.
inline double pos_part_derivative(double x) { return x > 0.0 ? 1.0 : 0.0; }

/// Double-well potential F(u) = u^2 (1-u)^2 / 4 and its derivative.
double potential(double u);
double potential_derivative(double u);

/// Convex-splitting increment f(u_new, u_old) = Fi'(u_new) + Fe'(u_old)
///   = (3 u_new + 4 u_old^3 - 6 u_old^2 - u_old) / 4.
double split_f(double u_new, double u_old);
/// The explicit (old-state) part of split_f.
double split_f_explicit(double u_old);
inline constexpr double split_f_implicit_slope = 0.75;

/// Normalized degenerate hump h_{p,q}(v) = K v^p (1-v)^q on [0,1], 0
/// elsewhere, with K chosen so the maximum over [0,1] is 1.
double normalized_hump(double v, int p, int q);

/// Mobility M = h_{p,q} split into its nondecreasing and nonincreasing
/// parts around the maximizer v* = p/(p+q).
class MobilitySplit {
public:
  MobilitySplit(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  double vstar() const { return vstar_; }
  double normalization() const { return kpq_; }

  double value(double v) const;       // M(v)
  double increasing(double v) const;  // M up: M(v) for v <= v*, M(v*) after
  double decreasing(double v) const;  // M down: 0 up to v*, M(v) - M(v*) after

  /// dM/dv on (0,1), 0 outside [0,1] and at the endpoints (semismooth).
  double derivative(double v) const;
  double increasing_derivative(double v) const;
  double decreasing_derivative(double v) const;

private:
  int p_, q_;
  double vstar_, kpq_;
};

/// Proliferation P(u, n) = h_{r,s}(u) * pos_part(n).
double proliferation(double u, double n, const ModelParams& params);
double proliferation_du(double u, double n, const ModelParams& params);
double proliferation_dn(double u, double n, const ModelParams& params);

/// Nutrient potential mu_n = n_new / delta - chi0 * (element mean of the
/// regularized old tumor field).
P0Field mu_n_field(const P0Field& n_new, const P0Field& u_old_reg_proj,
                   const ModelParams& params);

/// Free energy at a regularized tumor field (P1) and a P0 nutrient field:
///   int (eps^2/2)|grad u|^2 + F(u) - chi0 u n + n^2/(2 delta).
/// Gradient and cross terms exact; the quartic F term by a degree-4 rule.
double energy(const P1Field& u_reg, const P0Field& n, const Mesh& mesh,
              const ModelParams& params);

/// Same functional with a P1 nutrient field (finite-element baseline).
double energy(const P1Field& u, const P1Field& n, const Mesh& mesh,
              const ModelParams& params);

}  // namespace tumordg
