#include "tumordg/dg_scheme.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tumordg/quadrature.hpp"

namespace tumordg {

namespace {

using Triplet = Eigen::Triplet<double>;

void check_bounds_field(const P0Field& f, double tol, const char* name) {
  for (double v : f.values)
    if (v < -tol || v > 1.0 + tol)
      throw std::invalid_argument(std::string("make_state: ") + name +
                                  " outside [0,1] beyond tolerance");
}

void clamp_field(P0Field& f) {
  for (double& v : f.values) v = std::min(1.0, std::max(0.0, v));
}

}  // namespace

DgScheme::DgScheme(const Mesh& mesh, const ModelParams& params)
    : mesh_(mesh),
      params_(params),
      mobility_(params.mob_p, params.mob_q),
      edges_(mesh),
      nt_(mesh.num_triangles()),
      nv_(mesh.num_vertices()) {
  params_.validate();

  std::vector<Triplet> stiff, mass, reg, pairing;
  stiff.reserve(static_cast<size_t>(9 * nt_));
  mass.reserve(static_cast<size_t>(9 * nt_));
  reg.reserve(static_cast<size_t>(3 * nt_));
  pairing.reserve(static_cast<size_t>(3 * nt_));
  for (int k = 0; k < nt_; ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    const auto grads = p1_gradients(mesh_, k);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        stiff.emplace_back(t[i], t[j], area * dot(grads[i], grads[j]));
        mass.emplace_back(t[i], t[j], area / (i == j ? 6.0 : 12.0));
      }
      reg.emplace_back(t[i], k, area / mesh_.vertex_support_area(t[i]));
      pairing.emplace_back(t[i], k, area / 3.0);
    }
  }
  stiffness_.resize(nv_, nv_);
  stiffness_.setFromTriplets(stiff.begin(), stiff.end());
  mass_.resize(nv_, nv_);
  mass_.setFromTriplets(mass.begin(), mass.end());
  reg_.resize(nv_, nt_);
  reg_.setFromTriplets(reg.begin(), reg.end());
  p0_pairing_.resize(nv_, nt_);
  p0_pairing_.setFromTriplets(pairing.begin(), pairing.end());

  lumped_.resize(nv_);
  for (int j = 0; j < nv_; ++j) lumped_[j] = mesh_.vertex_support_area(j) / 3.0;

  // mu-row block of the Jacobian is constant:
  //   d r_mu / d u  = -(eps^2 S + (3/4) Mc) R,
  //   d r_mu / d n  = chi0 * pairing,
  //   d r_mu / d mu = diag(lumped).
  const Eigen::SparseMatrix<double> du =
      ((-params_.eps * params_.eps) * stiffness_ - split_f_implicit_slope * mass_) * reg_;
  std::vector<Triplet> rows;
  rows.reserve(static_cast<size_t>(du.nonZeros() + p0_pairing_.nonZeros() + nv_));
  for (int c = 0; c < du.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(du, c); it; ++it)
      rows.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int c = 0; c < p0_pairing_.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(p0_pairing_, c); it; ++it)
      rows.emplace_back(static_cast<int>(it.row()), nt_ + static_cast<int>(it.col()),
                        params_.chi0 * it.value());
  for (int j = 0; j < nv_; ++j) rows.emplace_back(j, 2 * nt_ + j, lumped_[j]);
  mu_row_static_.resize(nv_, dof_count());
  mu_row_static_.setFromTriplets(rows.begin(), rows.end());
}

Eigen::VectorXd DgScheme::pack(const P0Field& u, const P0Field& n,
                               const P1Field& mu_u) const {
  if (u.size() != nt_ || n.size() != nt_ || mu_u.size() != nv_)
    throw std::invalid_argument("pack: size mismatch");
  Eigen::VectorXd x(dof_count());
  for (int k = 0; k < nt_; ++k) x[k] = u[k];
  for (int k = 0; k < nt_; ++k) x[nt_ + k] = n[k];
  for (int j = 0; j < nv_; ++j) x[2 * nt_ + j] = mu_u[j];
  return x;
}

void DgScheme::unpack(const Eigen::VectorXd& x, P0Field& u, P0Field& n,
                      P1Field& mu_u) const {
  u.values.assign(x.data(), x.data() + nt_);
  n.values.assign(x.data() + nt_, x.data() + 2 * nt_);
  mu_u.values.assign(x.data() + 2 * nt_, x.data() + dof_count());
}

Eigen::VectorXd DgScheme::explicit_split_term(const P1Field& w_old) const {
  const auto& quad = degree4_rule();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(nv_);
  for (int k = 0; k < nt_; ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      double wq = 0.0;
      for (int i = 0; i < 3; ++i) wq += quad.bary[q][i] * w_old[t[i]];
      const double gq = area * quad.weight[q] * split_f_explicit(wq);
      for (int i = 0; i < 3; ++i) g[t[i]] += gq * quad.bary[q][i];
    }
  }
  return g;
}

P1Field DgScheme::initial_mu_u(const P0Field& u0, const P0Field& n0) const {
  const P1Field w0 = regularize_p1(u0, mesh_);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(w0.values.data(), nv_);
  Eigen::VectorXd n = Eigen::Map<const Eigen::VectorXd>(n0.values.data(), nt_);
  Eigen::VectorXd rhs = params_.eps * params_.eps * (stiffness_ * w) +
                        split_f_implicit_slope * (mass_ * w) + explicit_split_term(w0) -
                        params_.chi0 * (p0_pairing_ * n);
  P1Field mu(nv_, 0.0);
  for (int j = 0; j < nv_; ++j) mu[j] = rhs[j] / lumped_[j];
  return mu;
}

SchemeState DgScheme::make_state(P0Field u0, P0Field n0) const {
  if (u0.size() != nt_ || n0.size() != nt_)
    throw std::invalid_argument("make_state: field size mismatch");
  check_bounds_field(u0, 1e-12, "u0");
  check_bounds_field(n0, 1e-12, "n0");
  clamp_field(u0);
  clamp_field(n0);

  SchemeState s;
  s.u = std::move(u0);
  s.n = std::move(n0);
  s.u_reg = regularize_p1(s.u, mesh_);
  s.u_reg_p0 = project_p0_of_p1(s.u_reg, mesh_);
  s.mu_n = mu_n_field(s.n, s.u_reg_p0, params_);
  s.mu_u = initial_mu_u(s.u, s.n);
  return s;
}

DgScheme::StepContext DgScheme::make_context(const SchemeState& state_old,
                                             double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  StepContext ctx;
  ctx.state_old = &state_old;
  ctx.dt = dt;
  ctx.g_explicit = explicit_split_term(state_old.u_reg);
  ctx.mu_n_offset.resize(static_cast<size_t>(nt_));
  for (int k = 0; k < nt_; ++k) ctx.mu_n_offset[k] = -params_.chi0 * state_old.u_reg_p0[k];
  return ctx;
}

Eigen::VectorXd DgScheme::residual_impl(const StepContext& ctx,
                                        const Eigen::VectorXd& x) const {
  if (x.size() != dof_count()) throw std::invalid_argument("residual: dof size mismatch");
  if (!x.allFinite()) throw std::invalid_argument("residual: non-finite guess");
  const SchemeState& old = *ctx.state_old;
  const double dt = ctx.dt;

  Eigen::VectorXd r = Eigen::VectorXd::Zero(dof_count());

  P0Field u(nt_, 0.0), n(nt_, 0.0);
  for (int k = 0; k < nt_; ++k) {
    u[k] = x[k];
    n[k] = x[nt_ + k];
  }

  // Element means of the P1 potential guess.
  P0Field mu_el(nt_, 0.0);
  for (int k = 0; k < nt_; ++k) {
    const auto& t = mesh_.triangle(k);
    mu_el[k] = (x[2 * nt_ + t[0]] + x[2 * nt_ + t[1]] + x[2 * nt_ + t[2]]) / 3.0;
  }
  P0Field mu_n(nt_, 0.0);
  for (int k = 0; k < nt_; ++k) mu_n[k] = n[k] / params_.delta + ctx.mu_n_offset[k];

  std::vector<double> r_u(static_cast<size_t>(nt_), 0.0);
  std::vector<double> r_n(static_cast<size_t>(nt_), 0.0);
  for (int k = 0; k < nt_; ++k) {
    const double area = mesh_.triangle_area(k);
    r_u[k] = area * (u[k] - old.u[k]) / dt;
    r_n[k] = area * (n[k] - old.n[k]) / dt;
  }
  upwind_accumulate(mu_el, u, mesh_, edges_, mobility_, params_.cu, r_u);
  upwind_accumulate(mu_n, n, mesh_, edges_, mobility_, params_.cn, r_n);

  const double dp0 = params_.delta * params_.p0;
  for (int k = 0; k < nt_; ++k) {
    const double reaction = dp0 * mesh_.triangle_area(k) * proliferation(u[k], n[k], params_) *
                            pos_part(mu_n[k] - mu_el[k]);
    r_u[k] -= reaction;
    r_n[k] += reaction;
  }

  for (int k = 0; k < nt_; ++k) {
    r[k] = r_u[k];
    r[nt_ + k] = r_n[k];
  }
  r.segment(2 * nt_, nv_) = mu_row_static_ * x - ctx.g_explicit;
  return r;
}

Eigen::SparseMatrix<double> DgScheme::jacobian_impl(const StepContext& ctx,
                                                    const Eigen::VectorXd& x) const {
  const double dt = ctx.dt;

  P0Field u(nt_, 0.0), n(nt_, 0.0);
  for (int k = 0; k < nt_; ++k) {
    u[k] = x[k];
    n[k] = x[nt_ + k];
  }
  P0Field mu_el(nt_, 0.0);
  for (int k = 0; k < nt_; ++k) {
    const auto& t = mesh_.triangle(k);
    mu_el[k] = (x[2 * nt_ + t[0]] + x[2 * nt_ + t[1]] + x[2 * nt_ + t[2]]) / 3.0;
  }
  P0Field mu_n(nt_, 0.0);
  for (int k = 0; k < nt_; ++k) mu_n[k] = n[k] / params_.delta + ctx.mu_n_offset[k];

  std::vector<double> scratch(static_cast<size_t>(nt_), 0.0);
  std::vector<SparseEntry> dmu_u, dv_u, dmu_n, dv_n;
  upwind_accumulate(mu_el, u, mesh_, edges_, mobility_, params_.cu, scratch, &dmu_u, &dv_u);
  std::fill(scratch.begin(), scratch.end(), 0.0);
  upwind_accumulate(mu_n, n, mesh_, edges_, mobility_, params_.cn, scratch, &dmu_n, &dv_n);

  std::vector<Triplet> trip;
  trip.reserve(dmu_u.size() * 3 + dv_u.size() + dmu_n.size() + dv_n.size() +
               static_cast<size_t>(10 * nt_) + static_cast<size_t>(mu_row_static_.nonZeros()));

  for (int k = 0; k < nt_; ++k) {
    const double aodt = mesh_.triangle_area(k) / dt;
    trip.emplace_back(k, k, aodt);
    trip.emplace_back(nt_ + k, nt_ + k, aodt);
  }

  // u-equation: d a_upw(P0(mu_u), M(u); 1_K) — mu entries chain through the
  // element mean (1/3 per vertex), v entries are direct.
  for (const SparseEntry& e : dmu_u) {
    const auto& t = mesh_.triangle(e.col);
    for (int i = 0; i < 3; ++i)
      trip.emplace_back(e.row, 2 * nt_ + t[i], e.value / 3.0);
  }
  for (const SparseEntry& e : dv_u) trip.emplace_back(e.row, e.col, e.value);

  // n-equation: mu_n depends on n with slope 1/delta.
  for (const SparseEntry& e : dmu_n)
    trip.emplace_back(nt_ + e.row, nt_ + e.col, e.value / params_.delta);
  for (const SparseEntry& e : dv_n) trip.emplace_back(nt_ + e.row, nt_ + e.col, e.value);

  const double dp0 = params_.delta * params_.p0;
  for (int k = 0; k < nt_; ++k) {
    const double area = mesh_.triangle_area(k);
    const double pk = proliferation(u[k], n[k], params_);
    const double arg = mu_n[k] - mu_el[k];
    const double ap = pos_part(arg);
    const double heav = pos_part_derivative(arg);
    const double c = dp0 * area;
    const double d_u = c * proliferation_du(u[k], n[k], params_) * ap;
    const double d_n = c * (proliferation_dn(u[k], n[k], params_) * ap +
                            pk * heav / params_.delta);
    if (d_u != 0.0) {
      trip.emplace_back(k, k, -d_u);
      trip.emplace_back(nt_ + k, k, d_u);
    }
    if (d_n != 0.0) {
      trip.emplace_back(k, nt_ + k, -d_n);
      trip.emplace_back(nt_ + k, nt_ + k, d_n);
    }
    const double d_mu = c * pk * heav / 3.0;  // from -(1/3) per vertex, sign folded
    if (d_mu != 0.0) {
      const auto& t = mesh_.triangle(k);
      for (int i = 0; i < 3; ++i) {
        trip.emplace_back(k, 2 * nt_ + t[i], d_mu);
        trip.emplace_back(nt_ + k, 2 * nt_ + t[i], -d_mu);
      }
    }
  }

  for (int c = 0; c < mu_row_static_.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(mu_row_static_, c); it; ++it)
      trip.emplace_back(2 * nt_ + static_cast<int>(it.row()), static_cast<int>(it.col()),
                        it.value());

  Eigen::SparseMatrix<double> jac(dof_count(), dof_count());
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

Eigen::VectorXd DgScheme::residual(const SchemeState& state_old,
                                   const Eigen::VectorXd& guess, double dt) const {
  return residual_impl(make_context(state_old, dt), guess);
}

Eigen::SparseMatrix<double> DgScheme::jacobian(const SchemeState& state_old,
                                               const Eigen::VectorXd& guess,
                                               double dt) const {
  return jacobian_impl(make_context(state_old, dt), guess);
}

std::pair<SchemeState, StepDiagnostics> DgScheme::step(const SchemeState& state_old,
                                                       double dt,
                                                       const NewtonSettings& newton) const {
  const StepContext ctx = make_context(state_old, dt);
  const NewtonResult sol = newton_solve(
      [&](const Eigen::VectorXd& x) { return residual_impl(ctx, x); },
      [&](const Eigen::VectorXd& x) { return jacobian_impl(ctx, x); },
      pack(state_old.u, state_old.n, state_old.mu_u), newton);

  SchemeState next;
  unpack(sol.x, next.u, next.n, next.mu_u);
  next.u_reg = regularize_p1(next.u, mesh_);
  next.u_reg_p0 = project_p0_of_p1(next.u_reg, mesh_);
  next.mu_n = P0Field(nt_, 0.0);
  for (int k = 0; k < nt_; ++k)
    next.mu_n[k] = next.n[k] / params_.delta + ctx.mu_n_offset[k];
  next.time = state_old.time + dt;
  next.step = state_old.step + 1;

  StepDiagnostics diag;
  diag.newton_iters = sol.iters;
  diag.final_residual = sol.residual_norm;
  diag.mass_u = integrate(next.u, mesh_);
  diag.mass_n = integrate(next.n, mesh_);
  diag.mass_total = diag.mass_u + diag.mass_n;
  std::tie(diag.min_u, diag.max_u) = min_max(next.u.values);
  std::tie(diag.min_n, diag.max_n) = min_max(next.n.values);
  std::tie(diag.min_ureg, diag.max_ureg) = min_max(next.u_reg.values);

  const double e_old = energy(state_old.u_reg, state_old.n, mesh_, params_);
  diag.energy = energy(next.u_reg, next.n, mesh_, params_);
  diag.energy_decrement = diag.energy - e_old;

  // Discrete energy law, scaled by dt: energy difference plus upwind,
  // reaction and numerical-dissipation terms.
  const P0Field mu_el = project_p0(next.mu_u, mesh_);
  double dissipation = params_.cu * upwind_form(mu_el, next.u, mu_el, mesh_, mobility_) +
                       params_.cn * upwind_form(next.mu_n, next.n, next.mu_n, mesh_, mobility_);
  double reaction = 0.0;
  for (int k = 0; k < nt_; ++k) {
    const double ap = pos_part(next.mu_n[k] - mu_el[k]);
    reaction += mesh_.triangle_area(k) * proliferation(next.u[k], next.n[k], params_) * ap * ap;
  }
  dissipation += params_.delta * params_.p0 * reaction;

  P1Field dw(nv_, 0.0);
  for (int j = 0; j < nv_; ++j) dw[j] = next.u_reg[j] - state_old.u_reg[j];
  double grad_dw = 0.0;
  for (int k = 0; k < nt_; ++k) {
    const auto grads = p1_gradients(mesh_, k);
    const auto& t = mesh_.triangle(k);
    Vec2 g{0.0, 0.0};
    for (int i = 0; i < 3; ++i) g = g + dw[t[i]] * grads[i];
    grad_dw += mesh_.triangle_area(k) * dot(g, g);
  }
  double dn_sq = 0.0;
  for (int k = 0; k < nt_; ++k) {
    const double d = next.n[k] - state_old.n[k];
    dn_sq += mesh_.triangle_area(k) * d * d;
  }
  diag.energy_law_lhs = diag.energy_decrement + dt * dissipation +
                        0.5 * params_.eps * params_.eps * grad_dw +
                        dn_sq / (2.0 * params_.delta);

  const double guard = 10.0 * newton.abs_tol;
  if (diag.min_u < -guard || diag.max_u > 1.0 + guard || diag.min_n < -guard ||
      diag.max_n > 1.0 + guard)
    throw BoundsViolated("pointwise bounds violated beyond solver tolerance at step " +
                         std::to_string(next.step));
  if (diag.energy_decrement > guard)
    throw EnergyIncreased("discrete energy increased beyond solver tolerance at step " +
                          std::to_string(next.step));

  return {std::move(next), diag};
}

}  // namespace tumordg
