#include "tumordg/fe_scheme.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <vector>

#include "tumordg/quadrature.hpp"

namespace tumordg {

namespace {

using Triplet = Eigen::Triplet<double>;

}  // namespace

FeScheme::FeScheme(const Mesh& mesh, const ModelParams& params)
    : mesh_(mesh),
      params_(params),
      mobility_(params.mob_p, params.mob_q),
      nv_(mesh.num_vertices()) {
  params_.validate();
  std::vector<Triplet> stiff, mass;
  stiff.reserve(static_cast<size_t>(9 * mesh_.num_triangles()));
  mass.reserve(static_cast<size_t>(9 * mesh_.num_triangles()));
  for (int k = 0; k < mesh_.num_triangles(); ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    const auto grads = p1_gradients(mesh_, k);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        stiff.emplace_back(t[i], t[j], area * dot(grads[i], grads[j]));
        mass.emplace_back(t[i], t[j], area / (i == j ? 6.0 : 12.0));
      }
  }
  stiffness_.resize(nv_, nv_);
  stiffness_.setFromTriplets(stiff.begin(), stiff.end());
  mass_.resize(nv_, nv_);
  mass_.setFromTriplets(mass.begin(), mass.end());
}

Eigen::VectorXd FeScheme::pack(const P1Field& u, const P1Field& n,
                               const P1Field& mu_u) const {
  if (u.size() != nv_ || n.size() != nv_ || mu_u.size() != nv_)
    throw std::invalid_argument("pack: size mismatch");
  Eigen::VectorXd x(dof_count());
  for (int j = 0; j < nv_; ++j) {
    x[j] = u[j];
    x[nv_ + j] = n[j];
    x[2 * nv_ + j] = mu_u[j];
  }
  return x;
}

void FeScheme::unpack(const Eigen::VectorXd& x, P1Field& u, P1Field& n,
                      P1Field& mu_u) const {
  u.values.assign(x.data(), x.data() + nv_);
  n.values.assign(x.data() + nv_, x.data() + 2 * nv_);
  mu_u.values.assign(x.data() + 2 * nv_, x.data() + 3 * nv_);
}

Eigen::VectorXd FeScheme::explicit_split_term(const P1Field& u_old) const {
  const auto& quad = degree4_rule();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(nv_);
  for (int k = 0; k < mesh_.num_triangles(); ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      double uq = 0.0;
      for (int i = 0; i < 3; ++i) uq += quad.bary[q][i] * u_old[t[i]];
      const double gq = area * quad.weight[q] * split_f_explicit(uq);
      for (int i = 0; i < 3; ++i) g[t[i]] += gq * quad.bary[q][i];
    }
  }
  return g;
}

FeState FeScheme::make_state(P1Field u0, P1Field n0) const {
  if (u0.size() != nv_ || n0.size() != nv_)
    throw std::invalid_argument("make_state: field size mismatch");

  // Consistent-mass solve for the warm-start potential.
  Eigen::Map<const Eigen::VectorXd> u(u0.values.data(), nv_);
  Eigen::Map<const Eigen::VectorXd> n(n0.values.data(), nv_);
  Eigen::VectorXd rhs = params_.eps * params_.eps * (stiffness_ * u) +
                        split_f_implicit_slope * (mass_ * u) + explicit_split_term(u0) -
                        params_.chi0 * (mass_ * n);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(mass_);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error("make_state: mass matrix factorization failed");
  const Eigen::VectorXd mu = chol.solve(rhs);

  FeState s;
  s.u = std::move(u0);
  s.n = std::move(n0);
  s.mu_u = P1Field(std::vector<double>(mu.data(), mu.data() + nv_));
  return s;
}

Eigen::VectorXd FeScheme::residual(const FeState& state_old, const Eigen::VectorXd& x,
                                   double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("residual: dt must be > 0");
  if (x.size() != dof_count()) throw std::invalid_argument("residual: dof size mismatch");
  if (!x.allFinite()) throw std::invalid_argument("residual: non-finite guess");

  const auto& quad = degree4_rule();
  const Eigen::VectorXd u = x.segment(0, nv_);
  const Eigen::VectorXd n = x.segment(nv_, nv_);
  const Eigen::VectorXd mu = x.segment(2 * nv_, nv_);
  Eigen::Map<const Eigen::VectorXd> u_old(state_old.u.values.data(), nv_);
  Eigen::Map<const Eigen::VectorXd> n_old(state_old.n.values.data(), nv_);

  Eigen::VectorXd r = Eigen::VectorXd::Zero(dof_count());
  r.segment(0, nv_) = mass_ * (u - u_old) / dt;
  r.segment(nv_, nv_) = mass_ * (n - n_old) / dt;
  r.segment(2 * nv_, nv_) = mass_ * mu - params_.eps * params_.eps * (stiffness_ * u) -
                            split_f_implicit_slope * (mass_ * u) -
                            explicit_split_term(state_old.u) + params_.chi0 * (mass_ * n);

  const double dp0 = params_.delta * params_.p0;
  for (int k = 0; k < mesh_.num_triangles(); ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    const auto grads = p1_gradients(mesh_, k);

    Vec2 grad_mu{0.0, 0.0}, grad_mun{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      grad_mu = grad_mu + mu[t[i]] * grads[i];
      grad_mun = grad_mun + (n[t[i]] / params_.delta - params_.chi0 * state_old.u[t[i]]) * grads[i];
    }

    double mbar = 0.0, nbar = 0.0;
    std::array<double, 3> react{0.0, 0.0, 0.0};
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      double uq = 0.0, nq = 0.0, muq = 0.0, uoldq = 0.0;
      for (int i = 0; i < 3; ++i) {
        uq += quad.bary[q][i] * u[t[i]];
        nq += quad.bary[q][i] * n[t[i]];
        muq += quad.bary[q][i] * mu[t[i]];
        uoldq += quad.bary[q][i] * state_old.u[t[i]];
      }
      mbar += quad.weight[q] * mobility_.value(uq);
      nbar += quad.weight[q] * mobility_.value(nq);
      const double munq = nq / params_.delta - params_.chi0 * uoldq;
      const double pq = proliferation(uq, nq, params_) * pos_part(munq - muq);
      for (int i = 0; i < 3; ++i) react[i] += quad.weight[q] * pq * quad.bary[q][i];
    }

    for (int i = 0; i < 3; ++i) {
      r[t[i]] += area * (params_.cu * mbar * dot(grad_mu, grads[i]) - dp0 * react[i]);
      r[nv_ + t[i]] += area * (params_.cn * nbar * dot(grad_mun, grads[i]) + dp0 * react[i]);
    }
  }
  return r;
}

Eigen::SparseMatrix<double> FeScheme::jacobian(const FeState& state_old,
                                               const Eigen::VectorXd& x, double dt) const {
  if (x.size() != dof_count()) throw std::invalid_argument("jacobian: dof size mismatch");
  const auto& quad = degree4_rule();
  const Eigen::VectorXd u = x.segment(0, nv_);
  const Eigen::VectorXd n = x.segment(nv_, nv_);
  const Eigen::VectorXd mu = x.segment(2 * nv_, nv_);

  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(60 * mesh_.num_triangles()) +
               3 * static_cast<size_t>(mass_.nonZeros()));

  // Static blocks: time derivatives and the (linear) mu equation.
  for (int c = 0; c < mass_.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(mass_, c); it; ++it) {
      const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      trip.emplace_back(i, j, it.value() / dt);
      trip.emplace_back(nv_ + i, nv_ + j, it.value() / dt);
      trip.emplace_back(2 * nv_ + i, j, -split_f_implicit_slope * it.value());
      trip.emplace_back(2 * nv_ + i, nv_ + j, params_.chi0 * it.value());
      trip.emplace_back(2 * nv_ + i, 2 * nv_ + j, it.value());
    }
  for (int c = 0; c < stiffness_.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(stiffness_, c); it; ++it)
      trip.emplace_back(2 * nv_ + static_cast<int>(it.row()), static_cast<int>(it.col()),
                        -params_.eps * params_.eps * it.value());

  const double dp0 = params_.delta * params_.p0;
  for (int k = 0; k < mesh_.num_triangles(); ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    const auto grads = p1_gradients(mesh_, k);

    Vec2 grad_mu{0.0, 0.0}, grad_mun{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      grad_mu = grad_mu + mu[t[i]] * grads[i];
      grad_mun = grad_mun + (n[t[i]] / params_.delta - params_.chi0 * state_old.u[t[i]]) * grads[i];
    }

    double mbar = 0.0, nbar = 0.0;
    std::array<double, 3> dmbar{}, dnbar{};
    std::array<std::array<double, 3>, 3> react_du{}, react_dn{}, react_dmu{};
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      double uq = 0.0, nq = 0.0, muq = 0.0, uoldq = 0.0;
      for (int i = 0; i < 3; ++i) {
        uq += quad.bary[q][i] * u[t[i]];
        nq += quad.bary[q][i] * n[t[i]];
        muq += quad.bary[q][i] * mu[t[i]];
        uoldq += quad.bary[q][i] * state_old.u[t[i]];
      }
      mbar += quad.weight[q] * mobility_.value(uq);
      nbar += quad.weight[q] * mobility_.value(nq);
      const double dmq = quad.weight[q] * mobility_.derivative(uq);
      const double dnq = quad.weight[q] * mobility_.derivative(nq);
      const double munq = nq / params_.delta - params_.chi0 * uoldq;
      const double arg = munq - muq;
      const double ap = pos_part(arg);
      const double heav = pos_part_derivative(arg);
      const double pk = proliferation(uq, nq, params_);
      const double du_q = proliferation_du(uq, nq, params_) * ap;
      const double dn_q = proliferation_dn(uq, nq, params_) * ap + pk * heav / params_.delta;
      const double dmu_q = -pk * heav;
      for (int i = 0; i < 3; ++i) {
        dmbar[i] += dmq * quad.bary[q][i];
        dnbar[i] += dnq * quad.bary[q][i];
        for (int j = 0; j < 3; ++j) {
          const double wij = quad.weight[q] * quad.bary[q][i] * quad.bary[q][j];
          react_du[i][j] += wij * du_q;
          react_dn[i][j] += wij * dn_q;
          react_dmu[i][j] += wij * dmu_q;
        }
      }
    }

    for (int i = 0; i < 3; ++i) {
      const double gu = dot(grad_mu, grads[i]);
      const double gn = dot(grad_mun, grads[i]);
      for (int j = 0; j < 3; ++j) {
        const double gij = dot(grads[j], grads[i]);
        // u-equation
        trip.emplace_back(t[i], t[j], area * (params_.cu * gu * dmbar[j] - dp0 * react_du[i][j]));
        trip.emplace_back(t[i], nv_ + t[j], area * (-dp0 * react_dn[i][j]));
        trip.emplace_back(t[i], 2 * nv_ + t[j],
                          area * (params_.cu * mbar * gij - dp0 * react_dmu[i][j]));
        // n-equation
        trip.emplace_back(nv_ + t[i], t[j], area * dp0 * react_du[i][j]);
        trip.emplace_back(nv_ + t[i], nv_ + t[j],
                          area * (params_.cn * (gn * dnbar[j] + nbar * gij / params_.delta) +
                                  dp0 * react_dn[i][j]));
        trip.emplace_back(nv_ + t[i], 2 * nv_ + t[j], area * dp0 * react_dmu[i][j]);
      }
    }
  }

  Eigen::SparseMatrix<double> jac(dof_count(), dof_count());
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

std::pair<FeState, StepDiagnostics> FeScheme::step(const FeState& state_old, double dt,
                                                   const NewtonSettings& newton) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  const NewtonResult sol = newton_solve(
      [&](const Eigen::VectorXd& y) { return residual(state_old, y, dt); },
      [&](const Eigen::VectorXd& y) { return jacobian(state_old, y, dt); },
      pack(state_old.u, state_old.n, state_old.mu_u), newton);

  FeState next;
  unpack(sol.x, next.u, next.n, next.mu_u);
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
  diag.min_ureg = diag.min_u;
  diag.max_ureg = diag.max_u;

  const double e_old = energy(state_old.u, state_old.n, mesh_, params_);
  diag.energy = energy(next.u, next.n, mesh_, params_);
  diag.energy_decrement = diag.energy - e_old;

  // Time-discrete energy-law monitor (recorded, never enforced: the
  // baseline may lose it once the bounds fail).
  const auto& quad = degree4_rule();
  double dissipation = 0.0;
  double dn_sq = 0.0;
  for (int k = 0; k < mesh_.num_triangles(); ++k) {
    const auto& t = mesh_.triangle(k);
    const double area = mesh_.triangle_area(k);
    const auto grads = p1_gradients(mesh_, k);
    Vec2 grad_mu{0.0, 0.0}, grad_mun{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      grad_mu = grad_mu + next.mu_u[t[i]] * grads[i];
      grad_mun = grad_mun +
                 (next.n[t[i]] / params_.delta - params_.chi0 * state_old.u[t[i]]) * grads[i];
    }
    double local = 0.0, local_dn = 0.0;
    for (int q = 0; q < TriangleQuadrature::size; ++q) {
      double uq = 0.0, nq = 0.0, muq = 0.0, uoldq = 0.0, dnq = 0.0;
      for (int i = 0; i < 3; ++i) {
        uq += quad.bary[q][i] * next.u[t[i]];
        nq += quad.bary[q][i] * next.n[t[i]];
        muq += quad.bary[q][i] * next.mu_u[t[i]];
        uoldq += quad.bary[q][i] * state_old.u[t[i]];
        dnq += quad.bary[q][i] * (next.n[t[i]] - state_old.n[t[i]]);
      }
      const double munq = nq / params_.delta - params_.chi0 * uoldq;
      const double ap = pos_part(munq - muq);
      local += quad.weight[q] * (params_.cu * mobility_.value(uq) * dot(grad_mu, grad_mu) +
                                 params_.cn * mobility_.value(nq) * dot(grad_mun, grad_mun) +
                                 params_.delta * params_.p0 *
                                     proliferation(uq, nq, params_) * ap * ap);
      local_dn += quad.weight[q] * dnq * dnq;
    }
    dissipation += area * local;
    dn_sq += area * local_dn;
  }
  Eigen::VectorXd du(nv_);
  for (int j = 0; j < nv_; ++j) du[j] = next.u[j] - state_old.u[j];
  const double grad_du = du.dot(stiffness_ * du);
  diag.energy_law_lhs = diag.energy_decrement + dt * dissipation +
                        0.5 * params_.eps * params_.eps * grad_du +
                        dn_sq / (2.0 * params_.delta);

  return {std::move(next), diag};
}

}  // namespace tumordg
