// Acceptance suite: structure-preservation and reproduction checks at fixed
// tolerances, one printed line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tumordg/dg_scheme.hpp"
#include "tumordg/fe_scheme.hpp"
#include "tumordg/presets.hpp"
#include "tumordg/upwind.hpp"

using namespace tumordg;

namespace {

ModelParams reference_params() {
  ModelParams prm;
  prm.eps = 0.1;
  prm.delta = 0.01;
  prm.chi0 = 0.1;
  prm.p0 = 0.5;
  prm.cu = 2.8;
  prm.cn = 2.8e-4;
  return prm;
}

ModelParams three_tumors_params(double chi0) {
  ModelParams prm;
  prm.eps = 0.1;
  prm.delta = 0.01;
  prm.chi0 = chi0;
  prm.p0 = 125.0;
  prm.cu = 100.0;
  prm.cn = 0.01;
  return prm;
}

// --- criterion 1: DG structure preservation on the reference run ---------

bool structure_preservation(std::string& detail) {
  const Mesh mesh = generate_crisscross({-10, -10, 10, 10}, 40, 40);
  const ModelParams prm = reference_params();
  const DgScheme scheme(mesh, prm);
  auto [u0, n0] = sample_ic("irregular_tumor", mesh, prm);
  SchemeState state = scheme.make_state(std::move(u0), std::move(n0));

  NewtonSettings newton;
  newton.abs_tol = 1e-12;

  double prev_mass = integrate(state.u, mesh) + integrate(state.n, mesh);
  double worst_drift = 0.0, worst_low = 0.0, worst_high = 0.0;
  double worst_energy_rise = 0.0, worst_law = -1e300;
  for (int m = 0; m < 200; ++m) {
    auto [next, diag] = scheme.step(state, 0.1, newton);
    state = std::move(next);
    worst_drift = std::max(worst_drift, std::abs(diag.mass_total - prev_mass));
    prev_mass = diag.mass_total;
    worst_low = std::min({worst_low, diag.min_u, diag.min_n});
    worst_high = std::max({worst_high, diag.max_u - 1.0, diag.max_n - 1.0});
    worst_energy_rise = std::max(worst_energy_rise, diag.energy_decrement);
    worst_law = std::max(worst_law, diag.energy_law_lhs);
  }
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "drift %.2e (<=1e-9), bounds [%.2e, 1+%.2e] (1e-8), dE %.2e (<=1e-9), "
                "law lhs %.2e (<=1e-9)",
                worst_drift, worst_low, worst_high, worst_energy_rise, worst_law);
  detail = buf;
  return worst_drift <= 1e-9 && worst_low >= -1e-8 && worst_high <= 1e-8 &&
         worst_energy_rise <= 1e-9 && worst_law <= 1e-9;
}

// --- criterion 2: upwind form properties ----------------------------------

bool upwind_properties(std::string& detail) {
  const Mesh mesh = generate_crisscross({0, 0, 1, 1}, 4, 4);
  const MobilitySplit mob(1, 1);
  std::mt19937 gen(777u);
  std::uniform_real_distribution<double> mu_d(-3.0, 3.0), v_d(-0.2, 1.2);

  double worst_neg = 0.0, worst_cons = 0.0;
  const P0Field ones(mesh.num_triangles(), 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    P0Field mu(mesh.num_triangles(), 0.0), v(mesh.num_triangles(), 0.0);
    for (int k = 0; k < mesh.num_triangles(); ++k) {
      mu[k] = mu_d(gen);
      v[k] = v_d(gen);
    }
    worst_neg = std::min(worst_neg, upwind_form(mu, v, mu, mesh, mob));
    worst_cons = std::max(worst_cons, std::abs(upwind_form(mu, v, ones, mesh, mob)));
  }

  const Mesh two(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1, 2}}, {{0, 2, 3}}});
  const double hand = upwind_form(P0Field(std::vector<double>{0.0, 1.0}),
                                  P0Field(std::vector<double>{0.25, 0.5}),
                                  P0Field(std::vector<double>{1.0, 0.0}), two,
                                  MobilitySplit(1, 1));
  const double hand_err = std::abs(hand - (-3.0));

  char buf[200];
  std::snprintf(buf, sizeof(buf), "min a(mu;mu) %.2e (>=-1e-13), |a(mu;1)| %.2e, hand %.2e",
                worst_neg, worst_cons, hand_err);
  detail = buf;
  return worst_neg >= -1e-13 && worst_cons <= 1e-13 && hand_err <= 1e-13;
}

// --- criterion 3: projection identities ------------------------------------

bool projection_identities(std::string& detail) {
  const Mesh meshes[2] = {generate_crisscross({0, 0, 5, 4}, 5, 4),
                          Mesh(std::vector<Vec2>{{0, 0}, {2, 0}, {2, 1}, {0, 1}},
                               {{{0, 1, 2}}, {{0, 2, 3}}})};
  std::mt19937 gen(4242u);
  double worst_mass = 0.0, worst_dual = 0.0, worst_bounds = 0.0;
  for (const Mesh& mesh : meshes) {
    std::uniform_real_distribution<double> v_d(-1.0, 2.0), mu_d(-5.0, 5.0), b_d(0.0, 1.0);
    for (int rep = 0; rep < 500; ++rep) {
      P0Field v(mesh.num_triangles(), 0.0), vb(mesh.num_triangles(), 0.0);
      P1Field mu(mesh.num_vertices(), 0.0);
      for (double& x : v.values) x = v_d(gen);
      for (double& x : vb.values) x = b_d(gen);
      for (double& x : mu.values) x = mu_d(gen);

      const P1Field w = regularize_p1(v, mesh);
      const double iv = integrate(v, mesh);
      worst_mass = std::max(worst_mass,
                            std::abs(integrate(w, mesh) - iv) / std::max(1.0, std::abs(iv)));

      const double exact = integrate_product(v, mu, mesh);
      const double lumped = lumped_inner(w, mu, mesh);
      worst_dual = std::max(worst_dual,
                            std::abs(lumped - exact) / std::max(1.0, std::abs(exact)));

      const P1Field wb = regularize_p1(vb, mesh);
      for (double x : wb.values)
        worst_bounds = std::max(worst_bounds, std::max(-x, x - 1.0));
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf), "mass %.2e, duality %.2e (<=1e-12 rel), bounds excess %.2e",
                worst_mass, worst_dual, worst_bounds);
  detail = buf;
  return worst_mass <= 1e-12 && worst_dual <= 1e-12 && worst_bounds <= 0.0;
}

// --- criterion 4: scalar-ODE oracle equivalence -----------------------------

bool scalar_oracle_equivalence(std::string& detail) {
  const Mesh mesh = generate_crisscross({-1, -1, 1, 1}, 3, 3);
  const ModelParams prm = reference_params();
  const DgScheme dg(mesh, prm);
  const FeScheme fe(mesh, prm);
  const oracles::ScalarOracle oracle(prm);

  SchemeState dg_state =
      dg.make_state(P0Field(mesh.num_triangles(), 0.5), P0Field(mesh.num_triangles(), 0.5));
  FeState fe_state =
      fe.make_state(P1Field(mesh.num_vertices(), 0.5), P1Field(mesh.num_vertices(), 0.5));
  oracles::ScalarState ref = oracle.initial(0.5, 0.5);

  NewtonSettings newton;
  double worst_dg = 0.0, worst_fe = 0.0;
  for (int m = 0; m < 50; ++m) {
    ref = oracle.step(ref, 0.1);
    dg_state = dg.step(dg_state, 0.1, newton).first;
    fe_state = fe.step(fe_state, 0.1, newton).first;
    for (double v : dg_state.u.values) worst_dg = std::max(worst_dg, std::abs(v - ref.u));
    for (double v : dg_state.n.values) worst_dg = std::max(worst_dg, std::abs(v - ref.n));
    for (double v : fe_state.u.values) worst_fe = std::max(worst_fe, std::abs(v - ref.u));
    for (double v : fe_state.n.values) worst_fe = std::max(worst_fe, std::abs(v - ref.n));
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max |dg - oracle| %.2e, |fe - oracle| %.2e (<=1e-10)",
                worst_dg, worst_fe);
  detail = buf;
  return worst_dg <= 1e-10 && worst_fe <= 1e-10;
}

// --- criterion 5: jacobian consistency --------------------------------------

bool jacobian_consistency(std::string& detail) {
  const Mesh mesh = generate_crisscross({0, 0, 1, 1}, 2, 2);
  const ModelParams prm = reference_params();
  const DgScheme dg(mesh, prm);
  const FeScheme fe(mesh, prm);
  const int nt = mesh.num_triangles(), nv = mesh.num_vertices();
  std::mt19937 gen(99u);
  std::uniform_real_distribution<double> u_d(0.1, 0.44), n_d(0.56, 0.95), mu_d(-0.3, 0.3),
      s_d(0.1, 0.9);

  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    P0Field u0(nt, 0.0), n0(nt, 0.0);
    for (int k = 0; k < nt; ++k) {
      u0[k] = s_d(gen);
      n0[k] = n_d(gen);
    }
    const SchemeState s0 = dg.make_state(u0, n0);
    Eigen::VectorXd x(dg.dof_count());
    for (int k = 0; k < nt; ++k) {
      x[k] = u_d(gen);
      x[nt + k] = n_d(gen);
    }
    for (int j = 0; j < nv; ++j) x[2 * nt + j] = mu_d(gen);
    const Eigen::MatrixXd jac = Eigen::MatrixXd(dg.jacobian(s0, x, 0.05));
    worst = std::max(worst, oracles::fd_jacobian_error(
                                [&](const Eigen::VectorXd& y) { return dg.residual(s0, y, 0.05); },
                                jac, x, 1e-6));

    P1Field fu0(nv, 0.0), fn0(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
      fu0[j] = s_d(gen);
      fn0[j] = n_d(gen);
    }
    const FeState f0 = fe.make_state(fu0, fn0);
    Eigen::VectorXd y(fe.dof_count());
    for (int j = 0; j < nv; ++j) {
      y[j] = u_d(gen);
      y[nv + j] = n_d(gen);
      y[2 * nv + j] = mu_d(gen);
    }
    const Eigen::MatrixXd fjac = Eigen::MatrixXd(fe.jacobian(f0, y, 0.05));
    worst = std::max(worst, oracles::fd_jacobian_error(
                                [&](const Eigen::VectorXd& z) { return fe.residual(f0, z, 0.05); },
                                fjac, y, 1e-6));
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "max rel fd error %.2e (<=1e-5)", worst);
  detail = buf;
  return worst <= 1e-5;
}

// --- criterion 6: convex splitting inequality --------------------------------

bool convex_splitting(std::string& detail) {
  double worst = -1e300;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const double a = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double b = static_cast<double>(j) / (n - 1);
      const double violation = potential(a) - potential(b) - split_f(a, b) * (a - b);
      worst = std::max(worst, violation);
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "max violation %.2e (<=1e-14) on 1000x1000 grid", worst);
  detail = buf;
  return worst <= 1e-14;
}

// --- criterion 7: DG-vs-FE bounds under strong cross-diffusion ---------------

bool cross_diffusion_comparison(std::string& detail) {
  const Mesh mesh = generate_crisscross({-10, -10, 10, 10}, 70, 70);
  const ModelParams prm = three_tumors_params(10.0);
  NewtonSettings newton;

  const int steps = 10;
  const double dt0 = 5e-6;

  double fe_min = 1.0;
  {
    const FeScheme fe(mesh, prm);
    auto [u0, n0] = sample_ic_vertices("three_tumors", mesh, prm);
    FeState state = fe.make_state(std::move(u0), std::move(n0));
    double dt = dt0;
    for (int m = 0; m < steps; ++m) {
      try {
        auto [next, diag] = fe.step(state, dt, newton);
        state = std::move(next);
        fe_min = std::min(fe_min, diag.min_u);
      } catch (const NewtonDiverged&) {
        dt *= 0.5;  // halving policy
        if (dt < dt0 / 256.0) break;
        --m;
      }
    }
  }

  double dg_min = 1.0;
  {
    const DgScheme dg(mesh, prm);
    auto [u0, n0] = sample_ic("three_tumors", mesh, prm);
    SchemeState state = dg.make_state(std::move(u0), std::move(n0));
    for (int m = 0; m < steps; ++m) {
      auto [next, diag] = dg.step(state, dt0, newton);
      state = std::move(next);
      dg_min = std::min(dg_min, diag.min_u);
    }
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf), "fe min_u %.3e (<=-0.01), dg min_u %.3e (>=-1e-8)", fe_min,
                dg_min);
  detail = buf;
  return fe_min <= -0.01 && dg_min >= -1e-8;
}

// --- criterion 8: chi0 = 0 topology agreement --------------------------------

/// Connected components of the marked triangle set whose area is at least
/// min_area (sub-tumor-scale islands from the baseline's oscillations are
/// not merging topology).
int component_count(const Mesh& mesh, const std::vector<char>& mark, double min_area) {
  std::vector<std::vector<int>> neighbors(mesh.num_triangles());
  for (const Edge& e : mesh.edges())
    if (e.interior()) {
      neighbors[e.owner].push_back(e.neighbor);
      neighbors[e.neighbor].push_back(e.owner);
    }
  std::vector<char> seen(mesh.num_triangles(), 0);
  int components = 0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    if (!mark[k] || seen[k]) continue;
    double area = 0.0;
    std::deque<int> queue{k};
    seen[k] = 1;
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop_front();
      area += mesh.triangle_area(t);
      for (int nb : neighbors[t])
        if (mark[nb] && !seen[nb]) {
          seen[nb] = 1;
          queue.push_back(nb);
        }
    }
    if (area >= min_area) ++components;
  }
  return components;
}

std::vector<char> threshold_mark(const P0Field& u) {
  std::vector<char> mark(u.values.size(), 0);
  for (size_t k = 0; k < u.values.size(); ++k) mark[k] = u.values[k] > 0.5 ? 1 : 0;
  return mark;
}

bool topology_agreement(std::string& detail) {
  const Mesh mesh = generate_crisscross({-10, -10, 10, 10}, 40, 40);
  const ModelParams prm = three_tumors_params(0.0);
  NewtonSettings newton;
  const double dt = 1e-4;
  // Components of the regularized tumor field above 0.5 (the regularized
  // variable is the phase-field approximation for the DG scheme), ignoring
  // islands below the initial-tumor area scale.
  const double min_area = 2.0;
  const std::vector<double> targets = {2.5e-2, 5.0e-2, 7.5e-2};

  std::vector<int> dg_counts, fe_counts;
  {
    const DgScheme dg(mesh, prm);
    auto [u0, n0] = sample_ic("three_tumors", mesh, prm);
    SchemeState state = dg.make_state(std::move(u0), std::move(n0));
    for (double target : targets) {
      while (state.time < target - 1e-12)
        state = dg.step(state, dt, newton).first;
      dg_counts.push_back(component_count(mesh, threshold_mark(state.u_reg_p0), min_area));
    }
  }
  {
    const FeScheme fe(mesh, prm);
    auto [u0, n0] = sample_ic_vertices("three_tumors", mesh, prm);
    FeState state = fe.make_state(std::move(u0), std::move(n0));
    for (double target : targets) {
      while (state.time < target - 1e-12)
        state = fe.step(state, dt, newton).first;
      fe_counts.push_back(component_count(mesh, threshold_mark(project_p0(state.u, mesh)),
                                          min_area));
    }
  }

  char buf[200];
  std::snprintf(buf, sizeof(buf), "components dg (%d,%d,%d) vs fe (%d,%d,%d) at t=.025/.05/.075",
                dg_counts[0], dg_counts[1], dg_counts[2], fe_counts[0], fe_counts[1],
                fe_counts[2]);
  detail = buf;
  bool ok = true;
  for (size_t i = 0; i < targets.size(); ++i)
    ok = ok && dg_counts[i] == fe_counts[i] && dg_counts[i] >= 1;
  return ok;
}

// --- criterion 9: mobility normalization -------------------------------------

bool mobility_normalization(std::string& detail) {
  double worst_max = 0.0, worst_arg = 0.0;
  for (auto [p, q] : {std::pair<int, int>{1, 1}, {5, 1}, {1, 3}}) {
    const MobilitySplit m(p, q);
    double best = -1.0, best_v = 0.0;
    const int samples = 1000000;
    for (int i = 0; i <= samples; ++i) {
      const double v = static_cast<double>(i) / samples;
      const double h = m.value(v);
      if (h > best) {
        best = h;
        best_v = v;
      }
    }
    worst_max = std::max(worst_max, std::abs(best - 1.0));
    worst_arg = std::max(worst_arg, std::abs(best_v - m.vstar()));
  }
  char buf[140];
  std::snprintf(buf, sizeof(buf), "max |h*-1| %.2e (<=1e-9), |argmax-v*| %.2e (<=2e-6)",
                worst_max, worst_arg);
  detail = buf;
  return worst_max <= 1e-9 && worst_arg <= 2e-6;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "structure preservation (DG reference run)", structure_preservation},
      {2, "upwind form properties", upwind_properties},
      {3, "projection identities", projection_identities},
      {4, "scalar-ODE oracle equivalence", scalar_oracle_equivalence},
      {5, "jacobian finite-difference consistency", jacobian_consistency},
      {6, "convex-splitting inequality", convex_splitting},
      {7, "DG-vs-FE bounds under strong cross-diffusion", cross_diffusion_comparison},
      {8, "chi0=0 merging-topology agreement", topology_agreement},
      {9, "mobility normalization", mobility_normalization},
  };

  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d %s: %s — %s\n", c.id, ok ? "PASS" : "FAIL", c.name,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
