#include "tumordg/driver.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tumordg/dg_scheme.hpp"
#include "tumordg/fe_scheme.hpp"
#include "tumordg/presets.hpp"
#include "tumordg/vtk.hpp"

namespace tumordg {

void write_diagnostics_header(std::ostream& out) {
  out << "step,time,mass_u,mass_n,mass_total,min_u,max_u,min_n,max_n,"
         "min_ureg,max_ureg,energy,newton_iters,residual\n";
}

void write_diagnostics_row(std::ostream& out, long step, double time,
                           const StepDiagnostics& d) {
  char buf[640];
  std::snprintf(buf, sizeof(buf),
                "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g\n",
                step, time, d.mass_u, d.mass_n, d.mass_total, d.min_u, d.max_u, d.min_n,
                d.max_n, d.min_ureg, d.max_ureg, d.energy, d.newton_iters,
                d.final_residual);
  out << buf;
}

namespace {

std::string snapshot_path(const RunConfig& cfg, long index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06ld.vtk", index);
  return (std::filesystem::path(cfg.output_dir) / buf).string();
}

/// DG and FE runs share the stepping loop; the runner supplies the step
/// call and the snapshot fields.
template <typename Runner>
void run_loop(Runner& runner, const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream csv(std::filesystem::path(cfg.output_dir) / "diagnostics.csv");
  if (!csv) throw std::runtime_error("cannot open diagnostics.csv for writing");
  write_diagnostics_header(csv);

  runner.snapshot(snapshot_path(cfg, 0));

  const double dt_floor = cfg.dt / 256.0;
  double dt = cfg.dt;
  long accepted = 0;
  long snapshots = 1;
  const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
  while (runner.time() < cfg.t_end - t_eps &&
         (cfg.max_steps < 0 || accepted < cfg.max_steps)) {
    const double dt_step = std::min(dt, cfg.t_end - runner.time());
    StepDiagnostics diag;
    try {
      diag = runner.step(dt_step, cfg.newton);
    } catch (const NewtonDiverged& e) {
      dt *= 0.5;
      std::cerr << "newton diverged at t=" << runner.time() << " (" << e.what()
                << "); retrying with dt=" << dt << "\n";
      if (dt < dt_floor)
        throw SolverAbort("time step fell below dt/256 without Newton convergence");
      continue;
    }
    ++accepted;
    write_diagnostics_row(csv, accepted, runner.time(), diag);
    if (accepted % cfg.output_every == 0) runner.snapshot(snapshot_path(cfg, snapshots++));
  }
  if (!csv) throw std::runtime_error("writing diagnostics.csv failed");
}

struct DgRunner {
  DgRunner(const Mesh& mesh, const RunConfig& cfg) : scheme(mesh, cfg.params) {
    auto [u0, n0] = sample_ic(cfg.ic, mesh, cfg.params, cfg.ic_u0, cfg.ic_n0);
    state = scheme.make_state(std::move(u0), std::move(n0));
  }

  double time() const { return state.time; }

  StepDiagnostics step(double dt, const NewtonSettings& newton) {
    auto [next, diag] = scheme.step(state, dt, newton);
    state = std::move(next);
    return diag;
  }

  void snapshot(const std::string& path) const {
    write_vtk(path, scheme.mesh(),
              {{"u", &state.u.values}, {"n", &state.n.values}, {"mu_n", &state.mu_n.values}},
              {{"ureg", &state.u_reg.values}, {"mu_u", &state.mu_u.values}});
  }

  DgScheme scheme;
  SchemeState state;
};

struct FeRunner {
  FeRunner(const Mesh& mesh, const RunConfig& cfg) : scheme(mesh, cfg.params) {
    auto [u0, n0] = sample_ic_vertices(cfg.ic, mesh, cfg.params, cfg.ic_u0, cfg.ic_n0);
    state = scheme.make_state(std::move(u0), std::move(n0));
  }

  double time() const { return state.time; }

  StepDiagnostics step(double dt, const NewtonSettings& newton) {
    auto [next, diag] = scheme.step(state, dt, newton);
    state = std::move(next);
    return diag;
  }

  void snapshot(const std::string& path) const {
    const Mesh& mesh = scheme.mesh();
    const P0Field u_el = project_p0(state.u, mesh);
    const P0Field n_el = project_p0(state.n, mesh);
    P0Field mu_n_el(mesh.num_triangles(), 0.0);
    for (int k = 0; k < mesh.num_triangles(); ++k)
      mu_n_el[k] = n_el[k] / scheme.params().delta - scheme.params().chi0 * u_el[k];
    write_vtk(path, mesh,
              {{"u", &u_el.values}, {"n", &n_el.values}, {"mu_n", &mu_n_el.values}},
              {{"ureg", &state.u.values}, {"mu_u", &state.mu_u.values}});
  }

  FeScheme scheme;
  FeState state;
};

}  // namespace

void run(const RunConfig& cfg) {
  cfg.validate();
  const Mesh mesh = generate_crisscross(cfg.domain, cfg.nx, cfg.ny);
  if (cfg.scheme == "dg") {
    DgRunner runner(mesh, cfg);
    run_loop(runner, cfg);
  } else {
    FeRunner runner(mesh, cfg);
    run_loop(runner, cfg);
  }
}

}  // namespace tumordg
