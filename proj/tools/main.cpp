#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>

#include "tumordg/config.hpp"
#include "tumordg/driver.hpp"
#include "tumordg/mesh.hpp"
#include "tumordg/presets.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& output_dir, long max_steps,
            unsigned long seed) {
  tumordg::RunConfig cfg = tumordg::load_config_file(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  if (max_steps >= 0) cfg.max_steps = max_steps;
  cfg.seed = seed;
  tumordg::run(cfg);
  std::cout << "run finished; diagnostics in " << cfg.output_dir << "/diagnostics.csv\n";
  return 0;
}

int cmd_mesh_check(const std::string& mesh_path, double tol) {
  const tumordg::Mesh mesh = tumordg::read_mesh_file(mesh_path);
  const auto report = tumordg::check_admissibility(mesh, tol);
  std::printf("vertices %d, triangles %d, interior edges %d, h = %.6g\n",
              mesh.num_vertices(), mesh.num_triangles(), report.interior_edges, mesh.h());
  std::printf("max angular deviation: %.3e (tol %.3e)\n", report.max_deviation, tol);
  for (const auto& o : report.worst)
    std::printf("  edge %d deviates by %.3e\n", o.edge, o.deviation);
  std::printf("admissibility: %s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 1;
}

int cmd_presets_list() {
  for (const auto& p : tumordg::ic_presets())
    std::printf("%-16s %s\n", p.name.c_str(), p.description.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-preserving upwind-DG tumor growth solver"};
  app.require_subcommand(1);

  std::string config_path, output_dir, mesh_path;
  long max_steps = -1;
  unsigned long seed = 0;
  double tol = 1e-12;

  auto* run_cmd = app.add_subcommand("run", "run a simulation from a config file");
  run_cmd->add_option("config", config_path, "config file (key = value)")->required();
  run_cmd->add_option("--output-dir", output_dir, "override the configured output directory");
  run_cmd->add_option("--max-steps", max_steps, "stop after this many accepted steps");
  run_cmd->add_option("--seed", seed, "reserved; the model is deterministic");

  auto* mesh_cmd = app.add_subcommand("mesh-check", "check barycenter orthogonality of a mesh file");
  mesh_cmd->add_option("meshfile", mesh_path, "plain-text mesh: 'nv nt', vertices, triangles")
      ->required();
  mesh_cmd->add_option("--tol", tol, "angular deviation tolerance");

  auto* presets_cmd = app.add_subcommand("presets", "initial-condition presets");
  auto* presets_list = presets_cmd->add_subcommand("list", "list available presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, output_dir, max_steps, seed);
    if (mesh_cmd->parsed()) return cmd_mesh_check(mesh_path, tol);
    if (presets_cmd->parsed() && presets_list->parsed()) return cmd_presets_list();
    std::cerr << "presets: expected a subcommand (list)\n";
    return 1;
  } catch (const tumordg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tumordg::SolverAbort& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
