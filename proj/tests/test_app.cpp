#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tumordg/config.hpp"
#include "tumordg/driver.hpp"
#include "tumordg/presets.hpp"
#include "tumordg/vtk.hpp"

using namespace tumordg;

#ifndef TUMORDG_SOURCE_DIR
#define TUMORDG_SOURCE_DIR "."
#endif

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tumordg_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const RunConfig cfg = load_config("scheme = dg\nic = three_tumors\n");
  CHECK(cfg.scheme == "dg");
  CHECK(cfg.newton.abs_tol == 1e-11);
  CHECK(cfg.newton.max_iters == 30);
  CHECK(cfg.domain.x0 == -10.0);
  CHECK(cfg.domain.y1 == 10.0);
  CHECK(cfg.params.eps == 0.1);
  CHECK(cfg.params.delta == 0.01);
  CHECK(cfg.output_every >= 1);
}

TEST_CASE("shipped config files reproduce the experiment parameters") {
  const auto dir = std::filesystem::path(TUMORDG_SOURCE_DIR) / "configs";

  const RunConfig t1 = load_config_file((dir / "test1_chi0.cfg").string());
  CHECK(t1.params.cu == 100.0);
  CHECK(t1.params.cn == 0.01);
  CHECK(t1.params.p0 == 125.0);
  CHECK(t1.params.eps == 0.1);
  CHECK(t1.params.delta == 0.01);
  CHECK(t1.params.chi0 == 0.0);
  CHECK(t1.dt == 1e-5);
  CHECK(t1.params.mob_p == 1);
  CHECK(t1.params.mob_q == 1);
  CHECK(t1.ic == "three_tumors");

  const RunConfig t1x = load_config_file((dir / "test1_chi10.cfg").string());
  CHECK(t1x.params.chi0 == 10.0);
  CHECK(t1x.dt == 5e-6);

  const RunConfig t2 = load_config_file((dir / "test2_reference.cfg").string());
  CHECK(t2.params.cu == 2.8);
  CHECK(t2.params.cn == 2.8e-4);
  CHECK(t2.params.p0 == 0.5);
  CHECK(t2.params.chi0 == 0.1);
  CHECK(t2.dt == 0.1);
  CHECK(t2.ic == "irregular_tumor");

  const RunConfig t2n = load_config_file((dir / "test2_nonsymmetric.cfg").string());
  CHECK(t2n.params.mob_p == 5);
  CHECK(t2n.params.mob_q == 1);
  CHECK(t2n.params.prolif_r == 1);
  CHECK(t2n.params.prolif_s == 3);
}

TEST_CASE("config parse errors carry line numbers and field names") {
  auto message_of = [](const std::string& text) {
    try {
      load_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of("scheme dg\n").find("line 1") != std::string::npos);
  CHECK(message_of("\n\nbogus_key = 3\n").find("line 3") != std::string::npos);
  CHECK(message_of("bogus_key = 3\n").find("bogus_key") != std::string::npos);
  CHECK(message_of("dt = fast\n").find("dt") != std::string::npos);
  CHECK(message_of("scheme = spectral\n").find("scheme") != std::string::npos);
  CHECK(message_of("ic = blob\n").find("blob") != std::string::npos);
  CHECK(message_of("dt = -1\n").find("dt") != std::string::npos);
  CHECK(message_of("delta = 0\n").find("delta") != std::string::npos);
  CHECK(message_of("domain = 1 2 3\n").find("domain") != std::string::npos);
  CHECK_THROWS_AS(load_config_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("sections and comments are tolerated") {
  const RunConfig cfg = load_config(
      "# comment\nscheme = fe\n[model]\nchi0 = 10 ; inline comment\n\n[newton]\n"
      "newton_abs_tol = 1e-12\n");
  CHECK(cfg.scheme == "fe");
  CHECK(cfg.params.chi0 == 10.0);
  CHECK(cfg.newton.abs_tol == 1e-12);
}

TEST_CASE("three-tumor initial data") {
  const Mesh mesh = generate_crisscross({-10, -10, 10, 10}, 20, 20);
  ModelParams prm;
  auto [u0, n0] = sample_ic("three_tumors", mesh, prm);

  for (int k = 0; k < mesh.num_triangles(); ++k) {
    CHECK(u0[k] >= 0.0);
    CHECK(u0[k] <= 1.0);
    CHECK(n0[k] + u0[k] == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Far from every tumor the tanh terms saturate and u0 vanishes.
  int far = -1;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const Vec2 b = mesh.barycenter(k);
    if (b.x > 8.0 && b.y < -8.0) far = k;
  }
  REQUIRE(far >= 0);
  CHECK(u0[far] <= 1e-12);
}

TEST_CASE("irregular-growth initial data peaks at the tumor center") {
  const Mesh mesh = generate_crisscross({-10, -10, 10, 10}, 40, 40);
  ModelParams prm;
  auto [u0, n0] = sample_ic("irregular_tumor", mesh, prm);
  int center = 0;
  double best = 1e30;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const Vec2 b = mesh.barycenter(k);
    const double d = std::hypot(b.x, b.y);
    if (d < best) {
      best = d;
      center = k;
    }
  }
  CHECK(u0[center] >= 1.0 - 1e-9);
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    CHECK(n0[k] >= 0.0);
    CHECK(n0[k] <= 1.0);
  }
}

TEST_CASE("zero run: constant diagnostics, exact header, bitwise reruns") {
  RunConfig cfg;
  cfg.scheme = "dg";
  cfg.ic = "zero";
  cfg.nx = cfg.ny = 4;
  cfg.dt = 0.1;
  cfg.t_end = 0.5;
  cfg.output_every = 2;
  const auto dir = temp_dir("zero_run");
  cfg.output_dir = dir.string();
  run(cfg);

  const std::string csv = slurp(dir / "diagnostics.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "step,time,mass_u,mass_n,mass_total,min_u,max_u,min_n,max_n,"
        "min_ureg,max_ureg,energy,newton_iters,residual");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row)) {
    ++rows;
    // mass and energy columns are identically zero
    std::istringstream cells(row);
    std::string cell;
    int col = 0;
    while (std::getline(cells, cell, ',')) {
      if (col >= 2 && col <= 11) CHECK(std::stod(cell) == 0.0);
      ++col;
    }
    CHECK(col == 14);
  }
  CHECK(rows == 5);

  run(cfg);  // rerun reproduces the file bitwise
  CHECK(slurp(dir / "diagnostics.csv") == csv);

  CHECK(std::filesystem::exists(dir / "snapshot_000000.vtk"));
  CHECK(std::filesystem::exists(dir / "snapshot_000001.vtk"));
}

TEST_CASE("snapshot files carry the advertised fields") {
  RunConfig cfg;
  cfg.scheme = "dg";
  cfg.ic = "irregular_tumor";
  cfg.nx = cfg.ny = 6;
  cfg.dt = 0.1;
  cfg.t_end = 0.2;
  cfg.output_every = 1;
  const auto dir = temp_dir("snapshots");
  cfg.output_dir = dir.string();
  run(cfg);

  const std::string vtk = slurp(dir / "snapshot_000001.vtk");
  CHECK(vtk.rfind("# vtk DataFile Version 3.0", 0) == 0);
  for (const char* needle :
       {"DATASET UNSTRUCTURED_GRID", "CELL_DATA 144", "POINT_DATA 85", "SCALARS u double 1",
        "SCALARS n double 1", "SCALARS mu_n double 1", "SCALARS ureg double 1",
        "SCALARS mu_u double 1", "CELL_TYPES 144"})
    CHECK(vtk.find(needle) != std::string::npos);

  // mass_total column is constant and the whole run reproduces bitwise.
  const std::string csv = slurp(dir / "diagnostics.csv");
  std::istringstream lines(csv);
  std::string row;
  std::getline(lines, row);  // header
  double mass0 = -1.0;
  while (std::getline(lines, row)) {
    std::istringstream cells(row);
    std::string cell;
    for (int col = 0; col <= 4; ++col) std::getline(cells, cell, ',');
    const double mass = std::stod(cell);
    if (mass0 < 0.0) mass0 = mass;
    CHECK(std::abs(mass - mass0) <= 1e-9 * mass0);
  }
  run(cfg);
  CHECK(slurp(dir / "diagnostics.csv") == csv);
}

TEST_CASE("fe runs write diagnostics too") {
  RunConfig cfg;
  cfg.scheme = "fe";
  cfg.ic = "irregular_tumor";
  cfg.nx = cfg.ny = 8;
  cfg.dt = 0.1;
  cfg.t_end = 0.3;
  cfg.output_every = 3;
  const auto dir = temp_dir("fe_run");
  cfg.output_dir = dir.string();
  run(cfg);
  const std::string csv = slurp(dir / "diagnostics.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 steps
}

TEST_CASE("solver abort after exhausting the halving policy") {
  RunConfig cfg;
  cfg.scheme = "dg";
  cfg.ic = "three_tumors";
  cfg.nx = cfg.ny = 8;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.params.cu = 100.0;
  cfg.params.cn = 0.01;
  cfg.params.p0 = 125.0;
  cfg.params.chi0 = 10.0;
  cfg.newton.max_iters = 2;  // starved on purpose
  const auto dir = temp_dir("abort");
  cfg.output_dir = dir.string();
  CHECK_THROWS_AS(run(cfg), SolverAbort);
}
