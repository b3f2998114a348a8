#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tumordg/config.hpp"
#include "tumordg/dg_scheme.hpp"
#include "tumordg/driver.hpp"
#include "tumordg/fe_scheme.hpp"
#include "tumordg/presets.hpp"
#include "tumordg/upwind.hpp"

namespace py = pybind11;
using namespace tumordg;

namespace {

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "structure-preserving upwind-DG solver for a phase-field tumor growth model";
  m.attr("__version__") = "0.1.0";

  py::class_<Rect>(m, "Rect")
      .def(py::init<>())
      .def(py::init([](double x0, double y0, double x1, double y1) {
             return Rect{x0, y0, x1, y1};
           }),
           py::arg("x0"), py::arg("y0"), py::arg("x1"), py::arg("y1"))
      .def_readwrite("x0", &Rect::x0)
      .def_readwrite("y0", &Rect::y0)
      .def_readwrite("x1", &Rect::x1)
      .def_readwrite("y1", &Rect::y1)
      .def("area", &Rect::area);

  py::class_<Edge>(m, "Edge")
      .def_readonly("v0", &Edge::v0)
      .def_readonly("v1", &Edge::v1)
      .def_readonly("owner", &Edge::owner)
      .def_readonly("neighbor", &Edge::neighbor)
      .def_readonly("length", &Edge::length)
      .def_readonly("barycenter_distance", &Edge::barycenter_distance)
      .def_property_readonly("normal",
                             [](const Edge& e) { return std::pair(e.normal.x, e.normal.y); })
      .def_property_readonly("interior", &Edge::interior);

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("num_vertices", &Mesh::num_vertices)
      .def_property_readonly("num_triangles", &Mesh::num_triangles)
      .def_property_readonly("num_edges", &Mesh::num_edges)
      .def_property_readonly("num_interior_edges", &Mesh::num_interior_edges)
      .def_property_readonly("total_area", &Mesh::total_area)
      .def_property_readonly("h", &Mesh::h)
      .def("vertices",
           [](const Mesh& mesh) {
             std::vector<std::pair<double, double>> out;
             out.reserve(mesh.vertices().size());
             for (const Vec2& v : mesh.vertices()) out.emplace_back(v.x, v.y);
             return out;
           })
      .def("triangles", [](const Mesh& mesh) { return mesh.triangles(); })
      .def("edge", &Mesh::edge, py::return_value_policy::reference_internal)
      .def("triangle_area", &Mesh::triangle_area)
      .def("barycenter",
           [](const Mesh& mesh, int k) {
             const Vec2 b = mesh.barycenter(k);
             return std::pair(b.x, b.y);
           })
      .def("vertex_support_area", &Mesh::vertex_support_area);

  m.def("generate_crisscross", &generate_crisscross, py::arg("domain"), py::arg("nx"),
        py::arg("ny"));
  m.def("read_mesh_file", &read_mesh_file, py::arg("path"));

  py::class_<AdmissibilityReport>(m, "AdmissibilityReport")
      .def_readonly("max_deviation", &AdmissibilityReport::max_deviation)
      .def_readonly("interior_edges", &AdmissibilityReport::interior_edges)
      .def_property_readonly("passed",
                             [](const AdmissibilityReport& r) { return r.pass; })
      .def("__bool__", [](const AdmissibilityReport& r) { return r.pass; });
  m.def("check_admissibility", &check_admissibility, py::arg("mesh"), py::arg("tol") = 1e-12);

  py::class_<P0Field>(m, "P0Field")
      .def(py::init<std::vector<double>>())
      .def(py::init<int, double>())
      .def_readwrite("values", &P0Field::values)
      .def("__len__", &P0Field::size);
  py::class_<P1Field>(m, "P1Field")
      .def(py::init<std::vector<double>>())
      .def(py::init<int, double>())
      .def_readwrite("values", &P1Field::values)
      .def("__len__", &P1Field::size);

  m.def("project_p0", &project_p0);
  m.def("regularize_p1", &regularize_p1);
  m.def("project_p0_of_p1", &project_p0_of_p1);
  m.def("lumped_inner", &lumped_inner);
  m.def("integrate_p0", py::overload_cast<const P0Field&, const Mesh&>(&integrate));
  m.def("integrate_p1", py::overload_cast<const P1Field&, const Mesh&>(&integrate));

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("eps", &ModelParams::eps)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("chi0", &ModelParams::chi0)
      .def_readwrite("p0", &ModelParams::p0)
      .def_readwrite("cu", &ModelParams::cu)
      .def_readwrite("cn", &ModelParams::cn)
      .def_readwrite("mob_p", &ModelParams::mob_p)
      .def_readwrite("mob_q", &ModelParams::mob_q)
      .def_readwrite("prolif_r", &ModelParams::prolif_r)
      .def_readwrite("prolif_s", &ModelParams::prolif_s)
      .def("validate", &ModelParams::validate);

  m.def("potential", &potential);
  m.def("potential_derivative", &potential_derivative);
  m.def("split_f", &split_f);
  m.def("pos_part", &pos_part);
  m.def("neg_part", &neg_part);
  m.def("normalized_hump", &normalized_hump);
  m.def("proliferation", &proliferation);
  m.def("mu_n_field", &mu_n_field);
  m.def("energy",
        py::overload_cast<const P1Field&, const P0Field&, const Mesh&, const ModelParams&>(
            &energy),
        py::arg("u_reg"), py::arg("n"), py::arg("mesh"), py::arg("params"));
  m.def("energy_p1",
        py::overload_cast<const P1Field&, const P1Field&, const Mesh&, const ModelParams&>(
            &energy),
        py::arg("u"), py::arg("n"), py::arg("mesh"), py::arg("params"));

  py::class_<MobilitySplit>(m, "MobilitySplit")
      .def(py::init<int, int>(), py::arg("p"), py::arg("q"))
      .def_property_readonly("vstar", &MobilitySplit::vstar)
      .def_property_readonly("normalization", &MobilitySplit::normalization)
      .def("value", &MobilitySplit::value)
      .def("increasing", &MobilitySplit::increasing)
      .def("decreasing", &MobilitySplit::decreasing);

  m.def("upwind_form", &upwind_form, py::arg("mu"), py::arg("v"), py::arg("vbar"),
        py::arg("mesh"), py::arg("mobility"));
  m.def("normal_gradient", &normal_gradient, py::arg("mu"), py::arg("mesh"),
        py::arg("edge_id"));

  py::class_<NewtonSettings>(m, "NewtonSettings")
      .def(py::init<>())
      .def_readwrite("abs_tol", &NewtonSettings::abs_tol)
      .def_readwrite("rel_tol", &NewtonSettings::rel_tol)
      .def_readwrite("max_iters", &NewtonSettings::max_iters)
      .def_readwrite("damping_factor", &NewtonSettings::damping_factor)
      .def_readwrite("min_damping", &NewtonSettings::min_damping);

  py::class_<StepDiagnostics>(m, "StepDiagnostics")
      .def_readonly("mass_u", &StepDiagnostics::mass_u)
      .def_readonly("mass_n", &StepDiagnostics::mass_n)
      .def_readonly("mass_total", &StepDiagnostics::mass_total)
      .def_readonly("min_u", &StepDiagnostics::min_u)
      .def_readonly("max_u", &StepDiagnostics::max_u)
      .def_readonly("min_n", &StepDiagnostics::min_n)
      .def_readonly("max_n", &StepDiagnostics::max_n)
      .def_readonly("min_ureg", &StepDiagnostics::min_ureg)
      .def_readonly("max_ureg", &StepDiagnostics::max_ureg)
      .def_readonly("energy", &StepDiagnostics::energy)
      .def_readonly("energy_decrement", &StepDiagnostics::energy_decrement)
      .def_readonly("newton_iters", &StepDiagnostics::newton_iters)
      .def_readonly("final_residual", &StepDiagnostics::final_residual)
      .def_readonly("energy_law_lhs", &StepDiagnostics::energy_law_lhs);

  py::class_<SchemeState>(m, "SchemeState")
      .def_readonly("u", &SchemeState::u)
      .def_readonly("n", &SchemeState::n)
      .def_readonly("mu_u", &SchemeState::mu_u)
      .def_readonly("u_reg", &SchemeState::u_reg)
      .def_readonly("u_reg_p0", &SchemeState::u_reg_p0)
      .def_readonly("mu_n", &SchemeState::mu_n)
      .def_readonly("time", &SchemeState::time)
      .def_readonly("step", &SchemeState::step);

  py::register_exception<NewtonDiverged>(m, "NewtonDiverged");
  py::register_exception<BoundsViolated>(m, "BoundsViolated");
  py::register_exception<EnergyIncreased>(m, "EnergyIncreased");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<SolverAbort>(m, "SolverAbort");

  py::class_<DgScheme>(m, "DgScheme")
      .def(py::init<const Mesh&, const ModelParams&>(), py::arg("mesh"), py::arg("params"),
           py::keep_alive<1, 2>())
      .def("make_state", &DgScheme::make_state, py::arg("u0"), py::arg("n0"))
      .def("initial_mu_u", &DgScheme::initial_mu_u)
      .def("step", &DgScheme::step, py::arg("state"), py::arg("dt"),
           py::arg("newton") = NewtonSettings{})
      .def("residual",
           [](const DgScheme& s, const SchemeState& old, const std::vector<double>& guess,
              double dt) { return to_std(s.residual(old, to_vector(guess), dt)); })
      .def_property_readonly("dof_count", &DgScheme::dof_count);

  py::class_<FeState>(m, "FeState")
      .def_readonly("u", &FeState::u)
      .def_readonly("n", &FeState::n)
      .def_readonly("mu_u", &FeState::mu_u)
      .def_readonly("time", &FeState::time)
      .def_readonly("step", &FeState::step);

  py::class_<FeScheme>(m, "FeScheme")
      .def(py::init<const Mesh&, const ModelParams&>(), py::arg("mesh"), py::arg("params"),
           py::keep_alive<1, 2>())
      .def("make_state", &FeScheme::make_state, py::arg("u0"), py::arg("n0"))
      .def("step", &FeScheme::step, py::arg("state"), py::arg("dt"),
           py::arg("newton") = NewtonSettings{})
      .def_property_readonly("dof_count", &FeScheme::dof_count);

  py::class_<ICPreset>(m, "ICPreset")
      .def_readonly("name", &ICPreset::name)
      .def_readonly("description", &ICPreset::description);
  m.def("ic_presets", &ic_presets);
  m.def("sample_ic", &sample_ic, py::arg("preset"), py::arg("mesh"), py::arg("params"),
        py::arg("const_u0") = 0.0, py::arg("const_n0") = 1.0);
  m.def("sample_ic_vertices", &sample_ic_vertices, py::arg("preset"), py::arg("mesh"),
        py::arg("params"), py::arg("const_u0") = 0.0, py::arg("const_n0") = 1.0);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("scheme", &RunConfig::scheme)
      .def_readwrite("domain", &RunConfig::domain)
      .def_readwrite("nx", &RunConfig::nx)
      .def_readwrite("ny", &RunConfig::ny)
      .def_readwrite("dt", &RunConfig::dt)
      .def_readwrite("t_end", &RunConfig::t_end)
      .def_readwrite("output_every", &RunConfig::output_every)
      .def_readwrite("max_steps", &RunConfig::max_steps)
      .def_readwrite("params", &RunConfig::params)
      .def_readwrite("newton", &RunConfig::newton)
      .def_readwrite("ic", &RunConfig::ic)
      .def_readwrite("ic_u0", &RunConfig::ic_u0)
      .def_readwrite("ic_n0", &RunConfig::ic_n0)
      .def_readwrite("output_dir", &RunConfig::output_dir);
  m.def("load_config", &load_config, py::arg("text"));
  m.def("load_config_file", &load_config_file, py::arg("path"));
  m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
