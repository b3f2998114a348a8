#include "tumordg/vtk.hpp"

#include <fstream>
#include <stdexcept>

namespace tumordg {

namespace {

void write_scalars(std::ofstream& out, const std::vector<NamedField>& fields,
                   size_t expected, const char* kind) {
  for (const auto& [name, values] : fields) {
    if (values->size() != expected)
      throw std::invalid_argument(std::string("write_vtk: ") + kind + " field '" + name +
                                  "' has wrong size");
    out << "SCALARS " << name << " double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (double v : *values) out << v << '\n';
  }
}

}  // namespace

void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<NamedField>& cell_data,
               const std::vector<NamedField>& point_data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vtk: cannot open " + path);
  out.precision(17);

  out << "# vtk DataFile Version 3.0\n";
  out << "tumordg snapshot\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec2& v : mesh.vertices()) out << v.x << ' ' << v.y << " 0\n";
  out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (int k = 0; k < mesh.num_triangles(); ++k) out << "5\n";

  if (!cell_data.empty()) {
    out << "CELL_DATA " << mesh.num_triangles() << '\n';
    write_scalars(out, cell_data, static_cast<size_t>(mesh.num_triangles()), "cell");
  }
  if (!point_data.empty()) {
    out << "POINT_DATA " << mesh.num_vertices() << '\n';
    write_scalars(out, point_data, static_cast<size_t>(mesh.num_vertices()), "point");
  }
  if (!out) throw std::runtime_error("write_vtk: write failed for " + path);
}

}  // namespace tumordg
