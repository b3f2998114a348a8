#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tumordg/mesh.hpp"

namespace tumordg {

using NamedField = std::pair<std::string, const std::vector<double>*>;

/// Writes a legacy-VTK ASCII unstructured grid (triangle cells, type 5)
/// with the given per-cell and per-point scalar fields.
void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<NamedField>& cell_data,
               const std::vector<NamedField>& point_data);

}  // namespace tumordg
