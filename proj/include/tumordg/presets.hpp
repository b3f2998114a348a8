#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tumordg/fields.hpp"
#include "tumordg/mesh.hpp"
#include "tumordg/model.hpp"

namespace tumordg {

struct ICPreset {
  std::string name;
  std::string description;
};

const std::vector<ICPreset>& ic_presets();
bool is_ic_preset(const std::string& name);

/// Closed-form initial data evaluated at (x, y). The tanh profiles use the
/// interface width from params; the "constant" preset uses (const_u0,
/// const_n0).
double ic_u0(const std::string& preset, double x, double y, const ModelParams& params,
             double const_u0 = 0.0, double const_n0 = 1.0);
double ic_n0(const std::string& preset, double x, double y, const ModelParams& params,
             double const_u0 = 0.0, double const_n0 = 1.0);

/// Per-triangle sampling at barycenters, clamped to [0, 1].
std::pair<P0Field, P0Field> sample_ic(const std::string& preset, const Mesh& mesh,
                                      const ModelParams& params, double const_u0 = 0.0,
                                      double const_n0 = 1.0);

/// Vertex sampling of the same closed forms (finite-element initial data).
std::pair<P1Field, P1Field> sample_ic_vertices(const std::string& preset, const Mesh& mesh,
                                               const ModelParams& params,
                                               double const_u0 = 0.0, double const_n0 = 1.0);

}  // namespace tumordg
