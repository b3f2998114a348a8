#include "tumordg/upwind.hpp"

#include <stdexcept>

namespace tumordg {

EdgeFluxWorkspace::EdgeFluxWorkspace(const Mesh& mesh) {
  edge_ids.reserve(mesh.num_interior_edges());
  weight.reserve(mesh.num_interior_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.interior()) continue;
    edge_ids.push_back(e);
    weight.push_back(edge.length / edge.barycenter_distance);
  }
}

double normal_gradient(const P0Field& mu, const Mesh& mesh, int edge_id) {
  const Edge& edge = mesh.edge(edge_id);
  if (!edge.interior())
    throw std::invalid_argument("normal_gradient: boundary edge has no two-point stencil");
  return (mu[edge.neighbor] - mu[edge.owner]) / edge.barycenter_distance;
}

namespace {

struct EdgeFlux {
  double value = 0.0;   // flux through the edge (times |e|/D_e)
  double djump = 0.0;   // d value / d [mu]
  double dv_owner = 0.0;
  double dv_neighbor = 0.0;
};

/// Flux density of one interior edge, including the |e|/D_e weight:
///   w * ( [mu]+ * A - [mu]- * B ),
/// A = (Mup(v_K) + Mdown(v_L))+, B = (Mup(v_L) + Mdown(v_K))+.
EdgeFlux edge_flux(double w, double jump_mu, double v_owner, double v_neighbor,
                   const MobilitySplit& m, bool with_derivatives) {
  EdgeFlux out;
  const double a_raw = m.increasing(v_owner) + m.decreasing(v_neighbor);
  const double b_raw = m.increasing(v_neighbor) + m.decreasing(v_owner);
  const double a = pos_part(a_raw);
  const double b = pos_part(b_raw);
  out.value = w * (pos_part(jump_mu) * a - neg_part(jump_mu) * b);
  if (!with_derivatives) return out;

  const double hp = pos_part_derivative(jump_mu);        // [mu] > 0 branch
  const double hm = pos_part_derivative(-jump_mu);       // [mu] < 0 branch
  out.djump = w * (hp * a + hm * b);
  const double da = pos_part_derivative(a_raw);
  const double db = pos_part_derivative(b_raw);
  out.dv_owner = w * (pos_part(jump_mu) * da * m.increasing_derivative(v_owner) -
                      neg_part(jump_mu) * db * m.decreasing_derivative(v_owner));
  out.dv_neighbor = w * (pos_part(jump_mu) * da * m.decreasing_derivative(v_neighbor) -
                         neg_part(jump_mu) * db * m.increasing_derivative(v_neighbor));
  return out;
}

}  // namespace

double upwind_form(const P0Field& mu, const P0Field& v, const P0Field& vbar,
                   const Mesh& mesh, const MobilitySplit& mobility) {
  if (mu.size() != mesh.num_triangles() || v.size() != mesh.num_triangles() ||
      vbar.size() != mesh.num_triangles())
    throw std::invalid_argument("upwind_form: P0 field size mismatch");
  double acc = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.interior()) continue;
    const double w = edge.length / edge.barycenter_distance;
    const int k = edge.owner, l = edge.neighbor;
    const EdgeFlux f = edge_flux(w, mu[k] - mu[l], v[k], v[l], mobility, false);
    acc += f.value * (vbar[k] - vbar[l]);
  }
  return acc;
}

UpwindJacobian upwind_jacobian_blocks(const P0Field& mu, const P0Field& v,
                                      const Mesh& mesh, const MobilitySplit& mobility) {
  UpwindJacobian jac;
  std::vector<double> unused(mesh.num_triangles(), 0.0);
  EdgeFluxWorkspace workspace(mesh);
  upwind_accumulate(mu, v, mesh, workspace, mobility, 1.0, unused, &jac.dmu, &jac.dv);
  return jac;
}

void upwind_accumulate(const P0Field& mu, const P0Field& v, const Mesh& mesh,
                       const EdgeFluxWorkspace& workspace,
                       const MobilitySplit& mobility, double coeff,
                       std::vector<double>& residual,
                       std::vector<SparseEntry>* dmu,
                       std::vector<SparseEntry>* dv) {
  const bool with_derivatives = dmu != nullptr || dv != nullptr;
  for (size_t i = 0; i < workspace.edge_ids.size(); ++i) {
    const Edge& edge = mesh.edge(workspace.edge_ids[i]);
    const int k = edge.owner, l = edge.neighbor;
    const EdgeFlux f = edge_flux(workspace.weight[i], mu[k] - mu[l], v[k], v[l],
                                 mobility, with_derivatives);
    // Testing with 1_K gives jump +1 on K's edges, -1 seen from L.
    residual[k] += coeff * f.value;
    residual[l] -= coeff * f.value;
    if (dmu != nullptr && f.djump != 0.0) {
      const double d = coeff * f.djump;
      dmu->push_back({k, k, d});
      dmu->push_back({k, l, -d});
      dmu->push_back({l, k, -d});
      dmu->push_back({l, l, d});
    }
    if (dv != nullptr) {
      if (f.dv_owner != 0.0) {
        dv->push_back({k, k, coeff * f.dv_owner});
        dv->push_back({l, k, -coeff * f.dv_owner});
      }
      if (f.dv_neighbor != 0.0) {
        dv->push_back({k, l, coeff * f.dv_neighbor});
        dv->push_back({l, l, -coeff * f.dv_neighbor});
      }
    }
  }
}

}  // namespace tumordg
