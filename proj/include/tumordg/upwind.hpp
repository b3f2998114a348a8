#pragma once

#include <vector>

#include "tumordg/fields.hpp"
#include "tumordg/mesh.hpp"
#include "tumordg/model.hpp"

namespace tumordg {

/// Per-interior-edge data for the upwind form: edge index and the factor
/// |e| / D_e multiplying each edge contribution.
struct EdgeFluxWorkspace {
  std::vector<int> edge_ids;
  std::vector<double> weight;  // |e| / D_e > 0

  explicit EdgeFluxWorkspace(const Mesh& mesh);
};

/// Two-point reconstruction of the normal gradient of a P0 field across an
/// interior edge: (mu_L - mu_K) / D_e. Throws on boundary edges.
double normal_gradient(const P0Field& mu, const Mesh& mesh, int edge_id);

/// Edge-based upwind form a_upw(mu, M(v); vbar): sum over interior edges of
///   (|e|/D_e) * ( [mu]+ * (Mup(v_K) + Mdown(v_L))+
///               - [mu]- * (Mup(v_L) + Mdown(v_K))+ ) * [vbar],
/// with [x] = x_K - x_L the jump from owner to neighbor.
double upwind_form(const P0Field& mu, const P0Field& v, const P0Field& vbar,
                   const Mesh& mesh, const MobilitySplit& mobility);

struct SparseEntry {
  int row = 0;  // element index of the P0 test function
  int col = 0;  // element index of the differentiated dof
  double value = 0.0;
};

struct UpwindJacobian {
  std::vector<SparseEntry> dmu;  // derivatives w.r.t. the P0 mu values
  std::vector<SparseEntry> dv;   // derivatives w.r.t. the P0 v values
};

/// Directional derivatives of a_upw(mu, M(v); 1_T) w.r.t. the element
/// values of mu and v. Positive/negative parts use the semismooth
/// convention (derivative 0 at the kink).
UpwindJacobian upwind_jacobian_blocks(const P0Field& mu, const P0Field& v,
                                      const Mesh& mesh, const MobilitySplit& mobility);

/// Accumulates coeff * a_upw(mu, M(v); 1_T) into residual[T] for every
/// element T, and optionally the correspondingly scaled Jacobian entries.
/// Edges are visited in index order; accumulation is sequential and
/// deterministic.
void upwind_accumulate(const P0Field& mu, const P0Field& v, const Mesh& mesh,
                       const EdgeFluxWorkspace& workspace,
                       const MobilitySplit& mobility, double coeff,
                       std::vector<double>& residual,
                       std::vector<SparseEntry>* dmu = nullptr,
                       std::vector<SparseEntry>* dv = nullptr);

}  // namespace tumordg
