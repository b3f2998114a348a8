#pragma once

#include <Eigen/Sparse>
#include <utility>

#include "tumordg/diagnostics.hpp"
#include "tumordg/fields.hpp"
#include "tumordg/mesh.hpp"
#include "tumordg/model.hpp"
#include "tumordg/newton.hpp"
#include "tumordg/upwind.hpp"

namespace tumordg {

/// One time level of the coupled DG unknowns plus cached projections.
struct SchemeState {
  P0Field u;
  P0Field n;
  P1Field mu_u;
  P1Field u_reg;     // regularized tumor field (P1)
  P0Field u_reg_p0;  // element means of u_reg
  P0Field mu_n;      // nutrient potential of the step that produced this state
  double time = 0.0;
  long step = 0;
};

/// Fully discrete upwind-DG step for the coupled tumor/nutrient system:
/// P0 unknowns u, n and a P1 chemical potential mu_u, solved monolithically
/// by a damped Newton method with a sparse direct factorization.
///
/// Unknown ordering: [u (per triangle) | n (per triangle) | mu_u (per vertex)].
class DgScheme {
public:
  DgScheme(const Mesh& mesh, const ModelParams& params);

  const Mesh& mesh() const { return mesh_; }
  const ModelParams& params() const { return params_; }
  const MobilitySplit& mobility() const { return mobility_; }

  int num_triangles() const { return nt_; }
  int num_vertices() const { return nv_; }
  int dof_count() const { return 2 * nt_ + nv_; }

  Eigen::VectorXd pack(const P0Field& u, const P0Field& n, const P1Field& mu_u) const;
  void unpack(const Eigen::VectorXd& x, P0Field& u, P0Field& n, P1Field& mu_u) const;

  /// Builds a consistent state from initial data in [0, 1] (values within
  /// 1e-12 of the bounds are clamped).
  SchemeState make_state(P0Field u0, P0Field n0) const;

  /// Warm-start potential: solves the mass-lumped mu_u equation at (u0, n0).
  P1Field initial_mu_u(const P0Field& u0, const P0Field& n0) const;

  Eigen::VectorXd residual(const SchemeState& state_old, const Eigen::VectorXd& guess,
                           double dt) const;
  Eigen::SparseMatrix<double> jacobian(const SchemeState& state_old,
                                       const Eigen::VectorXd& guess, double dt) const;

  std::pair<SchemeState, StepDiagnostics> step(const SchemeState& state_old, double dt,
                                               const NewtonSettings& newton) const;

private:
  struct StepContext {
    const SchemeState* state_old = nullptr;
    double dt = 0.0;
    Eigen::VectorXd g_explicit;       // explicit convex-splitting term per vertex
    std::vector<double> mu_n_offset;  // -chi0 * u_reg_p0 of the old state
  };

  StepContext make_context(const SchemeState& state_old, double dt) const;
  Eigen::VectorXd residual_impl(const StepContext& ctx, const Eigen::VectorXd& x) const;
  Eigen::SparseMatrix<double> jacobian_impl(const StepContext& ctx,
                                            const Eigen::VectorXd& x) const;
  Eigen::VectorXd explicit_split_term(const P1Field& w_old) const;

  const Mesh& mesh_;
  ModelParams params_;
  MobilitySplit mobility_;
  EdgeFluxWorkspace edges_;
  int nt_ = 0;
  int nv_ = 0;
  Eigen::SparseMatrix<double> stiffness_;   // P1 gradient pairing
  Eigen::SparseMatrix<double> mass_;        // consistent P1 mass
  Eigen::SparseMatrix<double> reg_;         // P0 -> P1 regularization (Nv x Nt)
  Eigen::SparseMatrix<double> p0_pairing_;  // <P0, hat_j> entries |K|/3 (Nv x Nt)
  Eigen::VectorXd lumped_;                  // lumped P1 masses S_j / 3
  Eigen::SparseMatrix<double> mu_row_static_;  // constant mu-row Jacobian block
};

}  // namespace tumordg
