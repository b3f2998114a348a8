#pragma once

#include <Eigen/Sparse>
#include <utility>

#include "tumordg/diagnostics.hpp"
#include "tumordg/fields.hpp"
#include "tumordg/mesh.hpp"
#include "tumordg/model.hpp"
#include "tumordg/newton.hpp"

namespace tumordg {

/// One time level of the P1-continuous baseline. No bound invariant: the
/// point of this scheme is that the bounds may fail under cross-diffusion.
struct FeState {
  P1Field u;
  P1Field n;
  P1Field mu_u;
  double time = 0.0;
  long step = 0;
};

/// Plain Galerkin P1 discretization of the convex-splitting time-discrete
/// scheme, used as the comparison baseline. Consistent mass matrices;
/// nonlinear coefficients integrated with a degree-4 rule.
///
/// Unknown ordering: [u | n | mu_u], one value per vertex each.
class FeScheme {
public:
  FeScheme(const Mesh& mesh, const ModelParams& params);

  const Mesh& mesh() const { return mesh_; }
  const ModelParams& params() const { return params_; }

  int num_vertices() const { return nv_; }
  int dof_count() const { return 3 * nv_; }

  Eigen::VectorXd pack(const P1Field& u, const P1Field& n, const P1Field& mu_u) const;
  void unpack(const Eigen::VectorXd& x, P1Field& u, P1Field& n, P1Field& mu_u) const;

  FeState make_state(P1Field u0, P1Field n0) const;

  Eigen::VectorXd residual(const FeState& state_old, const Eigen::VectorXd& guess,
                           double dt) const;
  Eigen::SparseMatrix<double> jacobian(const FeState& state_old,
                                       const Eigen::VectorXd& guess, double dt) const;

  std::pair<FeState, StepDiagnostics> step(const FeState& state_old, double dt,
                                           const NewtonSettings& newton) const;

private:
  Eigen::VectorXd explicit_split_term(const P1Field& u_old) const;

  const Mesh& mesh_;
  ModelParams params_;
  MobilitySplit mobility_;
  int nv_ = 0;
  Eigen::SparseMatrix<double> stiffness_;
  Eigen::SparseMatrix<double> mass_;
};

}  // namespace tumordg
