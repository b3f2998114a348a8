#include "tumordg/newton.hpp"

#include <string>

#ifdef TUMORDG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

namespace tumordg {

namespace {

#ifdef TUMORDG_HAVE_UMFPACK
using DirectSolver = Eigen::UmfPackLU<Eigen::SparseMatrix<double>>;
#else
using DirectSolver = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;
#endif

}  // namespace

NewtonResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::function<Eigen::SparseMatrix<double>(const Eigen::VectorXd&)>& jacobian,
    Eigen::VectorXd x0, const NewtonSettings& settings) {
  settings.validate();

  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd r = residual(x);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  const double tol = std::max(settings.abs_tol, settings.rel_tol * rnorm);

  int iters = 0;
  DirectSolver solver;
  while (rnorm > tol) {
    if (iters >= settings.max_iters)
      throw NewtonDiverged("Newton did not reach tolerance in " +
                           std::to_string(settings.max_iters) + " iterations (residual " +
                           std::to_string(rnorm) + ")");
    const Eigen::SparseMatrix<double> jac = jacobian(x);
    solver.compute(jac);
    if (solver.info() != Eigen::Success)
      throw NewtonDiverged("sparse factorization failed");
    const Eigen::VectorXd neg_r = -r;
    const Eigen::VectorXd dx = solver.solve(neg_r);
    if (solver.info() != Eigen::Success) throw NewtonDiverged("sparse solve failed");

    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= settings.min_damping) {
      const Eigen::VectorXd x_trial = x + lambda * dx;
      if (!x_trial.allFinite()) {
        lambda *= settings.damping_factor;
        continue;
      }
      const Eigen::VectorXd r_trial = residual(x_trial);
      const double rn_trial = r_trial.lpNorm<Eigen::Infinity>();
      if (rn_trial < rnorm || rn_trial <= tol) {
        x = x_trial;
        r = r_trial;
        rnorm = rn_trial;
        accepted = true;
        break;
      }
      lambda *= settings.damping_factor;
    }
    if (!accepted)
      throw NewtonDiverged("backtracking stalled at residual " + std::to_string(rnorm));
    ++iters;
  }
  return {std::move(x), iters, rnorm};
}

}  // namespace tumordg
