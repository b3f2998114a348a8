#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <stdexcept>

namespace tumordg {

struct NewtonSettings {
  double abs_tol = 1e-11;  // on the max norm of the residual
  double rel_tol = 0.0;    // relative to the initial residual, 0 disables
  int max_iters = 30;
  double damping_factor = 0.5;        // backtracking step shrink factor
  double min_damping = 1.0 / 1024.0;  // smallest accepted step fraction (2^-10)

  void validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("NewtonSettings: abs_tol must be > 0");
    if (rel_tol < 0.0) throw std::invalid_argument("NewtonSettings: rel_tol must be >= 0");
    if (max_iters < 1) throw std::invalid_argument("NewtonSettings: max_iters must be >= 1");
    if (!(damping_factor > 0.0) || damping_factor >= 1.0)
      throw std::invalid_argument("NewtonSettings: damping_factor must be in (0, 1)");
    if (!(min_damping > 0.0) || min_damping > 1.0)
      throw std::invalid_argument("NewtonSettings: min_damping must be in (0, 1]");
  }
};

class NewtonDiverged : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class BoundsViolated : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class EnergyIncreased : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct NewtonResult {
  Eigen::VectorXd x;
  int iters = 0;
  double residual_norm = 0.0;
};

/// Damped Newton iteration with sparse LU linear solves and residual-norm
/// backtracking. Throws NewtonDiverged when the tolerance is unreachable.
NewtonResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::function<Eigen::SparseMatrix<double>(const Eigen::VectorXd&)>& jacobian,
    Eigen::VectorXd x0, const NewtonSettings& settings);

}  // namespace tumordg
