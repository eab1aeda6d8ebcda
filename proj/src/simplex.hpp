#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace gclone {

enum class SolverStatus { kOptimal, kFeasible, kFailed };

const char* to_string(SolverStatus status);

/// minimize c^T x subject to A x = b, x >= 0.
struct StandardFormLp {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct LpSolution {
  SolverStatus status = SolverStatus::kFailed;
  Eigen::VectorXd x;
  /// Multipliers of the equality rows.
  Eigen::VectorXd y;
  double objective = 0.0;
  /// b^T y. A valid lower bound on the optimum when dual_infeasibility is ~0.
  double dual_objective = 0.0;
  double dual_infeasibility = 0.0;
  double primal_residual = 0.0;
  std::size_t iterations = 0;
  std::string message;
};

struct SimplexOptions {
  double pivot_tol = 1e-11;
  double optimality_tol = 1e-12;
  double feasibility_tol = 1e-9;
  std::size_t max_iterations = 50000;
};

/// Dense two-phase tableau simplex with Bland's rule, so degenerate problems
/// terminate and ties resolve the same way on every run.
LpSolution solve_lp(const StandardFormLp& lp, const SimplexOptions& options = {});

}  // namespace gclone
