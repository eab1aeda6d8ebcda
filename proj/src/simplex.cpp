#include "simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "error.hpp"

namespace gclone {

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kOptimal: return "optimal";
    case SolverStatus::kFeasible: return "feasible";
    case SolverStatus::kFailed: return "failed";
  }
  return "failed";
}

namespace {

// Tableau layout: rows 0..m-1 hold B^-1 [A | I | b]; columns n..n+m-1 are the
// artificials, which also carry B^-1 for the dual recovery. Row m is the
// reduced-cost row of the current phase.
class Tableau {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tableau(const StandardFormLp& lp, const SimplexOptions& opt)
      : m_(lp.a.rows()), n_(lp.a.cols()), opt_(opt), t_(m_ + 1, n_ + m_ + 1), basis_(m_), basic_(n_ + m_, false) {
    t_.setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = lp.b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * lp.a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, n_ + m_) = sign * lp.b(i);
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      basic_[static_cast<std::size_t>(n_ + i)] = true;
    }
  }

  // Runs simplex for the given cost over columns [0, allowed); returns false
  // when unbounded or out of iterations.
  bool optimize(const Eigen::VectorXd& cost, Eigen::Index allowed, std::size_t& iterations) {
    set_cost(cost);
    while (true) {
      if (iterations >= opt_.max_iterations) {
        message_ = fmt::format("iteration limit {} reached", opt_.max_iterations);
        return false;
      }
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (!basic_[static_cast<std::size_t>(j)] && t_(m_, j) < -opt_.optimality_tol) {
          entering = j;  // Bland: lowest index
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double piv = t_(i, entering);
        if (piv <= opt_.pivot_tol) continue;
        const double ratio = t_(i, n_ + m_) / piv;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis_[static_cast<std::size_t>(i)] <
                                                     basis_[static_cast<std::size_t>(leaving)])) {
          best = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) {
        message_ = fmt::format("unbounded direction on column {}", entering);
        return false;
      }
      pivot(leaving, entering);
      ++iterations;
    }
  }

  // Pivots zero-valued artificials out of the basis where a structural column allows.
  void expel_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (!basic_[static_cast<std::size_t>(j)] && std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // y = c_B B^-1, read off the artificial columns of the reduced-cost row.
  Eigen::RowVectorXd duals(const Eigen::VectorXd& cost) const {
    Eigen::RowVectorXd y(m_);
    for (Eigen::Index i = 0; i < m_; ++i) y(i) = cost(n_ + i) - t_(m_, n_ + i);
    return y;
  }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_ + m_);
    for (Eigen::Index i = 0; i < m_; ++i) x(basis_[static_cast<std::size_t>(i)]) = t_(i, n_ + m_);
    return x;
  }

  const std::string& message() const { return message_; }

 private:
  void set_cost(const Eigen::VectorXd& cost) {
    auto z = t_.row(m_);
    z.head(n_ + m_) = cost.transpose();
    z(n_ + m_) = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) z -= cb * t_.row(i);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(row)])] = false;
    basic_[static_cast<std::size_t>(col)] = true;
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  SimplexOptions opt_;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> basic_;
  std::string message_;
};

}  // namespace

LpSolution solve_lp(const StandardFormLp& lp, const SimplexOptions& options) {
  const Eigen::Index m = lp.a.rows();
  const Eigen::Index n = lp.a.cols();
  if (lp.b.size() != m || lp.c.size() != n) {
    throw ParameterError(fmt::format("LP shape mismatch: A is {}x{}, b has {}, c has {}", m, n, lp.b.size(),
                                     lp.c.size()));
  }
  LpSolution sol;
  Tableau tab(lp, options);
  Eigen::VectorXd sign(m);
  for (Eigen::Index i = 0; i < m; ++i) sign(i) = lp.b(i) < 0.0 ? -1.0 : 1.0;

  // Phase 1: drive the artificials to zero.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  if (!tab.optimize(phase1, n + m, sol.iterations)) {
    sol.message = "phase 1: " + tab.message();
    return sol;
  }
  const double infeasibility = tab.primal().tail(m).sum();
  if (infeasibility > options.feasibility_tol) {
    sol.message = fmt::format("infeasible: phase 1 residual {:.3e}", infeasibility);
    return sol;
  }
  tab.expel_artificials();

  // Phase 2 over structural columns only; artificials may leave but never enter.
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = lp.c;
  const bool finished = tab.optimize(phase2, n, sol.iterations);

  const Eigen::VectorXd full = tab.primal();
  sol.x = full.head(n).cwiseMax(0.0);
  sol.objective = lp.c.dot(sol.x);
  sol.y = (tab.duals(phase2).transpose().array() * sign.array()).matrix();
  sol.dual_objective = lp.b.dot(sol.y);
  const Eigen::VectorXd reduced = lp.c - lp.a.transpose() * sol.y;
  sol.dual_infeasibility = std::max(0.0, -reduced.minCoeff());
  sol.primal_residual = (lp.a * sol.x - lp.b).cwiseAbs().maxCoeff();
  if (!finished) {
    sol.status = SolverStatus::kFeasible;
    sol.message = "phase 2: " + tab.message();
  } else {
    sol.status = SolverStatus::kOptimal;
    sol.message = "optimal";
  }
  return sol;
}

}  // namespace gclone
