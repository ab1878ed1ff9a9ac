#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ergocert/errors.hpp"

namespace ergocert::sdp {

/// Primal-dual path-following interior point solver with Nesterov-Todd
/// scaling for the standard-form problem
///   min sum_b <C_b, X_b> + c_lp . x
///   s.t. sum_b <A_{i,b}, X_b> + a_{i,lp} . x = b_i,   X_b psd,  x >= 0,
/// over dense real symmetric blocks plus one nonnegative vector block.

struct SolverOptions {
  double tol_gap = 1e-7;    // absolute complementarity gap, embedded scale
  double tol_feas = 1e-8;   // normalized primal/dual residuals
  double tol_psd = 1e-9;
  double tol_infeas = 1e-6; // Farkas certificate residual threshold
  int max_iterations = 200;
  double init_scale = 1.0;  // scale of the identity starting point
  bool trace = false;       // per-iteration progress on stderr
};

enum class SolveStatus { Optimal, Infeasible, MaxIterations };

struct SparseEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// One linear functional; PSD entries list the full symmetric pattern
/// (both (r,c) and (c,r) for off-diagonal elements).
struct ConstraintRow {
  std::vector<std::vector<SparseEntry>> psd;
  std::vector<std::pair<int, double>> lp;
  double rhs = 0.0;
};

struct RealConicProblem {
  std::vector<int> psd_dims;
  int lp_dim = 0;
  std::vector<Eigen::MatrixXd> C_psd;
  Eigen::VectorXd c_lp;
  std::vector<ConstraintRow> rows;

  void init_blocks(const std::vector<int>& dims, int lp);
  ConstraintRow& add_row(double rhs);
  /// Adds `coeff * M` (dense symmetric) to the PSD part of a row.
  static void add_psd_entries(ConstraintRow& row, int block,
                              const Eigen::MatrixXd& M, double coeff = 1.0);
};

struct RealConicSolution {
  std::vector<Eigen::MatrixXd> X_psd;
  Eigen::VectorXd x_lp;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> S_psd;
  Eigen::VectorXd s_lp;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
};

RealConicSolution solve(const RealConicProblem& problem,
                        const SolverOptions& options = {});

}  // namespace ergocert::sdp
