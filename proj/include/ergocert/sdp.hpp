#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ergocert/sdp_core.hpp"

namespace ergocert {

using sdp::SolveStatus;
using sdp::SolverOptions;

/// Realification of a Hermitian matrix M = R + iS as [[R, -S], [S, R]];
/// preserves positive semidefiniteness and doubles the trace and every
/// eigenvalue multiplicity.
Eigen::MatrixXd embed_complex(const Eigen::MatrixXcd& M);

/// Inverse of embed_complex; averages the input with its symmetry conjugate
/// J X J^T first, so any solver output regains the exact complex structure.
Eigen::MatrixXcd extract_complex(const Eigen::MatrixXd& X);

struct EqualityConstraint {
  Eigen::MatrixXcd observable;
  double value = 0.0;
};

struct IntervalConstraint {
  Eigen::MatrixXcd observable;
  double lo = 0.0;
  double hi = 0.0;
};

/// Linear SDP over complex Hermitian X: minimize Re tr(objective X) subject
/// to equality and interval constraints, optional unit trace, and X psd.
struct SdpProblem {
  int dim = 0;
  Eigen::MatrixXcd objective;
  std::vector<EqualityConstraint> equalities;
  std::vector<IntervalConstraint> intervals;
  bool unit_trace = true;

  void validate() const;
};

struct SdpSolution {
  Eigen::MatrixXcd X;
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double duality_gap = 0.0;  // embedded complementarity gap
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
};

SdpSolution solve_linear(const SdpProblem& problem,
                         const SolverOptions& options = {});

/// Minimizes tr(X^2) over the constraint set via the Schur-complement
/// program min tr(Y) s.t. [[Y, X], [X, 1]] psd; the objective field of
/// `constraints` is ignored. The returned objective_value is tr(X^2).
SdpSolution solve_min_purity(const SdpProblem& constraints,
                             const SolverOptions& options = {});

namespace sdp_detail {
/// Appends the embedded functional Re tr(observable . X_block) (complex
/// scale) to a constraint row; used by certification for bespoke programs.
void add_complex_observable(sdp::ConstraintRow& row, int block,
                            const Eigen::MatrixXcd& observable,
                            double coeff = 1.0);
}  // namespace sdp_detail

}  // namespace ergocert
