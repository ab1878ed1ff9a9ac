#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ergocert/ergotropy.hpp"
#include "ergocert/models.hpp"
#include "ergocert/pauli.hpp"
#include "ergocert/sdp.hpp"

namespace ergocert {

enum class Provenance { Exact, Estimated };

struct SpecConstraint {
  Eigen::MatrixXcd observable;  // Hermitian, spectrum within [-1, 1]
  double target = 0.0;
  double epsilon = 0.0;  // 0 = exact expectation, > 0 = confidence interval
};

/// The measurement information defining the feasible set: unit-trace psd
/// matrices X with |tr(X O_i) - o_i| <= eps_i for every constraint.
struct FeasibleSetSpec {
  int dim = 0;
  std::vector<SpecConstraint> constraints;
  Provenance provenance = Provenance::Exact;

  /// Adds a constraint, rescaling observable and target affinely onto
  /// spectrum [-1, 1] first when needed (Hoeffding range convention).
  void add_observable(const Eigen::MatrixXcd& observable, double target,
                      double epsilon = 0.0);

  void add_pauli(const PauliString& pauli, double target, double epsilon = 0.0);

  SdpProblem to_problem() const;
};

struct StepOneObjective {
  enum class Kind { MinPurity, Linear };
  Kind kind = Kind::MinPurity;
  Eigen::MatrixXcd linear;

  static StepOneObjective min_purity() { return {}; }
  static StepOneObjective linear_functional(const Eigen::MatrixXcd& L) {
    return {Kind::Linear, L};
  }
};

struct CertifyOptions {
  StepOneObjective objective;
  SolverOptions solver;
};

struct SolveDiagnostics {
  SolveStatus status = SolveStatus::MaxIterations;
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
};

struct CertificationResult {
  double raw_min = 0.0;              // step-(ii) minimum, may be negative
  double bound = 0.0;                // max(raw_min, 0)
  Eigen::MatrixXcd unitary;          // the certifying unitary
  DensityMatrix step1_state;
  SolveDiagnostics step1;
  SolveDiagnostics step2;
  bool step1_state_degenerate = false;  // spectral gap below 1e-8 seen
  bool unitary_updated = true;          // false when a session kept its unitary
};

/// Smallest uniform widening t >= 0 of every constraint interval that makes
/// the feasible set nonempty; 0 when it already is.
double feasibility_advice_epsilon(const FeasibleSetSpec& spec,
                                  const SolverOptions& options = {});

DensityMatrix step_one_select_state(const FeasibleSetSpec& spec,
                                    const StepOneObjective& objective,
                                    const SolverOptions& options = {},
                                    SolveDiagnostics* diagnostics = nullptr);

/// U = sum_j |E_j><r_j| built from the descending spectrum of rho_tilde.
Eigen::MatrixXcd build_tilde_unitary(const DensityMatrix& rho_tilde,
                                     const HamiltonianData& H);

/// min over X in the feasible set of tr(H X) - tr(H U X U^dag).
double step_two_bound(const FeasibleSetSpec& spec, const HamiltonianData& H,
                      const Eigen::MatrixXcd& U,
                      const SolverOptions& options = {},
                      SolveDiagnostics* diagnostics = nullptr);

CertificationResult certify(const FeasibleSetSpec& spec,
                            const HamiltonianData& H,
                            const CertifyOptions& options = {});

struct MonotoneHistoryEntry {
  int constraint_count = 0;
  double bound = 0.0;
  bool unitary_updated = false;
};

/// State threaded through nested certifications; the retained unitary is
/// replaced only when a fresh step-(i) unitary strictly tightens the bound.
struct MonotoneSession {
  bool has_unitary = false;
  Eigen::MatrixXcd unitary;
  double current_raw = 0.0;
  double current_bound = 0.0;
  std::vector<SpecConstraint> seen;
  std::vector<MonotoneHistoryEntry> history;
};

CertificationResult certify_monotone(MonotoneSession& session,
                                     const FeasibleSetSpec& spec,
                                     const HamiltonianData& H,
                                     const CertifyOptions& options = {});

/// Brute-force reference for the minimax bound on a single qubit: grids the
/// affine slice of the Bloch ball cut out by the exact constraints, rejects
/// points violating interval constraints, and minimizes exact ergotropy.
double qubit_minimax_oracle(const FeasibleSetSpec& spec,
                            const HamiltonianData& H, int resolution);

/// Clips negative eigenvalues at zero and renormalizes the trace.
DensityMatrix project_to_density(const Eigen::MatrixXcd& M);

}  // namespace ergocert
