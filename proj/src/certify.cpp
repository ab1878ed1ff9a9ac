#include "ergocert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ergocert {

namespace {

SolveDiagnostics diag_of(const SdpSolution& s) {
  return {s.status, s.duality_gap, s.primal_residual, s.iterations};
}

[[noreturn]] void raise_infeasible(const FeasibleSetSpec& spec,
                                   const SolverOptions& options,
                                   const char* where) {
  const double advice = feasibility_advice_epsilon(spec, options);
  throw InfeasibleSetError(
      std::string(where) +
          ": no state is compatible with the constraints; widening every "
          "epsilon by " +
          std::to_string(advice) + " restores feasibility",
      advice);
}

bool spectrum_degenerate(const Eigen::VectorXd& values) {
  for (Eigen::Index i = 0; i + 1 < values.size(); ++i) {
    if (std::abs(values(i + 1) - values(i)) < 1e-8) return true;
  }
  return false;
}

}  // namespace

void FeasibleSetSpec::add_observable(const Eigen::MatrixXcd& observable,
                                     double target, double epsilon) {
  require_hermitian(observable, "feasible-set observable");
  if (dim == 0) dim = static_cast<int>(observable.rows());
  if (observable.rows() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "observable vs feasible set");
  }
  if (epsilon < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "negative epsilon");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(observable,
                                                      Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo >= -1.0 - 1e-12 && hi <= 1.0 + 1e-12) {
    constraints.push_back({observable, target, epsilon});
    return;
  }
  // Affine rescaling onto spectrum [-1, 1]; targets move the same way, so
  // the constraint set is unchanged and the Hoeffding range applies.
  const double scale = 2.0 / (hi - lo);
  const double shift = 0.5 * (hi + lo);
  Eigen::MatrixXcd rescaled =
      scale * (observable -
               shift * Eigen::MatrixXcd::Identity(dim, dim));
  constraints.push_back({std::move(rescaled), scale * (target - shift),
                         scale * epsilon});
}

void FeasibleSetSpec::add_pauli(const PauliString& pauli, double target,
                                double epsilon) {
  if (dim == 0) dim = static_cast<int>(Eigen::Index{1} << pauli.n());
  if ((Eigen::Index{1} << pauli.n()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "Pauli string vs feasible set");
  }
  constraints.push_back({pauli_matrix(pauli), target, epsilon});
}

SdpProblem FeasibleSetSpec::to_problem() const {
  if (dim < 1) {
    throw Error(ErrorKind::InvalidArgument, "feasible set has no dimension");
  }
  SdpProblem problem;
  problem.dim = dim;
  problem.unit_trace = true;
  for (const auto& c : constraints) {
    if (c.epsilon == 0.0) {
      problem.equalities.push_back({c.observable, c.target});
    } else {
      problem.intervals.push_back(
          {c.observable, c.target - c.epsilon, c.target + c.epsilon});
    }
  }
  return problem;
}

double feasibility_advice_epsilon(const FeasibleSetSpec& spec,
                                  const SolverOptions& options) {
  const int d = spec.dim;
  sdp::RealConicProblem real_problem;
  // LP variables: the uniform inflation t, then one slack per one-sided row.
  real_problem.init_blocks({2 * d},
                           1 + 2 * static_cast<int>(spec.constraints.size()));
  real_problem.c_lp(0) = 1.0;

  auto& trace_row = real_problem.add_row(2.0);
  sdp_detail::add_complex_observable(trace_row, 0,
                                     Eigen::MatrixXcd::Identity(d, d));
  int lp = 1;
  for (const auto& c : spec.constraints) {
    // tr(X O) <= target + eps + t  and  tr(X O) >= target - eps - t.
    auto& hi_row = real_problem.add_row(2.0 * (c.target + c.epsilon));
    sdp_detail::add_complex_observable(hi_row, 0, c.observable);
    hi_row.lp.emplace_back(0, -2.0);
    hi_row.lp.emplace_back(lp++, 1.0);
    auto& lo_row = real_problem.add_row(2.0 * (c.target - c.epsilon));
    sdp_detail::add_complex_observable(lo_row, 0, c.observable);
    lo_row.lp.emplace_back(0, 2.0);
    lo_row.lp.emplace_back(lp++, -1.0);
  }
  sdp::RealConicSolution sol = sdp::solve(real_problem, options);
  return std::max(sol.x_lp(0), 0.0);
}

DensityMatrix project_to_density(const Eigen::MatrixXcd& M) {
  EigResult eig = eigendecompose_hermitian(0.5 * (M + M.adjoint()));
  Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
  const double total = clipped.sum();
  const Eigen::Index d = M.rows();
  if (total <= 0.0) {
    return {Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)};
  }
  clipped /= total;
  return {eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint()};
}

DensityMatrix step_one_select_state(const FeasibleSetSpec& spec,
                                    const StepOneObjective& objective,
                                    const SolverOptions& options,
                                    SolveDiagnostics* diagnostics) {
  SdpProblem problem = spec.to_problem();
  SdpSolution sol;
  if (objective.kind == StepOneObjective::Kind::MinPurity) {
    sol = solve_min_purity(problem, options);
  } else {
    problem.objective = objective.linear;
    sol = solve_linear(problem, options);
  }
  if (diagnostics != nullptr) *diagnostics = diag_of(sol);
  if (sol.status == SolveStatus::Infeasible) {
    raise_infeasible(spec, options, "step (i)");
  }
  // A non-converged step (i) still yields a usable state: any unitary gives
  // a valid bound, so project and continue.
  return project_to_density(sol.X);
}

Eigen::MatrixXcd build_tilde_unitary(const DensityMatrix& rho_tilde,
                                     const HamiltonianData& H) {
  if (rho_tilde.dim() != H.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "state vs Hamiltonian");
  }
  EigResult eig = eigendecompose_hermitian(rho_tilde.matrix);
  const Eigen::MatrixXcd descending = eig.vectors.rowwise().reverse();
  return H.eigenvectors * descending.adjoint();
}

double step_two_bound(const FeasibleSetSpec& spec, const HamiltonianData& H,
                      const Eigen::MatrixXcd& U, const SolverOptions& options,
                      SolveDiagnostics* diagnostics) {
  if (static_cast<int>(H.dim()) != spec.dim || U.rows() != H.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "step (ii) inputs");
  }
  if (unitarity_defect(U) > 1e-8) {
    throw Error(ErrorKind::NotUnitary, "step (ii) unitary");
  }
  SdpProblem problem = spec.to_problem();
  Eigen::MatrixXcd C = H.matrix - U.adjoint() * H.matrix * U;
  problem.objective = 0.5 * (C + C.adjoint());
  SdpSolution sol = solve_linear(problem, options);
  if (diagnostics != nullptr) *diagnostics = diag_of(sol);
  if (sol.status == SolveStatus::Infeasible) {
    raise_infeasible(spec, options, "step (ii)");
  }
  if (sol.status == SolveStatus::MaxIterations) {
    throw Error(ErrorKind::ConvergenceFailure,
                "step (ii) SDP did not converge; the certificate is void");
  }
  return sol.objective_value;
}

CertificationResult certify(const FeasibleSetSpec& spec,
                            const HamiltonianData& H,
                            const CertifyOptions& options) {
  CertificationResult result;
  result.step1_state =
      step_one_select_state(spec, options.objective, options.solver,
                            &result.step1);
  {
    EigResult eig = eigendecompose_hermitian(result.step1_state.matrix);
    result.step1_state_degenerate = spectrum_degenerate(eig.values);
  }
  result.unitary = build_tilde_unitary(result.step1_state, H);
  result.raw_min =
      step_two_bound(spec, H, result.unitary, options.solver, &result.step2);
  result.bound = std::max(result.raw_min, 0.0);
  return result;
}

CertificationResult certify_monotone(MonotoneSession& session,
                                     const FeasibleSetSpec& spec,
                                     const HamiltonianData& H,
                                     const CertifyOptions& options) {
  // The new constraint list must extend the session's list so the feasible
  // sets are nested.
  if (spec.constraints.size() < session.seen.size()) {
    throw Error(ErrorKind::NonNestedConstraints,
                "constraint list shrank between calls");
  }
  for (std::size_t i = 0; i < session.seen.size(); ++i) {
    const auto& a = session.seen[i];
    const auto& b = spec.constraints[i];
    if (a.target != b.target || a.epsilon != b.epsilon ||
        a.observable.rows() != b.observable.rows() ||
        (a.observable - b.observable).cwiseAbs().maxCoeff() != 0.0) {
      throw Error(ErrorKind::NonNestedConstraints,
                  "constraint " + std::to_string(i) + " changed");
    }
  }

  CertificationResult result;
  if (!session.has_unitary) {
    result = certify(spec, H, options);
  } else {
    // Bound with the retained unitary; cannot decrease on a nested set.
    const double kept_raw =
        step_two_bound(spec, H, session.unitary, options.solver, &result.step2);
    // Fresh step (i); adopt its unitary only if strictly tighter.
    CertificationResult fresh = certify(spec, H, options);
    if (fresh.raw_min > kept_raw) {
      result = fresh;
    } else {
      result.raw_min = kept_raw;
      result.bound = std::max(kept_raw, 0.0);
      result.unitary = session.unitary;
      result.step1_state = fresh.step1_state;
      result.step1 = fresh.step1;
      result.step1_state_degenerate = fresh.step1_state_degenerate;
      result.unitary_updated = false;
    }
  }

  session.has_unitary = true;
  session.unitary = result.unitary;
  session.current_raw = result.raw_min;
  session.current_bound = result.bound;
  session.seen = spec.constraints;
  session.history.push_back({static_cast<int>(spec.constraints.size()),
                             result.bound, result.unitary_updated});
  return result;
}

double qubit_minimax_oracle(const FeasibleSetSpec& spec,
                            const HamiltonianData& H, int resolution) {
  if (spec.dim != 2 || H.dim() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "oracle requires a qubit");
  }
  if (resolution < 2) {
    throw Error(ErrorKind::InvalidArgument, "grid resolution must be >= 2");
  }
  const Eigen::MatrixXcd sx = pauli_matrix(parse_pauli("X"));
  const Eigen::MatrixXcd sy = pauli_matrix(parse_pauli("Y"));
  const Eigen::MatrixXcd sz = pauli_matrix(parse_pauli("Z"));

  // tr(X O) = c0 + a . r on Bloch vectors r.
  auto functional = [&](const Eigen::MatrixXcd& O) {
    Eigen::Vector3d a;
    a(0) = 0.5 * (O * sx).trace().real();
    a(1) = 0.5 * (O * sy).trace().real();
    a(2) = 0.5 * (O * sz).trace().real();
    return std::make_pair(0.5 * O.trace().real(), a);
  };

  std::vector<Eigen::Vector3d> eq_rows;
  std::vector<double> eq_vals;
  std::vector<std::pair<Eigen::Vector3d, std::pair<double, double>>> box;
  for (const auto& c : spec.constraints) {
    auto [c0, a] = functional(c.observable);
    if (c.epsilon == 0.0) {
      eq_rows.push_back(a);
      eq_vals.push_back(c.target - c0);
    } else {
      box.push_back({a, {c.target - c0 - c.epsilon, c.target - c0 + c.epsilon}});
    }
  }

  Eigen::Vector3d r0 = Eigen::Vector3d::Zero();
  Eigen::Matrix3d basis = Eigen::Matrix3d::Identity();
  int free_dims = 3;
  if (!eq_rows.empty()) {
    Eigen::MatrixXd A(eq_rows.size(), 3);
    Eigen::VectorXd v(eq_vals.size());
    for (std::size_t i = 0; i < eq_rows.size(); ++i) {
      A.row(static_cast<Eigen::Index>(i)) = eq_rows[i].transpose();
      v(static_cast<Eigen::Index>(i)) = eq_vals[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-10);
    r0 = svd.solve(v);
    if ((A * r0 - v).cwiseAbs().maxCoeff() > 1e-9) {
      throw Error(ErrorKind::EmptyGrid, "equality constraints inconsistent");
    }
    const int rank = static_cast<int>(svd.rank());
    free_dims = 3 - rank;
    basis.setZero();
    for (int k = 0; k < free_dims; ++k) {
      basis.col(k) = svd.matrixV().col(rank + k);
    }
  }

  const double e0 = H.energies(0);
  const double e1 = H.energies(1);
  auto ergotropy_at = [&](const Eigen::Vector3d& r) {
    const double mean =
        0.5 * (H.matrix.trace().real() +
               r(0) * (H.matrix * sx).trace().real() +
               r(1) * (H.matrix * sy).trace().real() +
               r(2) * (H.matrix * sz).trace().real());
    const double radius = r.norm();
    const double passive = 0.5 * ((1.0 + radius) * e0 + (1.0 - radius) * e1);
    return mean - passive;
  };

  auto feasible = [&](const Eigen::Vector3d& r) {
    if (r.squaredNorm() > 1.0 + 1e-12) return false;
    for (const auto& [a, range] : box) {
      const double value = a.dot(r);
      if (value < range.first - 1e-12 || value > range.second + 1e-12) {
        return false;
      }
    }
    return true;
  };

  double best = std::numeric_limits<double>::infinity();
  const long total_points = [&] {
    long t = 1;
    for (int k = 0; k < free_dims; ++k) t *= resolution;
    return t;
  }();
  for (long idx = 0; idx < total_points; ++idx) {
    Eigen::Vector3d r = r0;
    long rem = idx;
    for (int k = 0; k < free_dims; ++k) {
      const long step = rem % resolution;
      rem /= resolution;
      const double t =
          -1.0 + 2.0 * static_cast<double>(step) / (resolution - 1);
      r += t * basis.col(k);
    }
    if (!feasible(r)) continue;
    best = std::min(best, ergotropy_at(r));
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorKind::EmptyGrid, "no feasible grid point");
  }
  return best;
}

}  // namespace ergocert
