#include "ergocert/sdp.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "ergocert/linalg.hpp"

namespace ergocert {

Eigen::MatrixXd embed_complex(const Eigen::MatrixXcd& M) {
  require_hermitian(M, "embedding input");
  const Eigen::Index d = M.rows();
  Eigen::MatrixXd out(2 * d, 2 * d);
  const Eigen::MatrixXd R = M.real();
  const Eigen::MatrixXd S = M.imag();
  out.topLeftCorner(d, d) = R;
  out.topRightCorner(d, d) = -S;
  out.bottomLeftCorner(d, d) = S;
  out.bottomRightCorner(d, d) = R;
  return out;
}

Eigen::MatrixXcd extract_complex(const Eigen::MatrixXd& X) {
  if (X.rows() != X.cols() || X.rows() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch,
                "embedded matrix must be square with even dimension");
  }
  const Eigen::Index d = X.rows() / 2;
  Eigen::MatrixXd R =
      0.5 * (X.topLeftCorner(d, d) + X.bottomRightCorner(d, d));
  Eigen::MatrixXd S =
      0.5 * (X.bottomLeftCorner(d, d) - X.topRightCorner(d, d));
  R = 0.5 * (R + R.transpose()).eval();
  S = 0.5 * (S - S.transpose()).eval();
  return R.cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) * S.cast<std::complex<double>>();
}

namespace sdp_detail {

void add_complex_observable(sdp::ConstraintRow& row, int block,
                            const Eigen::MatrixXcd& observable, double coeff) {
  // Pairing convention: <embed(O), X_emb> = 2 Re tr(O X).
  sdp::RealConicProblem::add_psd_entries(row, block, embed_complex(observable),
                                         coeff);
}

}  // namespace sdp_detail

void SdpProblem::validate() const {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "SDP dimension < 1");
  auto check_dim = [&](const Eigen::MatrixXcd& M, const char* what) {
    if (M.rows() != dim || M.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, what);
    }
    require_hermitian(M, what);
  };
  if (objective.size() > 0) check_dim(objective, "SDP objective");
  for (const auto& eq : equalities) check_dim(eq.observable, "SDP equality");
  for (const auto& iv : intervals) {
    check_dim(iv.observable, "SDP interval");
    if (iv.lo > iv.hi) {
      throw Error(ErrorKind::InvalidArgument,
                  "interval bounds " + std::to_string(iv.lo) + " > " +
                      std::to_string(iv.hi));
    }
  }
}

namespace {

// An equality tr(X O) = o with o at the spectral edge of O forces a
// unit-trace psd X onto the corresponding eigenspace. Projecting the whole
// problem onto that face restores a strictly feasible interior, which the
// interior-point method needs; without this, exact stabilizer-like
// constraints (<P> = +-1 on pure states) stall the primal residual.
struct FacialReduction {
  Eigen::MatrixXcd isometry;  // original dim x reduced dim
  SdpProblem problem;
  bool infeasible = false;
};

FacialReduction facially_reduce(const SdpProblem& input) {
  constexpr double kSnap = 1e-11;     // distance to the edge that counts as on it
  constexpr double kCluster = 1e-10;  // eigenvalue clustering width
  constexpr double kFeas = 1e-8;

  FacialReduction red;
  red.problem = input;
  red.isometry =
      Eigen::MatrixXcd::Identity(input.dim, input.dim);

  bool changed = true;
  while (changed && red.problem.dim > 1) {
    changed = false;
    auto& equalities = red.problem.equalities;
    for (std::size_t i = 0; i < equalities.size(); ++i) {
      const EigResult eig =
          eigendecompose_hermitian(equalities[i].observable);
      const double lo = eig.values(0);
      const double hi = eig.values(eig.values.size() - 1);
      const double o = equalities[i].value;
      if (o > hi + kFeas || o < lo - kFeas) {
        red.infeasible = true;
        return red;
      }
      if (hi - lo <= kCluster) {
        // Scalar multiple of the identity: either redundant or infeasible.
        if (std::abs(o - 0.5 * (hi + lo)) > kFeas) {
          red.infeasible = true;
          return red;
        }
        equalities.erase(equalities.begin() +
                         static_cast<std::ptrdiff_t>(i));
        --i;
        changed = true;
        continue;
      }
      int edge = 0;
      if (o >= hi - kSnap) edge = +1;
      else if (o <= lo + kSnap) edge = -1;
      if (edge == 0) continue;

      std::vector<Eigen::Index> face_cols;
      for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
        const bool in_face = edge > 0 ? eig.values(j) >= hi - kCluster
                                      : eig.values(j) <= lo + kCluster;
        if (in_face) face_cols.push_back(j);
      }
      Eigen::MatrixXcd face(red.problem.dim,
                            static_cast<Eigen::Index>(face_cols.size()));
      for (std::size_t c = 0; c < face_cols.size(); ++c) {
        face.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(face_cols[c]);
      }

      SdpProblem next;
      next.dim = static_cast<int>(face.cols());
      next.unit_trace = red.problem.unit_trace;
      auto project = [&](const Eigen::MatrixXcd& O) {
        Eigen::MatrixXcd P = face.adjoint() * O * face;
        return Eigen::MatrixXcd(0.5 * (P + P.adjoint()));
      };
      for (std::size_t j = 0; j < equalities.size(); ++j) {
        if (j == i) continue;  // satisfied identically on the face
        next.equalities.push_back(
            {project(equalities[j].observable), equalities[j].value});
      }
      for (const auto& iv : red.problem.intervals) {
        next.intervals.push_back({project(iv.observable), iv.lo, iv.hi});
      }
      red.isometry = (red.isometry * face).eval();
      red.problem = std::move(next);
      changed = true;
      break;
    }
  }
  return red;
}

// Reduced to a single ray: the feasible set is at most one pure state.
SdpSolution singleton_solution(const SdpProblem& reduced,
                               const Eigen::MatrixXcd& objective) {
  SdpSolution out;
  out.X = Eigen::MatrixXcd::Ones(1, 1);
  out.status = SolveStatus::Optimal;
  double residual = 0.0;
  for (const auto& eq : reduced.equalities) {
    residual = std::max(residual,
                        std::abs(eq.observable(0, 0).real() - eq.value));
  }
  for (const auto& iv : reduced.intervals) {
    const double v = iv.observable(0, 0).real();
    residual = std::max({residual, iv.lo - v, v - iv.hi, 0.0});
  }
  if (residual > 1e-7) {
    out.status = SolveStatus::Infeasible;
  }
  out.primal_residual = residual;
  if (objective.size() > 0) {
    out.objective_value = objective(0, 0).real();
    out.dual_objective = out.objective_value;
  }
  return out;
}

SdpSolution infeasible_solution(int dim) {
  SdpSolution out;
  out.status = SolveStatus::Infeasible;
  out.X = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return out;
}

void append_feasible_set_rows(sdp::RealConicProblem& real_problem,
                              const SdpProblem& problem, int block,
                              int lp_offset) {
  if (problem.unit_trace) {
    auto& row = real_problem.add_row(2.0);
    sdp_detail::add_complex_observable(
        row, block,
        Eigen::MatrixXcd::Identity(problem.dim, problem.dim));
  }
  for (const auto& eq : problem.equalities) {
    auto& row = real_problem.add_row(2.0 * eq.value);
    sdp_detail::add_complex_observable(row, block, eq.observable);
  }
  int lp = lp_offset;
  for (const auto& iv : problem.intervals) {
    auto& lo_row = real_problem.add_row(2.0 * iv.lo);
    sdp_detail::add_complex_observable(lo_row, block, iv.observable);
    lo_row.lp.emplace_back(lp++, -1.0);
    auto& hi_row = real_problem.add_row(2.0 * iv.hi);
    sdp_detail::add_complex_observable(hi_row, block, iv.observable);
    hi_row.lp.emplace_back(lp++, 1.0);
  }
}

SdpSolution finish(const SdpProblem& problem,
                   const sdp::RealConicSolution& raw, int x_block) {
  SdpSolution out;
  out.X = extract_complex(raw.X_psd[static_cast<std::size_t>(x_block)]);
  if (problem.unit_trace) {
    const double trace = out.X.trace().real();
    if (trace > 0.0) out.X /= trace;
  }
  out.dual_objective = 0.5 * raw.dual_objective;
  out.primal_residual = raw.primal_residual;
  out.duality_gap = raw.gap;
  out.iterations = raw.iterations;
  out.status = raw.status;
  return out;
}

}  // namespace

SdpSolution solve_linear(const SdpProblem& problem,
                         const SolverOptions& options) {
  problem.validate();
  sdp::RealConicProblem real_problem;
  real_problem.init_blocks({2 * problem.dim},
                           2 * static_cast<int>(problem.intervals.size()));
  if (problem.objective.size() > 0) {
    real_problem.C_psd[0] = embed_complex(problem.objective);
  }
  append_feasible_set_rows(real_problem, problem, 0, 0);

  sdp::RealConicSolution raw = sdp::solve(real_problem, options);
  SdpSolution out = finish(problem, raw, 0);
  if (problem.objective.size() > 0) {
    out.objective_value = (problem.objective * out.X).trace().real();
  }
  return out;
}

SdpSolution solve_min_purity(const SdpProblem& constraints,
                             const SolverOptions& options) {
  SdpProblem problem = constraints;
  problem.objective = Eigen::MatrixXcd();
  problem.validate();
  const int d = problem.dim;
  const std::complex<double> one(1.0, 0.0);
  const std::complex<double> im(0.0, 1.0);

  // Block 0 holds the Schur variable [[Y, B], [B^dag, C]]; block 1 holds X.
  // Constraints pin C to the identity and the Hermitian part of B to X; the
  // anti-Hermitian freedom of B only increases tr(Y), so the optimum has
  // B = X and Y = X^2.
  sdp::RealConicProblem real_problem;
  real_problem.init_blocks({4 * d, 2 * d},
                           2 * static_cast<int>(problem.intervals.size()));
  Eigen::MatrixXcd C_big = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  C_big.topLeftCorner(d, d).setIdentity();
  real_problem.C_psd[0] = embed_complex(C_big);

  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(d, d);
  auto pin = [&](double rhs) -> sdp::ConstraintRow& {
    auto& row = real_problem.add_row(rhs);
    sdp_detail::add_complex_observable(row, 0, F);
    return row;
  };
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      if (k == l) {
        F.setZero();
        F(d + k, d + k) = one;
        pin(2.0);
      } else {
        F.setZero();
        F(d + k, d + l) = one;
        F(d + l, d + k) = one;
        pin(0.0);
        F.setZero();
        F(d + k, d + l) = -im;
        F(d + l, d + k) = im;
        pin(0.0);
      }
    }
  }
  auto couple = [&]() {
    F.setZero();
    F.block(0, d, d, d) = G;
    F.block(d, 0, d, d) = G;
    auto& row = real_problem.add_row(0.0);
    sdp_detail::add_complex_observable(row, 0, F);
    sdp_detail::add_complex_observable(row, 1, G, -2.0);
  };
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      if (k == l) {
        G.setZero();
        G(k, k) = one;
        couple();
      } else {
        G.setZero();
        G(k, l) = one;
        G(l, k) = one;
        couple();
        G.setZero();
        G(k, l) = -im;
        G(l, k) = im;
        couple();
      }
    }
  }
  append_feasible_set_rows(real_problem, problem, 1, 0);

  sdp::RealConicSolution raw = sdp::solve(real_problem, options);
  SdpSolution out = finish(problem, raw, 1);
  out.objective_value = (out.X * out.X).trace().real();
  return out;
}

}  // namespace ergocert
