#include "ergocert/sdp_core.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>

namespace ergocert::sdp {

namespace {

constexpr double kStepFraction = 0.98;
constexpr double kHuge = 1e300;

struct BlockScaling {
  Eigen::MatrixXd R;     // W = R R^T, lambda = R^{-1} X R^{-T} = R^T S R diagonal
  Eigen::MatrixXd Rinv;
  Eigen::MatrixXd W;
  Eigen::VectorXd lam;
  Eigen::LLT<Eigen::MatrixXd> chol_x;  // factor of X, reused for step lengths
};

Eigen::LLT<Eigen::MatrixXd> chol_with_jitter(const Eigen::MatrixXd& M) {
  Eigen::MatrixXd A = M;
  double jitter = 0.0;
  const double scale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success) return llt;
    jitter = (jitter == 0.0) ? 1e-14 * scale : jitter * 100.0;
    A = M + jitter * Eigen::MatrixXd::Identity(M.rows(), M.cols());
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "cone variable lost positive definiteness");
}

// Largest alpha with X + alpha * D psd, given the factor of X.
double max_step(const Eigen::LLT<Eigen::MatrixXd>& chol_x,
                const Eigen::MatrixXd& D) {
  const auto& L = chol_x.matrixL();
  Eigen::MatrixXd tmp = L.solve(D);
  Eigen::MatrixXd scaled = L.solve(tmp.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (scaled + scaled.transpose()), Eigen::EigenvaluesOnly);
  const double lam_min = eig.eigenvalues().minCoeff();
  if (lam_min >= -1e-16) return kHuge;
  return -1.0 / lam_min;
}

double max_step_lp(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  double alpha = kHuge;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) alpha = std::min(alpha, -x(i) / dx(i));
  }
  return alpha;
}

double lambda_max_sym(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

}  // namespace

void RealConicProblem::init_blocks(const std::vector<int>& dims, int lp) {
  psd_dims = dims;
  lp_dim = lp;
  C_psd.clear();
  for (int d : dims) C_psd.push_back(Eigen::MatrixXd::Zero(d, d));
  c_lp = Eigen::VectorXd::Zero(lp);
}

ConstraintRow& RealConicProblem::add_row(double rhs) {
  rows.emplace_back();
  rows.back().psd.resize(psd_dims.size());
  rows.back().rhs = rhs;
  return rows.back();
}

void RealConicProblem::add_psd_entries(ConstraintRow& row, int block,
                                       const Eigen::MatrixXd& M, double coeff) {
  auto& entries = row.psd[static_cast<std::size_t>(block)];
  for (int r = 0; r < M.rows(); ++r) {
    for (int c = 0; c < M.cols(); ++c) {
      const double v = coeff * M(r, c);
      if (v != 0.0) entries.push_back({r, c, v});
    }
  }
}

namespace {

double row_inner(const ConstraintRow& a, const ConstraintRow& b,
                 std::vector<Eigen::MatrixXd>& scratch,
                 Eigen::VectorXd& lp_scratch) {
  // <A_a, A_b> over all blocks; scratch holds densified row b.
  double acc = 0.0;
  for (std::size_t bidx = 0; bidx < a.psd.size(); ++bidx) {
    if (a.psd[bidx].empty() || b.psd[bidx].empty()) continue;
    auto& dense = scratch[bidx];
    for (const auto& e : b.psd[bidx]) dense(e.row, e.col) += e.value;
    for (const auto& e : a.psd[bidx]) acc += e.value * dense(e.row, e.col);
    for (const auto& e : b.psd[bidx]) dense(e.row, e.col) = 0.0;
  }
  if (!a.lp.empty() && !b.lp.empty()) {
    for (const auto& [idx, v] : b.lp) lp_scratch(idx) = v;
    for (const auto& [idx, v] : a.lp) acc += v * lp_scratch(idx);
    for (const auto& [idx, v] : b.lp) lp_scratch(idx) = 0.0;
  }
  return acc;
}

struct RowSelection {
  std::vector<int> kept;
  bool inconsistent = false;
};

// Pivoted-Cholesky rank filter on the constraint Gram matrix: exactly
// dependent rows (e.g. energy projectors that sum to the enforced trace)
// are dropped after checking their right-hand sides remain consistent.
RowSelection select_independent_rows(const RealConicProblem& P) {
  const int m = static_cast<int>(P.rows.size());
  Eigen::MatrixXd gram(m, m);
  std::vector<Eigen::MatrixXd> scratch;
  for (int d : P.psd_dims) scratch.push_back(Eigen::MatrixXd::Zero(d, d));
  Eigen::VectorXd lp_scratch = Eigen::VectorXd::Zero(P.lp_dim);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      gram(i, j) = row_inner(P.rows[static_cast<std::size_t>(i)],
                             P.rows[static_cast<std::size_t>(j)], scratch,
                             lp_scratch);
      gram(j, i) = gram(i, j);
    }
  }

  RowSelection sel;
  Eigen::MatrixXd work = gram;
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  const double tol = std::max(work.diagonal().maxCoeff(), 1e-300) * 1e-12;
  int rank = 0;
  for (int k = 0; k < m; ++k) {
    int pivot = k;
    for (int j = k + 1; j < m; ++j) {
      if (work(j, j) > work(pivot, pivot)) pivot = j;
    }
    if (work(pivot, pivot) <= tol) break;
    if (pivot != k) {
      work.row(k).swap(work.row(pivot));
      work.col(k).swap(work.col(pivot));
      std::swap(order[static_cast<std::size_t>(k)],
                order[static_cast<std::size_t>(pivot)]);
    }
    const double d = std::sqrt(work(k, k));
    work(k, k) = d;
    work.col(k).tail(m - k - 1) /= d;
    if (k + 1 < m) {
      const Eigen::VectorXd l = work.col(k).tail(m - k - 1);
      work.bottomRightCorner(m - k - 1, m - k - 1) -= l * l.transpose();
    }
    ++rank;
  }
  sel.kept.assign(order.begin(), order.begin() + rank);
  std::sort(sel.kept.begin(), sel.kept.end());
  if (rank == m) return sel;

  // Dropped rows must have right-hand sides implied by the kept ones.
  Eigen::MatrixXd gram_kept(rank, rank);
  Eigen::VectorXd b_kept(rank);
  for (int i = 0; i < rank; ++i) {
    b_kept(i) = P.rows[static_cast<std::size_t>(sel.kept[static_cast<std::size_t>(i)])].rhs;
    for (int j = 0; j < rank; ++j) {
      gram_kept(i, j) = gram(sel.kept[static_cast<std::size_t>(i)],
                             sel.kept[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> fact(gram_kept);
  std::vector<bool> is_kept(static_cast<std::size_t>(m), false);
  for (int i : sel.kept) is_kept[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < m; ++i) {
    if (is_kept[static_cast<std::size_t>(i)]) continue;
    Eigen::VectorXd g(rank);
    for (int j = 0; j < rank; ++j) {
      g(j) = gram(i, sel.kept[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd coeffs = fact.solve(g);
    const double implied = coeffs.dot(b_kept);
    const double rhs = P.rows[static_cast<std::size_t>(i)].rhs;
    if (std::abs(implied - rhs) > 1e-8 * (1.0 + std::abs(rhs))) {
      sel.inconsistent = true;
      return sel;
    }
  }
  return sel;
}

}  // namespace

RealConicSolution solve(const RealConicProblem& P, const SolverOptions& opt) {
  {
    const int m_all = static_cast<int>(P.rows.size());
    if (m_all == 0) {
      throw Error(ErrorKind::InvalidArgument,
                  "conic problem has no constraints");
    }
    RowSelection sel = select_independent_rows(P);
    if (sel.inconsistent) {
      RealConicSolution sol;
      sol.status = SolveStatus::Infeasible;
      for (int d : P.psd_dims) {
        sol.X_psd.push_back(Eigen::MatrixXd::Identity(d, d));
        sol.S_psd.push_back(Eigen::MatrixXd::Identity(d, d));
      }
      sol.x_lp = Eigen::VectorXd::Ones(P.lp_dim);
      sol.s_lp = Eigen::VectorXd::Ones(P.lp_dim);
      sol.y = Eigen::VectorXd::Zero(m_all);
      return sol;
    }
    if (static_cast<int>(sel.kept.size()) < m_all) {
      RealConicProblem reduced;
      reduced.psd_dims = P.psd_dims;
      reduced.lp_dim = P.lp_dim;
      reduced.C_psd = P.C_psd;
      reduced.c_lp = P.c_lp;
      for (int i : sel.kept) {
        reduced.rows.push_back(P.rows[static_cast<std::size_t>(i)]);
      }
      RealConicSolution sol = solve(reduced, opt);
      Eigen::VectorXd full_y = Eigen::VectorXd::Zero(m_all);
      for (std::size_t k = 0; k < sel.kept.size(); ++k) {
        full_y(sel.kept[k]) = sol.y(static_cast<Eigen::Index>(k));
      }
      sol.y = full_y;
      return sol;
    }
  }

  const int nblocks = static_cast<int>(P.psd_dims.size());
  const int m = static_cast<int>(P.rows.size());

  double nu = static_cast<double>(P.lp_dim);
  for (int d : P.psd_dims) nu += d;

  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b(i) = P.rows[static_cast<std::size_t>(i)].rhs;
  const double b_norm = m > 0 ? b.cwiseAbs().maxCoeff() : 0.0;
  double c_norm = P.lp_dim > 0 ? P.c_lp.cwiseAbs().maxCoeff() : 0.0;
  for (const auto& C : P.C_psd) {
    if (C.size() > 0) c_norm = std::max(c_norm, C.cwiseAbs().maxCoeff());
  }

  RealConicSolution sol;
  sol.X_psd.reserve(static_cast<std::size_t>(nblocks));
  sol.S_psd.reserve(static_cast<std::size_t>(nblocks));
  for (int d : P.psd_dims) {
    sol.X_psd.push_back(opt.init_scale * Eigen::MatrixXd::Identity(d, d));
    sol.S_psd.push_back(std::max(1.0, c_norm) *
                        Eigen::MatrixXd::Identity(d, d));
  }
  sol.x_lp = opt.init_scale * Eigen::VectorXd::Ones(P.lp_dim);
  sol.s_lp = std::max(1.0, c_norm) * Eigen::VectorXd::Ones(P.lp_dim);
  sol.y = Eigen::VectorXd::Zero(m);

  auto apply_A = [&](const std::vector<Eigen::MatrixXd>& Xb,
                     const Eigen::VectorXd& xl) {
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) {
      const auto& row = P.rows[static_cast<std::size_t>(i)];
      double v = 0.0;
      for (int bidx = 0; bidx < nblocks; ++bidx) {
        for (const auto& e : row.psd[static_cast<std::size_t>(bidx)]) {
          v += e.value * Xb[static_cast<std::size_t>(bidx)](e.row, e.col);
        }
      }
      for (const auto& [idx, a] : row.lp) v += a * xl(idx);
      out(i) = v;
    }
    return out;
  };

  auto apply_At = [&](const Eigen::VectorXd& yv,
                      std::vector<Eigen::MatrixXd>& out_psd,
                      Eigen::VectorXd& out_lp) {
    out_psd.resize(static_cast<std::size_t>(nblocks));
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      out_psd[static_cast<std::size_t>(bidx)].setZero(
          P.psd_dims[static_cast<std::size_t>(bidx)],
          P.psd_dims[static_cast<std::size_t>(bidx)]);
    }
    out_lp.setZero(P.lp_dim);
    for (int i = 0; i < m; ++i) {
      const double yi = yv(i);
      if (yi == 0.0) continue;
      const auto& row = P.rows[static_cast<std::size_t>(i)];
      for (int bidx = 0; bidx < nblocks; ++bidx) {
        for (const auto& e : row.psd[static_cast<std::size_t>(bidx)]) {
          out_psd[static_cast<std::size_t>(bidx)](e.row, e.col) += yi * e.value;
        }
      }
      for (const auto& [idx, a] : row.lp) out_lp(idx) += yi * a;
    }
  };

  std::vector<BlockScaling> scal(static_cast<std::size_t>(nblocks));
  Eigen::VectorXd w2, lam_lp;
  std::vector<Eigen::MatrixXd> At_psd, Rd, WRdW, E, dS_aff, dX_aff, dS, dX, T;
  Eigen::VectorXd At_lp, rd_lp;
  T.resize(static_cast<std::size_t>(nblocks));

  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    // Residuals and objective values.
    Eigen::VectorXd r_p = b - apply_A(sol.X_psd, sol.x_lp);
    apply_At(sol.y, At_psd, At_lp);
    Rd.resize(static_cast<std::size_t>(nblocks));
    double dinf = 0.0;
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      Rd[static_cast<std::size_t>(bidx)] =
          P.C_psd[static_cast<std::size_t>(bidx)] -
          sol.S_psd[static_cast<std::size_t>(bidx)] -
          At_psd[static_cast<std::size_t>(bidx)];
      if (Rd[static_cast<std::size_t>(bidx)].size() > 0) {
        dinf = std::max(
            dinf, Rd[static_cast<std::size_t>(bidx)].cwiseAbs().maxCoeff());
      }
    }
    rd_lp = P.c_lp - sol.s_lp - At_lp;
    if (P.lp_dim > 0) dinf = std::max(dinf, rd_lp.cwiseAbs().maxCoeff());
    dinf /= 1.0 + c_norm;
    const double pinf = r_p.cwiseAbs().maxCoeff() / (1.0 + b_norm);

    double pobj = P.lp_dim > 0 ? P.c_lp.dot(sol.x_lp) : 0.0;
    double gap = P.lp_dim > 0 ? sol.x_lp.dot(sol.s_lp) : 0.0;
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      pobj += P.C_psd[static_cast<std::size_t>(bidx)]
                  .cwiseProduct(sol.X_psd[static_cast<std::size_t>(bidx)])
                  .sum();
      gap += sol.X_psd[static_cast<std::size_t>(bidx)]
                 .cwiseProduct(sol.S_psd[static_cast<std::size_t>(bidx)])
                 .sum();
    }
    const double dobj = b.dot(sol.y);

    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.gap = gap;
    sol.primal_residual = pinf;
    sol.dual_residual = dinf;
    sol.iterations = iter;

    if (opt.trace) {
      std::fprintf(stderr,
                   "iter %3d  pobj % .6e  dobj % .6e  gap % .3e  pinf %.3e  "
                   "dinf %.3e\n",
                   iter, pobj, dobj, gap, pinf, dinf);
    }

    if (!std::isfinite(gap) || !std::isfinite(pinf) || !std::isfinite(dinf)) {
      throw Error(ErrorKind::ConvergenceFailure,
                  "interior point iterate diverged");
    }

    if (pinf <= opt.tol_feas && dinf <= opt.tol_feas && gap <= opt.tol_gap) {
      sol.status = SolveStatus::Optimal;
      return sol;
    }

    // Farkas ray check: y with A*(y) <= 0 and b'y > 0 certifies primal
    // infeasibility; normalize to b'y = 1 and test the cone violation.
    if (iter >= 3 && pinf > opt.tol_feas) {
      const double by = b.dot(sol.y);
      if (by > 1e-10 * (1.0 + sol.y.cwiseAbs().maxCoeff())) {
        Eigen::VectorXd yn = sol.y / by;
        std::vector<Eigen::MatrixXd> ray_psd;
        Eigen::VectorXd ray_lp;
        apply_At(yn, ray_psd, ray_lp);
        double viol = 0.0;
        for (const auto& Zb : ray_psd) {
          if (Zb.size() > 0) viol = std::max(viol, lambda_max_sym(Zb));
        }
        if (P.lp_dim > 0) viol = std::max(viol, ray_lp.maxCoeff());
        if (viol <= opt.tol_infeas) {
          sol.status = SolveStatus::Infeasible;
          return sol;
        }
      }
    }

    if (iter == opt.max_iterations) break;

    const double mu = gap / nu;

    // Nesterov-Todd scaling per block: with X = L L^T and
    // L^T S L = Q Lam Q^T, R = L Q Lam^{-1/4} satisfies W = R R^T,
    // R^{-1} X R^{-T} = R^T S R = Lam^{1/2} (diagonal scaled point).
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      auto& sc = scal[static_cast<std::size_t>(bidx)];
      const auto& X = sol.X_psd[static_cast<std::size_t>(bidx)];
      const auto& S = sol.S_psd[static_cast<std::size_t>(bidx)];
      sc.chol_x = chol_with_jitter(X);
      Eigen::MatrixXd L = sc.chol_x.matrixL();
      Eigen::MatrixXd Msm = L.transpose() * S * L;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
          0.5 * (Msm + Msm.transpose()));
      Eigen::VectorXd evals = eig.eigenvalues();
      const double floor = std::max(evals.maxCoeff(), 1e-300) * 1e-15;
      evals = evals.cwiseMax(floor);
      const Eigen::VectorXd quarter = evals.array().pow(-0.25).matrix();
      sc.R = L * eig.eigenvectors() * quarter.asDiagonal();
      sc.Rinv = quarter.cwiseInverse().asDiagonal() *
                eig.eigenvectors().transpose() *
                L.triangularView<Eigen::Lower>()
                    .solve(Eigen::MatrixXd::Identity(L.rows(), L.rows()));
      sc.W = sc.R * sc.R.transpose();
      sc.lam = evals.cwiseSqrt();
    }
    if (P.lp_dim > 0) {
      w2 = sol.x_lp.cwiseQuotient(sol.s_lp);
      lam_lp = sol.x_lp.cwiseProduct(sol.s_lp).cwiseSqrt();
    }

    // Schur complement M_ij = sum_b tr(A_i W A_j W) + sum_k a_ik w2_k a_jk.
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd lp_scratch(P.lp_dim);
    for (int j = 0; j < m; ++j) {
      const auto& row_j = P.rows[static_cast<std::size_t>(j)];
      for (int bidx = 0; bidx < nblocks; ++bidx) {
        const auto& entries = row_j.psd[static_cast<std::size_t>(bidx)];
        auto& Tb = T[static_cast<std::size_t>(bidx)];
        if (entries.empty()) {
          Tb.resize(0, 0);
          continue;
        }
        const auto& W = scal[static_cast<std::size_t>(bidx)].W;
        Tb.setZero(W.rows(), W.cols());
        for (const auto& e : entries) {
          Tb.noalias() += e.value * (W.col(e.row) * W.col(e.col).transpose());
        }
      }
      if (P.lp_dim > 0) {
        lp_scratch.setZero();
        for (const auto& [idx, a] : row_j.lp) lp_scratch(idx) = a * w2(idx);
      }
      for (int i = 0; i <= j; ++i) {
        const auto& row_i = P.rows[static_cast<std::size_t>(i)];
        double acc = 0.0;
        for (int bidx = 0; bidx < nblocks; ++bidx) {
          const auto& Tb = T[static_cast<std::size_t>(bidx)];
          if (Tb.size() == 0) continue;
          for (const auto& e : row_i.psd[static_cast<std::size_t>(bidx)]) {
            acc += e.value * Tb(e.row, e.col);
          }
        }
        for (const auto& [idx, a] : row_i.lp) acc += a * lp_scratch(idx);
        schur(i, j) = acc;
        schur(j, i) = acc;
      }
    }

    Eigen::LLT<Eigen::MatrixXd> schur_fact = chol_with_jitter(schur);
    auto solve_schur = [&](const Eigen::VectorXd& rhs) {
      Eigen::VectorXd dy = schur_fact.solve(rhs);
      dy += schur_fact.solve(rhs - schur * dy);  // one refinement step
      return dy;
    };

    // A(W Rd W) term shared by predictor and corrector.
    WRdW.resize(static_cast<std::size_t>(nblocks));
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const auto& W = scal[static_cast<std::size_t>(bidx)].W;
      WRdW[static_cast<std::size_t>(bidx)] =
          W * Rd[static_cast<std::size_t>(bidx)] * W;
    }
    Eigen::VectorXd wrd_lp =
        P.lp_dim > 0 ? Eigen::VectorXd(w2.cwiseProduct(rd_lp))
                     : Eigen::VectorXd();
    const Eigen::VectorXd a_wrdw = apply_A(WRdW, wrd_lp);

    // Predictor (affine scaling direction): E = -X.
    Eigen::VectorXd dy_aff = solve_schur(b + a_wrdw);
    std::vector<Eigen::MatrixXd> Aty_psd;
    Eigen::VectorXd aty_lp;
    apply_At(dy_aff, Aty_psd, aty_lp);
    dS_aff.resize(static_cast<std::size_t>(nblocks));
    dX_aff.resize(static_cast<std::size_t>(nblocks));
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      dS_aff[k] = Rd[k] - Aty_psd[k];
      dX_aff[k] = -sol.X_psd[k] - scal[k].W * dS_aff[k] * scal[k].W;
      dX_aff[k] = 0.5 * (dX_aff[k] + dX_aff[k].transpose()).eval();
    }
    Eigen::VectorXd ds_aff_lp, dx_aff_lp;
    if (P.lp_dim > 0) {
      ds_aff_lp = rd_lp - aty_lp;
      dx_aff_lp = -sol.x_lp - w2.cwiseProduct(ds_aff_lp);
    }

    double ap = kHuge;
    double ad = kHuge;
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      ap = std::min(ap, max_step(scal[k].chol_x, dX_aff[k]));
      ad = std::min(ad, max_step(chol_with_jitter(sol.S_psd[k]), dS_aff[k]));
    }
    if (P.lp_dim > 0) {
      ap = std::min(ap, max_step_lp(sol.x_lp, dx_aff_lp));
      ad = std::min(ad, max_step_lp(sol.s_lp, ds_aff_lp));
    }
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    double mu_aff = 0.0;
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      mu_aff += (sol.X_psd[k] + ap * dX_aff[k])
                    .cwiseProduct(sol.S_psd[k] + ad * dS_aff[k])
                    .sum();
    }
    if (P.lp_dim > 0) {
      mu_aff += (sol.x_lp + ap * dx_aff_lp).dot(sol.s_lp + ad * ds_aff_lp);
    }
    mu_aff = std::max(mu_aff / nu, 0.0);
    const double ratio = mu_aff / mu;
    const double sigma = std::clamp(ratio * ratio * ratio, 1e-8, 1.0);

    // Corrector with the Mehrotra second-order term in scaled space.
    E.resize(static_cast<std::size_t>(nblocks));
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      const auto& sc = scal[k];
      Eigen::MatrixXd Dx = sc.Rinv * dX_aff[k] * sc.Rinv.transpose();
      Eigen::MatrixXd Ds = sc.R.transpose() * dS_aff[k] * sc.R;
      Eigen::MatrixXd eta = 0.5 * (Dx * Ds + Ds * Dx);
      Eigen::MatrixXd G = -eta;
      G.diagonal().array() += sigma * mu;
      G.diagonal().array() -= sc.lam.array().square();
      Eigen::MatrixXd Z(G.rows(), G.cols());
      for (Eigen::Index r = 0; r < G.rows(); ++r) {
        for (Eigen::Index c = 0; c < G.cols(); ++c) {
          Z(r, c) = 2.0 * G(r, c) / (sc.lam(r) + sc.lam(c));
        }
      }
      E[k] = sc.R * Z * sc.R.transpose();
      E[k] = 0.5 * (E[k] + E[k].transpose()).eval();
    }
    Eigen::VectorXd e_lp;
    if (P.lp_dim > 0) {
      Eigen::VectorXd g = -sol.x_lp.cwiseProduct(sol.s_lp) -
                          dx_aff_lp.cwiseProduct(ds_aff_lp);
      g.array() += sigma * mu;
      e_lp = g.cwiseQuotient(sol.s_lp);
    }

    Eigen::VectorXd rhs = r_p - apply_A(E, e_lp) + a_wrdw;
    Eigen::VectorXd dy = solve_schur(rhs);
    apply_At(dy, Aty_psd, aty_lp);
    dS.resize(static_cast<std::size_t>(nblocks));
    dX.resize(static_cast<std::size_t>(nblocks));
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      dS[k] = Rd[k] - Aty_psd[k];
      dS[k] = 0.5 * (dS[k] + dS[k].transpose()).eval();
      dX[k] = E[k] - scal[k].W * dS[k] * scal[k].W;
      dX[k] = 0.5 * (dX[k] + dX[k].transpose()).eval();
    }
    Eigen::VectorXd ds_lp, dx_lp;
    if (P.lp_dim > 0) {
      ds_lp = rd_lp - aty_lp;
      dx_lp = e_lp - w2.cwiseProduct(ds_lp);
    }

    ap = kHuge;
    ad = kHuge;
    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      ap = std::min(ap, max_step(scal[k].chol_x, dX[k]));
      ad = std::min(ad, max_step(chol_with_jitter(sol.S_psd[k]), dS[k]));
    }
    if (P.lp_dim > 0) {
      ap = std::min(ap, max_step_lp(sol.x_lp, dx_lp));
      ad = std::min(ad, max_step_lp(sol.s_lp, ds_lp));
    }
    ap = std::min(1.0, kStepFraction * ap);
    ad = std::min(1.0, kStepFraction * ad);
    if (ap < 1e-12 && ad < 1e-12) break;  // stalled

    for (int bidx = 0; bidx < nblocks; ++bidx) {
      const std::size_t k = static_cast<std::size_t>(bidx);
      sol.X_psd[k] += ap * dX[k];
      sol.S_psd[k] += ad * dS[k];
      sol.X_psd[k] = 0.5 * (sol.X_psd[k] + sol.X_psd[k].transpose()).eval();
      sol.S_psd[k] = 0.5 * (sol.S_psd[k] + sol.S_psd[k].transpose()).eval();
    }
    if (P.lp_dim > 0) {
      sol.x_lp += ap * dx_lp;
      sol.s_lp += ad * ds_lp;
    }
    sol.y += ad * dy;
  }

  sol.status = SolveStatus::MaxIterations;
  return sol;
}

}  // namespace ergocert::sdp
