#include "ergocert/linalg.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace ergocert {

bool is_hermitian(const Eigen::MatrixXcd& M, double tol) {
  if (M.rows() != M.cols()) return false;
  return (M - M.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_hermitian(const Eigen::MatrixXcd& M, const char* what,
                       double tol) {
  if (!is_hermitian(M, tol)) {
    throw Error(ErrorKind::NotHermitian, what);
  }
}

EigResult eigendecompose_hermitian(const Eigen::MatrixXcd& M) {
  require_hermitian(M, "eigendecompose input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure,
                "Hermitian eigensolver did not converge for dimension " +
                    std::to_string(M.rows()));
  }
  EigResult result;
  result.values = solver.eigenvalues();
  result.vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < result.vectors.cols(); ++j) {
    // Largest-magnitude component; earlier index wins on exact ties.
    Eigen::Index pivot = 0;
    double best = std::abs(result.vectors(0, j));
    for (Eigen::Index i = 1; i < result.vectors.rows(); ++i) {
      const double mag = std::abs(result.vectors(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    const std::complex<double> z = result.vectors(pivot, j);
    if (std::abs(z) > 0.0) {
      result.vectors.col(j) *= std::conj(z) / std::abs(z);
    }
  }
  return result;
}

double unitarity_defect(const Eigen::MatrixXcd& U) {
  const Eigen::MatrixXcd gram =
      U.adjoint() * U - Eigen::MatrixXcd::Identity(U.cols(), U.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace ergocert
