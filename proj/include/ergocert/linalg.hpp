#pragma once

#include <Eigen/Dense>

#include "ergocert/errors.hpp"

namespace ergocert {

inline constexpr double kHermitianTol = 1e-10;

bool is_hermitian(const Eigen::MatrixXcd& M, double tol = kHermitianTol);

void require_hermitian(const Eigen::MatrixXcd& M, const char* what,
                       double tol = kHermitianTol);

struct EigResult {
  Eigen::VectorXd values;      // ascending
  Eigen::MatrixXcd vectors;    // orthonormal columns, phase-normalized
};

/// Hermitian eigendecomposition with a deterministic phase convention: each
/// eigenvector is rotated so its largest-magnitude component is real and
/// positive; magnitude ties are broken by the lowest index.
EigResult eigendecompose_hermitian(const Eigen::MatrixXcd& M);

/// Operator-norm distance of U from unitarity, ||U^dag U - I||_2.
double unitarity_defect(const Eigen::MatrixXcd& U);

}  // namespace ergocert
