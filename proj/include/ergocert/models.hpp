#pragma once

#include <Eigen/Dense>
#include <string>

#include "ergocert/linalg.hpp"
#include "ergocert/pauli.hpp"

namespace ergocert {

/// Couplings of the open-boundary spin chain
///   H = -J1 sum_i X_i X_{i+1} - J2 sum_i X_i X_{i+2} - B sum_i Z_i
///       - G sum_i X_i - Jy sum_i Y_i Y_{i+1} - Delta sum_i Z_i Z_{i+1}.
struct SpinChainParams {
  int n = 3;
  double j1 = 0.0;
  double j2 = 0.0;
  double b = 0.0;
  double g = 0.0;
  double jy = 0.0;
  double delta = 0.0;

  static SpinChainParams annni(int n, double j1, double j2, double b) {
    return {n, j1, j2, b, 0.0, 0.0, 0.0};
  }
  static SpinChainParams xxz(int n, double j1, double delta, double b) {
    return {n, j1, 0.0, b, 0.0, j1, delta};
  }
  static SpinChainParams mfi(int n, double b, double g, double delta) {
    return {n, 0.0, 0.0, b, g, 0.0, delta};
  }
};

/// A Hermitian matrix together with its ascending eigen-decomposition.
struct HamiltonianData {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd energies;     // ascending
  Eigen::MatrixXcd eigenvectors;

  Eigen::Index dim() const { return matrix.rows(); }

  static HamiltonianData from_matrix(const Eigen::MatrixXcd& M);
};

struct DensityMatrix {
  Eigen::MatrixXcd matrix;

  Eigen::Index dim() const { return matrix.rows(); }

  double purity() const { return (matrix * matrix).trace().real(); }

  /// Validates trace one (1e-10), Hermiticity (1e-10) and positivity
  /// (smallest eigenvalue >= -1e-9); throws on violation.
  static DensityMatrix from_matrix(const Eigen::MatrixXcd& M);

  static DensityMatrix from_pure(const Eigen::VectorXcd& psi);
};

enum class StateKind { GHZ, W, Product, Gibbs, ExtremalSuperposition };

StateKind parse_state_kind(const std::string& name);
std::string state_kind_name(StateKind kind);

HamiltonianData build_spin_chain(const SpinChainParams& params,
                                 int max_qubits = kDefaultMaxQubits);

/// Reference true states. `param` is beta for Gibbs and the superposition
/// weight s for the extremal kind; Gibbs and the extremal superposition
/// require `hamiltonian`.
DensityMatrix make_reference_state(StateKind kind, int n,
                                   const HamiltonianData* hamiltonian = nullptr,
                                   double param = 0.0);

}  // namespace ergocert
