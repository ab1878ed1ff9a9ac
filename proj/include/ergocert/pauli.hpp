#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ergocert/errors.hpp"

namespace ergocert {

/// Tensor position convention: site 1 is the leftmost letter of the label and
/// the most significant tensor factor, so "XI" acts with X on the first qubit
/// and identity on the second.
enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// A length-n word over {I, X, Y, Z} identifying one measurement observable.
struct PauliString {
  std::vector<PauliOp> symbols;

  int n() const { return static_cast<int>(symbols.size()); }

  /// Number of non-identity letters.
  int weight() const;

  bool is_identity() const { return weight() == 0; }

  std::string label() const;

  auto operator<=>(const PauliString&) const = default;
};

/// Expansion of a Hermitian matrix in the Pauli-string basis with real
/// coefficients; terms with |coefficient| <= 1e-12 are dropped.
struct PauliDecomposition {
  int n = 0;
  std::map<PauliString, double> terms;
};

inline constexpr int kDefaultMaxQubits = 6;

/// Parses a label such as "XIZY" (case-insensitive).
PauliString parse_pauli(const std::string& label);

/// Dense 2^n x 2^n matrix of the string.
Eigen::MatrixXcd pauli_matrix(const PauliString& p,
                              int max_qubits = kDefaultMaxQubits);

/// All 4^n - 1 non-identity strings, ordered by ascending weight; within a
/// weight block the order is a seed-determined uniform permutation.
std::vector<PauliString> hierarchical_order(int n, std::uint64_t seed);

PauliDecomposition pauli_decompose(const Eigen::MatrixXcd& M);

Eigen::MatrixXcd reconstruct(const PauliDecomposition& decomposition);

/// Re tr(rho * P).
double expectation(const Eigen::MatrixXcd& rho, const PauliString& p);

}  // namespace ergocert
