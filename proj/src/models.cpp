#include "ergocert/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ergocert {

HamiltonianData HamiltonianData::from_matrix(const Eigen::MatrixXcd& M) {
  EigResult eig = eigendecompose_hermitian(M);
  return {M, std::move(eig.values), std::move(eig.vectors)};
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd& M) {
  require_hermitian(M, "density matrix");
  const double trace = M.trace().real();
  if (std::abs(trace - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument,
                "density matrix trace " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw Error(ErrorKind::InvalidArgument,
                "density matrix has eigenvalue " +
                    std::to_string(solver.eigenvalues().minCoeff()));
  }
  return {M};
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "zero state vector");
  }
  const Eigen::VectorXcd unit = psi / norm;
  return {unit * unit.adjoint()};
}

StateKind parse_state_kind(const std::string& name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "ghz") return StateKind::GHZ;
  if (s == "w") return StateKind::W;
  if (s == "product") return StateKind::Product;
  if (s == "gibbs") return StateKind::Gibbs;
  if (s == "extremal") return StateKind::ExtremalSuperposition;
  throw Error(ErrorKind::InvalidArgument, "unknown state kind \"" + name + "\"");
}

std::string state_kind_name(StateKind kind) {
  switch (kind) {
    case StateKind::GHZ: return "ghz";
    case StateKind::W: return "w";
    case StateKind::Product: return "product";
    case StateKind::Gibbs: return "gibbs";
    case StateKind::ExtremalSuperposition: return "extremal";
  }
  return "?";
}

namespace {

PauliString single_site(int n, int site, PauliOp op) {
  PauliString p;
  p.symbols.assign(static_cast<std::size_t>(n), PauliOp::I);
  p.symbols[static_cast<std::size_t>(site)] = op;
  return p;
}

PauliString two_site(int n, int site_a, int site_b, PauliOp op) {
  PauliString p = single_site(n, site_a, op);
  p.symbols[static_cast<std::size_t>(site_b)] = op;
  return p;
}

}  // namespace

HamiltonianData build_spin_chain(const SpinChainParams& params, int max_qubits) {
  const int n = params.n;
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "spin chain needs n >= 2, got " + std::to_string(n));
  }
  if (n > max_qubits) {
    throw Error(ErrorKind::DimensionTooLarge,
                "n = " + std::to_string(n) + " exceeds the configured maximum " +
                    std::to_string(max_qubits));
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i + 1 < n; ++i) {
    if (params.j1 != 0.0)
      H -= params.j1 * pauli_matrix(two_site(n, i, i + 1, PauliOp::X), max_qubits);
    if (params.jy != 0.0)
      H -= params.jy * pauli_matrix(two_site(n, i, i + 1, PauliOp::Y), max_qubits);
    if (params.delta != 0.0)
      H -= params.delta * pauli_matrix(two_site(n, i, i + 1, PauliOp::Z), max_qubits);
  }
  for (int i = 0; i + 2 < n; ++i) {
    if (params.j2 != 0.0)
      H -= params.j2 * pauli_matrix(two_site(n, i, i + 2, PauliOp::X), max_qubits);
  }
  for (int i = 0; i < n; ++i) {
    if (params.b != 0.0)
      H -= params.b * pauli_matrix(single_site(n, i, PauliOp::Z), max_qubits);
    if (params.g != 0.0)
      H -= params.g * pauli_matrix(single_site(n, i, PauliOp::X), max_qubits);
  }
  return HamiltonianData::from_matrix(H);
}

DensityMatrix make_reference_state(StateKind kind, int n,
                                   const HamiltonianData* hamiltonian,
                                   double param) {
  const Eigen::Index d = Eigen::Index{1} << n;
  switch (kind) {
    case StateKind::GHZ: {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
      psi(0) = 1.0;
      psi(d - 1) = 1.0;
      return DensityMatrix::from_pure(psi);
    }
    case StateKind::W: {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
      for (int site = 0; site < n; ++site) {
        psi(Eigen::Index{1} << (n - 1 - site)) = 1.0;
      }
      return DensityMatrix::from_pure(psi);
    }
    case StateKind::Product: {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
      psi(0) = 1.0;
      return DensityMatrix::from_pure(psi);
    }
    case StateKind::Gibbs: {
      if (hamiltonian == nullptr) {
        throw Error(ErrorKind::MissingHamiltonian, "Gibbs state needs H");
      }
      if (hamiltonian->dim() != d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "Hamiltonian dimension vs qubit count");
      }
      const double beta = param;
      const Eigen::VectorXd& e = hamiltonian->energies;
      // Shift exponents so the largest weight is exp(0).
      const double ref = beta >= 0.0 ? e.minCoeff() : e.maxCoeff();
      Eigen::VectorXd weights(e.size());
      for (Eigen::Index j = 0; j < e.size(); ++j) {
        weights(j) = std::exp(-beta * (e(j) - ref));
      }
      weights /= weights.sum();
      const Eigen::MatrixXcd& V = hamiltonian->eigenvectors;
      return {V * weights.asDiagonal() * V.adjoint()};
    }
    case StateKind::ExtremalSuperposition: {
      if (hamiltonian == nullptr) {
        throw Error(ErrorKind::MissingHamiltonian,
                    "extremal superposition needs H");
      }
      if (hamiltonian->dim() != d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "Hamiltonian dimension vs qubit count");
      }
      const Eigen::VectorXd& e = hamiltonian->energies;
      const Eigen::Index last = e.size() - 1;
      if (e(1) - e(0) < 1e-9 || e(last) - e(last - 1) < 1e-9) {
        throw Error(ErrorKind::DegenerateExtremalLevels,
                    "extremal Hamiltonian levels are degenerate");
      }
      const double s = param;
      Eigen::VectorXcd psi = hamiltonian->eigenvectors.col(0) +
                             s * hamiltonian->eigenvectors.col(last);
      return DensityMatrix::from_pure(psi);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown state kind");
}

}  // namespace ergocert
