#include "ergocert/ergotropy.hpp"

#include <algorithm>
#include <cmath>

namespace ergocert {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

ErgotropyReport exact_ergotropy(const DensityMatrix& rho,
                                const HamiltonianData& H) {
  require_same_dim(rho.dim(), H.dim());
  const Eigen::Index d = rho.dim();

  EigResult eig = eigendecompose_hermitian(rho.matrix);
  ErgotropyReport report;
  report.state_spectrum = eig.values.reverse();
  report.state_vectors = eig.vectors.rowwise().reverse();

  // U* = sum_j |E_j><r_j| with r descending against ascending energies.
  report.optimal_unitary = H.eigenvectors * report.state_vectors.adjoint();

  const double mean_energy = (H.matrix * rho.matrix).trace().real();
  const double passive_energy = report.state_spectrum.dot(H.energies);
  report.value = mean_energy - passive_energy;

  Eigen::MatrixXcd passive = H.eigenvectors *
                             report.state_spectrum.asDiagonal() *
                             H.eigenvectors.adjoint();
  report.passive_state = {std::move(passive)};
  return report;
}

double extraction_value(const DensityMatrix& rho, const HamiltonianData& H,
                        const Eigen::MatrixXcd& U) {
  require_same_dim(rho.dim(), H.dim());
  require_same_dim(rho.dim(), U.rows());
  if (unitarity_defect(U) > 1e-8) {
    throw Error(ErrorKind::NotUnitary, "extraction unitary");
  }
  const double before = (H.matrix * rho.matrix).trace().real();
  const double after =
      (H.matrix * U * rho.matrix * U.adjoint()).trace().real();
  return before - after;
}

std::pair<DensityMatrix, double> dephase_incoherent(const DensityMatrix& rho,
                                                    const HamiltonianData& H) {
  require_same_dim(rho.dim(), H.dim());
  const Eigen::MatrixXcd& V = H.eigenvectors;
  const Eigen::VectorXd populations =
      (V.adjoint() * rho.matrix * V).diagonal().real();
  DensityMatrix dephased{V * populations.asDiagonal() * V.adjoint()};
  const double incoherent = exact_ergotropy(dephased, H).value;
  return {std::move(dephased), incoherent};
}

bool majorizes(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::NotADistribution,
                "length mismatch: " + std::to_string(p.size()) + " vs " +
                    std::to_string(q.size()));
  }
  auto check = [](const Eigen::VectorXd& v) {
    if (v.size() == 0 || v.minCoeff() < -1e-12 ||
        std::abs(v.sum() - 1.0) > 1e-9) {
      throw Error(ErrorKind::NotADistribution, "probability vector invalid");
    }
  };
  check(p);
  check(q);
  std::vector<double> ps(p.data(), p.data() + p.size());
  std::vector<double> qs(q.data(), q.data() + q.size());
  std::sort(ps.begin(), ps.end(), std::greater<>());
  std::sort(qs.begin(), qs.end(), std::greater<>());
  double sum_p = 0.0;
  double sum_q = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    sum_p += ps[i];
    sum_q += qs[i];
    if (sum_p < sum_q - 1e-10) return false;
  }
  return true;
}

}  // namespace ergocert
