#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ergocert/models.hpp"

namespace ergocert {

/// Exact ergotropy of a known state: value, the optimal unitary of the
/// sorted-spectrum construction, and the passive state it produces.
struct ErgotropyReport {
  double value = 0.0;
  Eigen::MatrixXcd optimal_unitary;
  DensityMatrix passive_state;
  Eigen::VectorXd state_spectrum;   // descending
  Eigen::MatrixXcd state_vectors;   // columns matching state_spectrum
};

ErgotropyReport exact_ergotropy(const DensityMatrix& rho,
                                const HamiltonianData& H);

/// tr(H rho) - tr(H U rho U^dag); never exceeds the exact ergotropy.
double extraction_value(const DensityMatrix& rho, const HamiltonianData& H,
                        const Eigen::MatrixXcd& U);

/// Dephases rho in the energy eigenbasis and reports the ergotropy of the
/// dephased state (the incoherent part of the total).
std::pair<DensityMatrix, double> dephase_incoherent(const DensityMatrix& rho,
                                                    const HamiltonianData& H);

/// True iff every partial sum of descending-sorted p dominates that of q.
bool majorizes(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

}  // namespace ergocert
