#pragma once

#include <Eigen/Dense>

#include "ergocert/errors.hpp"

namespace ergocert {

/// Closed-form certified bound under exact energy-basis measurements:
/// sum_i p_i e_i - sum_i p^down_i e_i, the incoherent ergotropy.
double energy_basis_bound(const Eigen::VectorXd& p,
                          const Eigen::VectorXd& energies);

/// Measured sigma_x and sigma_z expectations of an unknown qubit, with
/// computational-basis energies e0 <= e1; z_star = +1 puts population
/// (1 + z_star)/2 on the e0 level.
struct QubitXZInput {
  double x_star = 0.0;
  double z_star = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
};

struct QubitXZBound {
  double bound = 0.0;
  double coherent_gain = 0.0;
};

/// Certified minimum ergotropy over the segment of states compatible with
/// (x_star, z_star): the ergotropy of the segment midpoint. The gain over
/// the energy-basis bound is strictly positive iff |x_star| > 0.
QubitXZBound qubit_xz_bound(const QubitXZInput& input);

}  // namespace ergocert
