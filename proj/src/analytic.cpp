#include "ergocert/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ergocert {

double energy_basis_bound(const Eigen::VectorXd& p,
                          const Eigen::VectorXd& energies) {
  if (p.size() != energies.size()) {
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(p.size()) + " populations vs " +
                    std::to_string(energies.size()) + " energies");
  }
  if (p.size() == 0 || p.minCoeff() < -1e-12 || std::abs(p.sum() - 1.0) > 1e-9) {
    throw Error(ErrorKind::NotADistribution, "energy-basis populations");
  }
  for (Eigen::Index i = 0; i + 1 < energies.size(); ++i) {
    if (energies(i) > energies(i + 1)) {
      throw Error(ErrorKind::InvalidArgument, "energies must be ascending");
    }
  }
  std::vector<double> sorted(p.data(), p.data() + p.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double value = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    value += (p(i) - sorted[static_cast<std::size_t>(i)]) * energies(i);
  }
  return std::max(value, 0.0);
}

QubitXZBound qubit_xz_bound(const QubitXZInput& input) {
  const double x = input.x_star;
  const double z = input.z_star;
  const double r2 = x * x + z * z;
  if (r2 > 1.0 + 1e-12) {
    throw Error(ErrorKind::OutsideBlochBall,
                "x*^2 + z*^2 = " + std::to_string(r2));
  }
  if (input.e0 > input.e1) {
    throw Error(ErrorKind::InvalidArgument, "energies must satisfy e0 <= e1");
  }
  // Midpoint of the compatible segment: Bloch vector (x*, 0, z*).
  const double mean = 0.5 * ((1.0 + z) * input.e0 + (1.0 - z) * input.e1);
  const double radius = std::sqrt(std::min(r2, 1.0));
  const double passive =
      0.5 * ((1.0 + radius) * input.e0 + (1.0 - radius) * input.e1);
  QubitXZBound out;
  out.bound = mean - passive;
  Eigen::VectorXd populations(2);
  populations << 0.5 * (1.0 + z), 0.5 * (1.0 - z);
  Eigen::VectorXd energies(2);
  energies << input.e0, input.e1;
  out.coherent_gain = out.bound - energy_basis_bound(populations, energies);
  return out;
}

}  // namespace ergocert
