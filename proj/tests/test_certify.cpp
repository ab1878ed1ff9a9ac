#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ergocert/analytic.hpp"
#include "ergocert/certify.hpp"
#include "ergocert/ergotropy.hpp"
#include "test_support.hpp"

using namespace ergocert;

namespace {

FeasibleSetSpec complete_pauli_spec(const DensityMatrix& rho, int n) {
  FeasibleSetSpec spec;
  spec.dim = static_cast<int>(rho.dim());
  for (const auto& p : hierarchical_order(n, 99)) {
    spec.add_pauli(p, expectation(rho.matrix, p));
  }
  return spec;
}

}  // namespace

TEST_CASE("step one with no information returns the maximally mixed state") {
  FeasibleSetSpec spec;
  spec.dim = 2;
  const DensityMatrix rho =
      step_one_select_state(spec, StepOneObjective::min_purity());
  CHECK((rho.matrix - Eigen::MatrixXcd::Identity(2, 2) / 2.0)
            .cwiseAbs()
            .maxCoeff() < 1e-5);
}

TEST_CASE("step one under x and z data returns the Bloch midpoint") {
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_pauli(parse_pauli("X"), 0.6);
  spec.add_pauli(parse_pauli("Z"), -0.3);
  const DensityMatrix rho =
      step_one_select_state(spec, StepOneObjective::min_purity());
  const Eigen::MatrixXcd expected =
      0.5 * (Eigen::MatrixXcd::Identity(2, 2) + 0.6 * testsup::sigma('X') -
             0.3 * testsup::sigma('Z'));
  CHECK((rho.matrix - expected).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("informationally complete constraints pin the state") {
  std::mt19937_64 eng(41);
  const DensityMatrix truth = testsup::random_density(4, eng);
  const FeasibleSetSpec spec = complete_pauli_spec(truth, 2);
  const DensityMatrix recovered =
      step_one_select_state(spec, StepOneObjective::min_purity());
  CHECK((recovered.matrix - truth.matrix).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("tilde unitary behaviour") {
  const HamiltonianData H =
      build_spin_chain(SpinChainParams::xxz(2, 1.0, 0.5, 0.0));

  // Ground state maps to itself: nothing to extract.
  const DensityMatrix ground{H.eigenvectors.col(0) *
                             H.eigenvectors.col(0).adjoint()};
  Eigen::MatrixXcd U = build_tilde_unitary(ground, H);
  CHECK(unitarity_defect(U) < 1e-9);
  CHECK(extraction_value(ground, H, U) == doctest::Approx(0.0).epsilon(1e-9));

  // Fully degenerate spectrum: the deterministic convention still yields a
  // unitary, and on the maximally mixed state extraction is zero regardless.
  const DensityMatrix mixed{Eigen::MatrixXcd::Identity(4, 4) / 4.0};
  U = build_tilde_unitary(mixed, H);
  CHECK(unitarity_defect(U) < 1e-9);
  CHECK(extraction_value(mixed, H, U) == doctest::Approx(0.0).epsilon(1e-12));

  // On the true state the construction is the Eq. 2 optimum.
  std::mt19937_64 eng(43);
  const DensityMatrix truth = testsup::random_density(4, eng);
  U = build_tilde_unitary(truth, H);
  CHECK(extraction_value(truth, H, U) ==
        doctest::Approx(exact_ergotropy(truth, H).value).epsilon(1e-8));
}

TEST_CASE("step two on a singleton set returns the extraction value") {
  std::mt19937_64 eng(47);
  const HamiltonianData H =
      build_spin_chain(SpinChainParams::xxz(2, 1.0, 0.5, 0.0));
  const DensityMatrix truth = testsup::random_density(4, eng);
  const FeasibleSetSpec spec = complete_pauli_spec(truth, 2);
  const Eigen::MatrixXcd U = build_tilde_unitary(truth, H);
  CHECK(step_two_bound(spec, H, U) ==
        doctest::Approx(exact_ergotropy(truth, H).value).epsilon(1e-5));

  // Identity unitary: the objective is identically zero.
  CHECK(std::abs(step_two_bound(spec, H,
                                Eigen::MatrixXcd::Identity(4, 4))) < 1e-7);
}

TEST_CASE("maximally mixed witness forces a nonpositive step-two value") {
  const HamiltonianData H = HamiltonianData::from_matrix(testsup::sigma('Z'));
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_pauli(parse_pauli("Z"), 0.0);
  std::mt19937_64 eng(53);
  const Eigen::MatrixXcd U = testsup::haar_unitary(2, eng);
  CHECK(step_two_bound(spec, H, U) <= 1e-9);
}

TEST_CASE("certify recovers the exact ergotropy with complete information") {
  const HamiltonianData H =
      build_spin_chain(SpinChainParams::xxz(3, 1.0, 0.5, 0.0));
  const DensityMatrix ghz = make_reference_state(StateKind::GHZ, 3);
  const FeasibleSetSpec spec = complete_pauli_spec(ghz, 3);
  const CertificationResult result = certify(spec, H);
  const double exact = exact_ergotropy(ghz, H).value;
  CHECK(std::abs(result.bound - exact) < 1e-5);
  CHECK(result.bound <= exact + 1e-6);
}

TEST_CASE("severe incompleteness clamps the bound to zero") {
  const HamiltonianData H = HamiltonianData::from_matrix(testsup::sigma('Z'));
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_pauli(parse_pauli("Z"), 0.0);
  const CertificationResult result = certify(spec, H);
  CHECK(result.raw_min <= 1e-9);
  CHECK(result.bound == 0.0);
  CHECK(result.bound == std::max(result.raw_min, 0.0));
}

TEST_CASE("energy projector constraints certify the incoherent ergotropy") {
  std::mt19937_64 eng(59);
  const HamiltonianData H =
      HamiltonianData::from_matrix(testsup::random_hermitian(4, eng));
  const DensityMatrix truth = testsup::random_density(4, eng);

  FeasibleSetSpec spec;
  spec.dim = 4;
  Eigen::VectorXd populations(4);
  for (int i = 0; i < 4; ++i) {
    const Eigen::MatrixXcd projector =
        H.eigenvectors.col(i) * H.eigenvectors.col(i).adjoint();
    const double p = (projector * truth.matrix).trace().real();
    populations(i) = p;
    spec.add_observable(projector, p);
  }
  const CertificationResult result = certify(spec, H);
  const double incoherent = dephase_incoherent(truth, H).second;
  CHECK(result.bound == doctest::Approx(incoherent).epsilon(1e-6));
  CHECK(result.bound ==
        doctest::Approx(energy_basis_bound(populations, H.energies))
            .epsilon(1e-6));
}

TEST_CASE("monotone session base case matches certify") {
  const HamiltonianData H =
      build_spin_chain(SpinChainParams::xxz(2, 1.0, 0.5, 0.0));
  const DensityMatrix ghz = make_reference_state(StateKind::GHZ, 2);
  FeasibleSetSpec spec;
  spec.dim = 4;
  const auto order = hierarchical_order(2, 7);
  for (int i = 0; i < 4; ++i) {
    spec.add_pauli(order[static_cast<std::size_t>(i)],
                   expectation(ghz.matrix, order[static_cast<std::size_t>(i)]));
  }
  MonotoneSession session;
  const CertificationResult monotone = certify_monotone(session, spec, H);
  const CertificationResult plain = certify(spec, H);
  CHECK(monotone.bound == doctest::Approx(plain.bound).epsilon(1e-9));
  CHECK(session.history.size() == 1);
}

TEST_CASE("nested chains never lose ground") {
  std::mt19937_64 eng(61);
  const HamiltonianData H =
      build_spin_chain(SpinChainParams::xxz(2, 1.0, 0.5, 0.0));
  const DensityMatrix truth = testsup::random_density(4, eng);
  const auto order = hierarchical_order(2, 71);

  MonotoneSession session;
  double previous = -1e300;
  FeasibleSetSpec spec;
  spec.dim = 4;
  for (const auto& p : order) {
    spec.add_pauli(p, expectation(truth.matrix, p));
    const CertificationResult result = certify_monotone(session, spec, H);
    CHECK(result.bound >= previous - 1e-9);
    previous = result.bound;
  }
  CHECK(previous ==
        doctest::Approx(exact_ergotropy(truth, H).value).epsilon(1e-5));
}

TEST_CASE("non-nested constraint lists are rejected") {
  const HamiltonianData H = HamiltonianData::from_matrix(testsup::sigma('Z'));
  FeasibleSetSpec first;
  first.dim = 2;
  first.add_pauli(parse_pauli("Z"), 0.25);
  MonotoneSession session;
  certify_monotone(session, first, H);

  FeasibleSetSpec changed;
  changed.dim = 2;
  changed.add_pauli(parse_pauli("Z"), 0.5);
  try {
    certify_monotone(session, changed, H);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNestedConstraints);
  }
}

TEST_CASE("shrinking epsilons never loosen the fixed-unitary bound") {
  std::mt19937_64 eng(67);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  const HamiltonianData H =
      build_spin_chain(SpinChainParams::xxz(2, 1.0, 0.5, 0.0));
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix truth = testsup::random_density(4, eng);
    const auto order = hierarchical_order(2, 100 + rep);
    const double eps = 0.2;

    FeasibleSetSpec wide, narrow;
    wide.dim = narrow.dim = 4;
    wide.provenance = narrow.provenance = Provenance::Estimated;
    for (int i = 0; i < 6; ++i) {
      const auto& p = order[static_cast<std::size_t>(i)];
      const double target =
          expectation(truth.matrix, p) + 0.25 * eps * noise(eng);
      wide.add_pauli(p, target, eps);
      narrow.add_pauli(p, target, 0.5 * eps);
    }
    const DensityMatrix rho_tilde =
        step_one_select_state(wide, StepOneObjective::min_purity());
    const Eigen::MatrixXcd U = build_tilde_unitary(rho_tilde, H);
    const double wide_value = step_two_bound(wide, H, U);
    const double narrow_value = step_two_bound(narrow, H, U);
    CHECK(narrow_value >= wide_value - 1e-9);
  }
}

TEST_CASE("infeasible sets report a restoring epsilon") {
  const HamiltonianData H = HamiltonianData::from_matrix(testsup::sigma('Z'));
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.provenance = Provenance::Estimated;
  spec.add_pauli(parse_pauli("Z"), 0.9, 0.01);
  spec.add_pauli(parse_pauli("Z"), -0.9, 0.01);
  try {
    certify(spec, H);
    FAIL("expected throw");
  } catch (const InfeasibleSetError& e) {
    CHECK(e.advice_epsilon() > 0.8);
    CHECK(e.advice_epsilon() < 1.0);
    // Applying the advice restores feasibility.
    FeasibleSetSpec widened;
    widened.dim = 2;
    widened.provenance = Provenance::Estimated;
    for (const auto& c : spec.constraints) {
      widened.constraints.push_back(
          {c.observable, c.target, c.epsilon + e.advice_epsilon() + 1e-6});
    }
    const CertificationResult result = certify(widened, H);
    CHECK(result.bound >= 0.0);
  }
}

TEST_CASE("feasibility advice is zero for feasible sets") {
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_pauli(parse_pauli("Z"), 0.3);
  CHECK(feasibility_advice_epsilon(spec) < 1e-6);
}

TEST_CASE("qubit oracle on a singleton pure state") {
  const HamiltonianData H = HamiltonianData::from_matrix(testsup::sigma('Z'));
  FeasibleSetSpec spec;
  spec.dim = 2;
  // Bloch vector (0.6, 0, 0.8): pure state fixed by three exact values.
  spec.add_pauli(parse_pauli("X"), 0.6);
  spec.add_pauli(parse_pauli("Y"), 0.0);
  spec.add_pauli(parse_pauli("Z"), 0.8);
  const Eigen::MatrixXcd state =
      0.5 * (Eigen::MatrixXcd::Identity(2, 2) + 0.6 * testsup::sigma('X') +
             0.8 * testsup::sigma('Z'));
  const double exact = exact_ergotropy({state}, H).value;
  CHECK(qubit_minimax_oracle(spec, H, 101) ==
        doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("qubit oracle minimum sits at the y = 0 midpoint") {
  const HamiltonianData H = HamiltonianData::from_matrix(
      (Eigen::MatrixXcd(2, 2) << -0.7, 0.0, 0.0, 1.3).finished());
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_pauli(parse_pauli("X"), 0.5);
  spec.add_pauli(parse_pauli("Z"), -0.2);
  const double oracle = qubit_minimax_oracle(spec, H, 2001);
  const QubitXZBound analytic = qubit_xz_bound({0.5, -0.2, -0.7, 1.3});
  CHECK(oracle == doctest::Approx(analytic.bound).epsilon(1e-3));
}

TEST_CASE("two-step bound never exceeds the qubit oracle") {
  std::mt19937_64 eng(73);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    double x = uniform(eng), z = uniform(eng);
    const double r = std::hypot(x, z);
    if (r > 0.9) {
      x *= 0.9 / r;
      z *= 0.9 / r;
    }
    Eigen::MatrixXcd Hm = Eigen::MatrixXcd::Zero(2, 2);
    Hm(0, 0) = -1.0 + 0.3 * uniform(eng);
    Hm(1, 1) = 1.0 + 0.3 * uniform(eng);
    const HamiltonianData H = HamiltonianData::from_matrix(Hm);
    FeasibleSetSpec spec;
    spec.dim = 2;
    spec.add_pauli(parse_pauli("X"), x);
    spec.add_pauli(parse_pauli("Z"), z);
    const double bound = certify(spec, H).bound;
    const double oracle = qubit_minimax_oracle(spec, H, 801);
    CHECK(bound <= oracle + 1e-3);
  }
}

TEST_CASE("qubit oracle rejects empty grids") {
  const HamiltonianData H = HamiltonianData::from_matrix(testsup::sigma('Z'));
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_pauli(parse_pauli("X"), 0.9);
  spec.add_pauli(parse_pauli("Z"), 0.9);  // outside the Bloch ball
  try {
    qubit_minimax_oracle(spec, H, 101);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyGrid);
  }
}

TEST_CASE("observables outside [-1, 1] are rescaled on entry") {
  FeasibleSetSpec spec;
  spec.dim = 2;
  spec.add_observable(3.0 * testsup::sigma('Z'), 1.5);
  REQUIRE(spec.constraints.size() == 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      spec.constraints[0].observable, Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
  CHECK(spec.constraints[0].target == doctest::Approx(0.5));
  // The rescaled constraint carves out the same states.
  const DensityMatrix rho =
      step_one_select_state(spec, StepOneObjective::min_purity());
  CHECK((rho.matrix * testsup::sigma('Z')).trace().real() ==
        doctest::Approx(0.5).epsilon(1e-6));
}
