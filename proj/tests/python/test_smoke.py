"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import ergocert


def xxz(n=2):
    return ergocert.build_spin_chain(n, j1=1.0, jy=1.0, dz=0.5)


def test_version():
    assert ergocert.__version__


def test_spin_chain_spectrum():
    ham = xxz(2)
    assert np.allclose(ham.energies, [-1.5, -0.5, -0.5, 2.5])
    assert ham.matrix.shape == (4, 4)


def test_pauli_helpers():
    x = ergocert.pauli_matrix("X")
    assert np.allclose(x, [[0, 1], [1, 0]])
    assert ergocert.pauli_weight("XIZY") == 3
    order = ergocert.hierarchical_order(2, seed=7)
    assert len(order) == 15
    assert order == ergocert.hierarchical_order(2, seed=7)
    with pytest.raises(ergocert.ErgocertError):
        ergocert.pauli_matrix("XQ")


def test_exact_ergotropy_of_ghz():
    ham = xxz(2)
    rho = ergocert.reference_state("ghz", 2)
    report = ergocert.ergotropy(rho, ham)
    assert report.value >= 0
    value = ergocert.extraction_value(rho, ham, report.optimal_unitary)
    assert value == pytest.approx(report.value, abs=1e-9)
    assert report.value >= ergocert.incoherent_ergotropy(rho, ham) - 1e-9


def test_certify_complete_information_recovers_exact():
    ham = xxz(2)
    rho = ergocert.reference_state("ghz", 2)
    constraints = [
        (label, ergocert.expectation(rho, label), 0.0)
        for label in ergocert.hierarchical_order(2, seed=1)
    ]
    result = ergocert.certify(ham, constraints)
    exact = ergocert.ergotropy(rho, ham).value
    assert result["bound"] == pytest.approx(exact, abs=1e-5)
    assert result["bound"] <= exact + 1e-6


def test_min_purity_state():
    state = ergocert.min_purity_state(2, [("X", 0.6, 0.0), ("Z", -0.3, 0.0)])
    expected = 0.5 * (
        np.eye(2)
        + 0.6 * ergocert.pauli_matrix("X")
        - 0.3 * ergocert.pauli_matrix("Z")
    )
    assert np.allclose(state, expected, atol=1e-5)


def test_hoeffding_and_shots():
    eps = ergocert.hoeffding_epsilon(16384, 60, 0.003)
    assert 2 * math.exp(-16384 * eps**2 / 2) == pytest.approx(0.003 / 60, abs=1e-12)
    rho = ergocert.reference_state("product", 1)
    assert ergocert.simulate_shots(rho, "Z", 100, seed=3) == 1.0


def test_analytic_bounds():
    bound, gain = ergocert.qubit_xz_bound(1.0, 0.0, -1.0, 1.0)
    assert bound == pytest.approx(1.0)
    assert gain == pytest.approx(1.0)
    value = ergocert.energy_basis_bound([0.3, 0.7], [0.0, 1.0])
    assert value == pytest.approx(0.4)


def test_gibbs_state_commutes():
    ham = xxz(2)
    rho = ergocert.reference_state("gibbs", 2, ham, param=-1.0)
    comm = rho @ ham.matrix - ham.matrix @ rho
    assert np.abs(comm).max() < 1e-9
