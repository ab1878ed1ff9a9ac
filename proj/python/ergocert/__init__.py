"""Certified lower bounds on ergotropy from partial measurement data."""

from ._core import (
    ErgocertError,
    ErgotropyReport,
    Hamiltonian,
    __version__,
    build_spin_chain,
    certify,
    energy_basis_bound,
    ergotropy,
    expectation,
    extraction_value,
    hierarchical_order,
    hoeffding_epsilon,
    incoherent_ergotropy,
    load_records,
    min_purity_state,
    pauli_matrix,
    pauli_weight,
    qubit_xz_bound,
    reference_state,
    simulate_shots,
)

__all__ = [
    "ErgocertError",
    "ErgotropyReport",
    "Hamiltonian",
    "__version__",
    "build_spin_chain",
    "certify",
    "energy_basis_bound",
    "ergotropy",
    "expectation",
    "extraction_value",
    "hierarchical_order",
    "hoeffding_epsilon",
    "incoherent_ergotropy",
    "load_records",
    "min_purity_state",
    "pauli_matrix",
    "pauli_weight",
    "qubit_xz_bound",
    "reference_state",
    "simulate_shots",
]
