"""Entanglement witnesses for multimode bosonic states in truncated Fock space.

The package evaluates uncertainty-relation and moment-based separability
criteria as signed-margin reports and cross-checks every verdict against a
brute-force partial-transpose spectral oracle.

Layering, bottom up: :mod:`~fockwitness.fock` (spaces, states, ladder
operators, partial transpose/trace), :mod:`~fockwitness.su` (SU(2) and
SU(1,1) generator triples), :mod:`~fockwitness.moments` (expectations,
variances, leakage guard), :mod:`~fockwitness.states` (state families),
:mod:`~fockwitness.witnesses` (the criteria), :mod:`~fockwitness.jacobi` +
:mod:`~fockwitness.ppt` (the eigensolver and the oracle), and
:mod:`~fockwitness.cli` (the ``fockwitness`` command).
"""

__version__ = "0.1.0"

from .fock import (
    DensityOperator,
    FockSpace,
    LinearOperator,
    StateVector,
    annihilation_op,
    as_density,
    creation_op,
    density_from_pure,
    identity_op,
    make_space,
    mix,
    number_op,
    partial_trace,
    partial_transpose,
    partial_transpose_op,
    purity,
)
from .jacobi import backend_name, jacobi_eigh
from .moments import (
    LeakageError,
    MomentValue,
    check_leakage,
    expectation,
    pt_expectation,
    truncation_leakage,
    uncertainty_product,
    variance,
)
from .ppt import (
    CrossCheck,
    OracleCapError,
    Spectrum,
    cross_check,
    hermitian_eigenvalues,
    negativity,
    ppt_min_eigenvalue,
    ppt_spectrum,
)
from .states import (
    StateSpec,
    bell_su2,
    bell_su11,
    build_state,
    coherent_product,
    fock,
    random_pure,
    random_separable,
    spec_from_dict,
    three_mode_hz,
    tmsv,
)
from .su import (
    GeneratorSet,
    algebra_residual,
    commutator,
    k_phi,
    su2_generators,
    su11_generators,
)
from .witnesses import (
    WitnessReport,
    evaluate_all,
    factorization_gap,
    hz_su2,
    hz_su11,
    hz_three_mode,
    k_phi_variance,
    pt_su2_product,
    pt_su11_product,
    run_witness,
    su2_uncertainty,
    su11_uncertainty,
    sum_variance,
)

__all__ = [
    "__version__",
    "DensityOperator",
    "FockSpace",
    "LinearOperator",
    "StateVector",
    "annihilation_op",
    "as_density",
    "creation_op",
    "density_from_pure",
    "identity_op",
    "make_space",
    "mix",
    "number_op",
    "partial_trace",
    "partial_transpose",
    "partial_transpose_op",
    "purity",
    "backend_name",
    "jacobi_eigh",
    "LeakageError",
    "MomentValue",
    "check_leakage",
    "expectation",
    "pt_expectation",
    "truncation_leakage",
    "uncertainty_product",
    "variance",
    "CrossCheck",
    "OracleCapError",
    "Spectrum",
    "cross_check",
    "hermitian_eigenvalues",
    "negativity",
    "ppt_min_eigenvalue",
    "ppt_spectrum",
    "StateSpec",
    "bell_su2",
    "bell_su11",
    "build_state",
    "coherent_product",
    "fock",
    "random_pure",
    "random_separable",
    "spec_from_dict",
    "three_mode_hz",
    "tmsv",
    "GeneratorSet",
    "algebra_residual",
    "commutator",
    "k_phi",
    "su2_generators",
    "su11_generators",
    "WitnessReport",
    "evaluate_all",
    "factorization_gap",
    "hz_su2",
    "hz_su11",
    "hz_three_mode",
    "k_phi_variance",
    "pt_su2_product",
    "pt_su11_product",
    "run_witness",
    "su2_uncertainty",
    "su11_uncertainty",
    "sum_variance",
]
