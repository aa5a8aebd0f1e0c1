"""Brute-force spectral oracle for the partial-transpose test.

Deliberately independent of the moment-level machinery: the density matrix
is partially transposed as an index permutation and diagonalized in full,
so a negative eigenvalue here is ground truth against which the witnesses
are cross-checked.  Every spectrum is validated on the spot (trace match,
reconstruction residual) before anything downstream consumes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .fock import (
    DensityOperator,
    SPECTRAL_TOL,
    StateVector,
    as_density,
    partial_transpose,
)
from .jacobi import JACOBI_TOL, MAX_SWEEPS, jacobi_eigh
from .witnesses import (
    BOUNDARY_TOL,
    SEPARABILITY,
    VIOLATED,
    WitnessReport,
    evaluate_all,
)

#: refuse O(dim³) spectra above this dimension by default
ORACLE_MAX_DIM = 1024
#: max-entry reconstruction error allowed for a spectrum
RESIDUAL_TOL = 1e-9
#: eigenvalue-sum vs trace agreement
TRACE_TOL = 1e-10
#: negativity at or below this counts as "no negative part"
NEGATIVITY_FLOOR = 1e-10


class OracleCapError(ValueError):
    """Raised when a matrix exceeds the configured oracle dimension cap."""


@dataclass(frozen=True)
class Spectrum:
    """A validated full spectrum: ascending eigenvalues + reconstruction error."""

    eigenvalues: np.ndarray = field(repr=False)
    residual: float

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def negativity(self) -> float:
        w = self.eigenvalues
        return float(-w[w < 0.0].sum())


def hermitian_eigenvalues(
    matrix: np.ndarray, max_dim: int = ORACLE_MAX_DIM
) -> Spectrum:
    """Full spectrum of a Hermitian matrix, validated before return.

    Checks, in order: Hermiticity of the input (within ``SPECTRAL_TOL``),
    the dimension cap, the eigenvalue-sum-vs-trace identity, and the
    max-entry reconstruction error ‖A − VΛV†‖ ≤ ``RESIDUAL_TOL``.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    defect = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if defect > SPECTRAL_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    if a.shape[0] > max_dim:
        raise OracleCapError(
            f"dimension {a.shape[0]} exceeds the oracle cap {max_dim}; "
            "reduce the cutoffs or raise the cap explicitly"
        )
    h = 0.5 * (a + a.conj().T)
    eigenvalues, vectors = jacobi_eigh(h, JACOBI_TOL, MAX_SWEEPS)
    trace_gap = abs(float(eigenvalues.sum()) - float(np.trace(h).real))
    if trace_gap > TRACE_TOL * max(1.0, abs(float(np.trace(h).real))):
        raise ArithmeticError(f"eigenvalue sum misses the trace by {trace_gap:.3e}")
    recon = (vectors * eigenvalues) @ vectors.conj().T
    residual = float(np.max(np.abs(h - recon)))
    if residual > RESIDUAL_TOL:
        raise ArithmeticError(f"spectrum reconstruction residual {residual:.3e}")
    return Spectrum(np.array(eigenvalues, copy=True), residual)


def ppt_spectrum(
    state: StateVector | DensityOperator, mode: int = 1, max_dim: int = ORACLE_MAX_DIM
) -> Spectrum:
    """Spectrum of the partial transpose on ``mode`` (default: second mode)."""
    rho = as_density(state)
    return hermitian_eigenvalues(partial_transpose(rho, mode), max_dim)


def ppt_min_eigenvalue(
    state: StateVector | DensityOperator, mode: int = 1, max_dim: int = ORACLE_MAX_DIM
) -> float:
    """Minimum eigenvalue of the partial transpose; negative ⇒ entangled."""
    return ppt_spectrum(state, mode, max_dim).min


def negativity(
    state: StateVector | DensityOperator, mode: int = 1, max_dim: int = ORACLE_MAX_DIM
) -> float:
    """Sum of |negative eigenvalues| of the partial transpose; 0 iff PPT."""
    return ppt_spectrum(state, mode, max_dim).negativity


@dataclass(frozen=True)
class CrossCheck:
    """Witness verdicts vs the spectral ground truth for one state.

    A separability-witness violation is expected to come with negativity
    > 0; a violation on a PPT state is recorded as a discrepancy (data,
    not an exception — it flags either a numerical fault or a witness
    whose stated bound is not actually implied by separability).  The
    converse direction is deliberately not asserted, since each witness is
    only a sufficient condition.
    """

    negativity: float
    min_eigenvalue: float
    violated: tuple[str, ...]
    discrepancies: tuple[str, ...]
    reports: tuple[WitnessReport, ...] = field(repr=False)

    @property
    def consistent(self) -> bool:
        return not self.discrepancies


def cross_check(
    state: StateVector | DensityOperator,
    mode: int = 1,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    max_dim: int = ORACLE_MAX_DIM,
    **witness_kwargs: Any,
) -> CrossCheck:
    """Run every witness and compare violations against the oracle."""
    if state.space.modes != 2:
        raise ValueError("cross_check consumes two-mode states")
    spectrum = ppt_spectrum(state, mode, max_dim)
    reports = evaluate_all(state, boundary_tol=boundary_tol, **witness_kwargs)
    violated = tuple(
        r.name for r in reports if r.kind == SEPARABILITY and r.verdict == VIOLATED
    )
    neg = spectrum.negativity
    discrepancies = violated if (violated and neg <= NEGATIVITY_FLOOR) else ()
    return CrossCheck(
        negativity=neg,
        min_eigenvalue=spectrum.min,
        violated=violated,
        discrepancies=discrepancies,
        reports=tuple(reports),
    )
