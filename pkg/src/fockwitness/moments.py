"""Expectation values, variances, and the truncation-leakage guard.

All witness bounds downstream reduce to first and second moments of the
generators, so this module is the single funnel through which states meet
operators.  Two policies live here:

* Hermitian bookkeeping: the expectation of a Hermitian operator must be
  real; we keep the tiny imaginary residual on record instead of silently
  discarding it.
* Leakage guard: moments computed in a truncated space are only trustworthy
  if the state carries negligible population near the occupation ceiling.
  :func:`truncation_leakage` measures that population and
  :func:`check_leakage` warns or raises when it is too large.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .fock import (
    DensityOperator,
    FockSpace,
    LinearOperator,
    SPECTRAL_TOL,
    STRUCTURAL_TOL,
    StateVector,
    identity_op,
    partial_transpose,
    transpose_mode_matrix,
)

#: population above which a truncated-moment evaluation emits a warning
LEAKAGE_WARN = 1e-8
#: population above which it refuses to proceed
LEAKAGE_ERROR = 1e-4


class LeakageError(ValueError):
    """Raised when a state carries too much population near the cutoff."""


@dataclass(frozen=True)
class MomentValue:
    """An expectation value with its Hermitian bookkeeping.

    ``imag_residual`` is ``|imag(value)|``; when the operator was Hermitian
    it must be at numerical-noise level, and that is enforced here.
    """

    value: complex
    hermitian_input: bool
    imag_residual: float

    def __post_init__(self):
        if self.hermitian_input and self.imag_residual > SPECTRAL_TOL:
            raise ValueError(
                f"Hermitian expectation has imaginary part {self.imag_residual:.3e}"
            )

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def _require_same_space(state, op) -> None:
    if state.space != op.space:
        raise ValueError("state and operator live on different Fock spaces")


def _trace_product(rho_matrix: np.ndarray, op: LinearOperator) -> complex:
    # Tr[rho O] = sum_{ij} rho_ij O_ji, evaluated on O's sparsity pattern
    return complex(op.matrix.T.multiply(rho_matrix).sum())


def _wrap(value: complex, op: LinearOperator) -> MomentValue:
    hermitian = op.is_hermitian()
    return MomentValue(value, hermitian, abs(value.imag))


def expectation(
    state: StateVector | DensityOperator, op: LinearOperator
) -> MomentValue:
    """⟨psi|O|psi⟩ for kets, Tr[rho O] for density operators."""
    _require_same_space(state, op)
    if isinstance(state, StateVector):
        value = complex(np.vdot(state.amplitudes, op.apply(state)))
    else:
        value = _trace_product(state.matrix, op)
    return _wrap(value, op)


def variance(state: StateVector | DensityOperator, op: LinearOperator) -> float:
    """⟨O²⟩ − ⟨O⟩² for a Hermitian operator.

    Computed in centered form, ⟨(O − ⟨O⟩)²⟩, which stays accurate where
    the textbook difference cancels catastrophically (eigenstates must
    give 0, not ~1e−17, because downstream square roots amplify the
    noise).  Tiny negative results within ``SPECTRAL_TOL`` of zero are
    clamped to 0; anything more negative is an arithmetic failure and
    raises.
    """
    _require_same_space(state, op)
    if not op.is_hermitian():
        raise ValueError("variance needs a Hermitian operator")
    if isinstance(state, StateVector):
        image = op.apply(state)
        mean = float(np.vdot(state.amplitudes, image).real)
        centered = image - mean * state.amplitudes
        value = float(np.vdot(centered, centered).real)
    else:
        mean = _trace_product(state.matrix, op).real
        shifted = op - mean * identity_op(op.space)
        value = _trace_product(state.matrix, shifted @ shifted).real
    if value < -SPECTRAL_TOL:
        raise ValueError(f"variance {value:.3e} is negative beyond tolerance")
    return max(value, 0.0)


def uncertainty_product(
    state: StateVector | DensityOperator, a: LinearOperator, b: LinearOperator
) -> float:
    """ΔA·ΔB, the product of standard deviations."""
    return sqrt(variance(state, a)) * sqrt(variance(state, b))


def pt_expectation(rho: DensityOperator, op: LinearOperator, mode: int) -> MomentValue:
    """Tr[rho^{T_mode} O], with the transpose-duality identity checked.

    The same number must come out as Tr[rho O^{T_mode}]; both sides are
    evaluated and a disagreement beyond ``STRUCTURAL_TOL`` raises, since it
    would mean the index permutation is broken.
    """
    _require_same_space(rho, op)
    rho.space.check_mode(mode)
    direct = _trace_product(partial_transpose(rho, mode), op)
    op_t = transpose_mode_matrix(op.matrix.toarray(), op.space, mode)
    dual = complex(np.sum(rho.matrix.T * op_t))
    if abs(direct - dual) > STRUCTURAL_TOL:
        raise ArithmeticError(
            f"partial-transpose duality violated: {direct!r} vs {dual!r}"
        )
    return _wrap(direct, op)


# ---------------------------------------------------------------------------
# leakage guard
# ---------------------------------------------------------------------------


def _edge_mask(space: FockSpace) -> np.ndarray:
    """Boolean mask of basis states with any occupation >= cutoff - 2."""
    mask = np.zeros(space.dim, dtype=bool)
    for i, occ in enumerate(space.all_occupations()):
        if any(n >= c - 2 for n, c in zip(occ, space.cutoffs)):
            mask[i] = True
    return mask


def truncation_leakage(state: StateVector | DensityOperator) -> float:
    """Population on basis states within two rungs of the occupation ceiling.

    This is the mass whose quadratic moments the truncation corrupts; a
    state supported strictly below the edge band has every generator moment
    exact.
    """
    mask = _edge_mask(state.space)
    if isinstance(state, StateVector):
        return float(np.sum(np.abs(state.amplitudes[mask]) ** 2))
    return float(np.sum(state.matrix.diagonal().real[mask]))


def check_leakage(
    state: StateVector | DensityOperator,
    warn: float = LEAKAGE_WARN,
    error: float = LEAKAGE_ERROR,
) -> float:
    """Measure leakage and enforce the guard policy.

    Returns the leakage; warns above ``warn`` and raises
    :class:`LeakageError` above ``error``.
    """
    leakage = truncation_leakage(state)
    if leakage > error:
        raise LeakageError(
            f"truncation leakage {leakage:.3e} exceeds the error threshold {error:.1e}"
        )
    if leakage > warn:
        warnings.warn(
            f"truncation leakage {leakage:.3e} exceeds {warn:.1e}; "
            "moments may be unreliable",
            stacklevel=2,
        )
    return leakage
