"""SU(2) and SU(1,1) generator triples on a two-mode Fock space.

The SU(2) (Schwinger) generators exchange quanta between the modes:

    S_x = (a'b + ab')/2,  S_y = (a'b - ab')/2i,  S_z = (a'a - b'b)/2

and satisfy [S_x, S_y] = i S_z cyclically.  The SU(1,1) generators create
and destroy pairs:

    K_x = (a'b' + ab)/2,  K_y = (a'b' - ab)/2i,  K_z = (a'a + b'b + 1)/2

with [K_x, K_y] = -i K_z, [K_y, K_z] = i K_x, [K_z, K_x] = i K_y.

All generators are built by composing the ladder operators from
:mod:`fockwitness.fock`, so there is a single source of truth for matrix
elements.  In the truncated space the commutation relations hold exactly
only away from the occupation ceiling; :func:`algebra_residual` measures
the defect on the "safe" interior subspace (every occupation at most
``cutoff - 3``, one ladder rung of margin per factor in a quadratic
product).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .fock import (
    FockSpace,
    LinearOperator,
    annihilation_op,
    compose,
    identity_op,
    linear_combine,
    number_op,
)

SU2 = "su2"
SU11 = "su11"


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """An x/y/z generator triple of one of the two algebras."""

    kind: str
    x: LinearOperator
    y: LinearOperator
    z: LinearOperator

    @property
    def space(self) -> FockSpace:
        return self.x.space


def _require_two_modes(space: FockSpace) -> None:
    if space.modes != 2:
        raise ValueError(f"generators need a two-mode space, got {space.modes} modes")


def su2_generators(space: FockSpace) -> GeneratorSet:
    """Schwinger angular-momentum triple built from the two mode ladders."""
    _require_two_modes(space)
    a = annihilation_op(space, 0)
    b = annihilation_op(space, 1)
    ad, bd = a.dagger(), b.dagger()
    ad_b = compose(ad, b)
    a_bd = compose(a, bd)
    sx = linear_combine([0.5, 0.5], [ad_b, a_bd])
    sy = linear_combine([1 / 2j, -1 / 2j], [ad_b, a_bd])
    sz = linear_combine([0.5, -0.5], [number_op(space, 0), number_op(space, 1)])
    return GeneratorSet(SU2, sx, sy, sz)


def su11_generators(space: FockSpace) -> GeneratorSet:
    """Pair creation/annihilation triple; K_z is diagonal."""
    _require_two_modes(space)
    a = annihilation_op(space, 0)
    b = annihilation_op(space, 1)
    ab = compose(a, b)
    ad_bd = ab.dagger()
    kx = linear_combine([0.5, 0.5], [ad_bd, ab])
    ky = linear_combine([1 / 2j, -1 / 2j], [ad_bd, ab])
    kz = linear_combine(
        [0.5, 0.5, 0.5],
        [number_op(space, 0), number_op(space, 1), identity_op(space)],
    )
    return GeneratorSet(SU11, kx, ky, kz)


def k_phi(space: FockSpace, phi: float) -> LinearOperator:
    """Phased pair quadrature (exp(i phi) a'b' + exp(-i phi) ab)/2.

    Hermitian for every ``phi``; ``phi = 0`` gives K_x.  Note that
    ``phi = pi/2`` gives -K_y (the i factors compound), but variances,
    which is what the threshold test consumes, are unaffected by the sign.
    """
    _require_two_modes(space)
    ab = compose(annihilation_op(space, 0), annihilation_op(space, 1))
    return linear_combine([0.5 * np.exp(1j * phi), 0.5 * np.exp(-1j * phi)], [ab.dagger(), ab])


def commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """AB - BA."""
    return compose(a, b) - compose(b, a)


def safe_subspace_projector(space: FockSpace) -> LinearOperator:
    """Diagonal projector onto occupations <= cutoff - 3 in every mode.

    That is one ladder rung of margin per factor in a quadratic product,
    which is exactly what a commutator of the generators consumes.
    """
    if any(c < 4 for c in space.cutoffs):
        raise ValueError(f"cutoffs {space.cutoffs} leave no safe subspace (need >= 4)")
    diag = np.ones(space.dim)
    for i, occ in enumerate(space.all_occupations()):
        if any(n > c - 3 for n, c in zip(occ, space.cutoffs)):
            diag[i] = 0.0
    return LinearOperator(space, sp.diags(diag, 0, dtype=np.complex128).tocsr())


def algebra_residual(gens: GeneratorSet, space: FockSpace | None = None, *,
                     restrict: bool = True) -> float:
    """Worst-case commutation defect, by default on the safe subspace.

    Returns the maximum absolute entry of P([X, Y] -+ iZ)P over the three
    cyclic relations, where P projects onto the safe subspace (all
    occupations at most ``cutoff - 3``).  There it is numerically zero;
    with ``restrict=False`` the truncation edge is included and the defect
    grows like the cutoff (useful as a diagnostic of the edge effect).
    """
    if space is not None and space != gens.space:
        raise ValueError("generator set was built on a different space")
    p = (safe_subspace_projector(gens.space) if restrict
         else identity_op(gens.space))
    if gens.kind == SU2:
        relations = [
            (gens.x, gens.y, 1j, gens.z),
            (gens.y, gens.z, 1j, gens.x),
            (gens.z, gens.x, 1j, gens.y),
        ]
    elif gens.kind == SU11:
        relations = [
            (gens.x, gens.y, -1j, gens.z),
            (gens.y, gens.z, 1j, gens.x),
            (gens.z, gens.x, 1j, gens.y),
        ]
    else:
        raise ValueError(f"unknown generator kind {gens.kind!r}")
    worst = 0.0
    for lhs_a, lhs_b, sign, rhs in relations:
        defect = commutator(lhs_a, lhs_b) - sign * rhs
        projected = compose(compose(p, defect), p).matrix
        if projected.nnz:
            worst = max(worst, float(abs(projected).max()))
    return worst
