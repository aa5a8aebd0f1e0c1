"""Truncated multimode Fock space: basis indexing, states, operators.

Everything downstream (generator algebras, moment evaluation, witness
reports, the spectral oracle) works on the objects defined here.  The
representation is deliberately plain:

* basis states are occupation tuples, indexed row-major;
* operators are sparse complex matrices (ladder operators have O(dim)
  nonzeros);
* kets are dense complex vectors, density matrices dense complex arrays.

Truncation policy: operators are the exact projection of their
infinite-dimensional counterparts onto the truncated basis, with no
renormalization.  Correctness of truncated moments is the job of the
leakage guard in :mod:`fockwitness.moments`, not of the operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

#: structural identities (adjoints, index round-trips, trace preservation)
STRUCTURAL_TOL = 1e-12
#: spectral quantities (eigenvalues, PSD checks)
SPECTRAL_TOL = 1e-10
#: refuse to build spaces larger than this by default
DEFAULT_MAX_DIM = 4096


@dataclass(frozen=True)
class FockSpace:
    """A truncated multimode bosonic Hilbert space.

    ``cutoffs[m]`` is the dimension of mode ``m``: occupations run over
    ``0 .. cutoffs[m] - 1``.  Basis indexing is row-major over occupation
    tuples, so for cutoffs ``(4, 4)`` the tuple ``(2, 3)`` has index 11.
    """

    cutoffs: tuple[int, ...]

    @property
    def modes(self) -> int:
        return len(self.cutoffs)

    @property
    def dim(self) -> int:
        return math.prod(self.cutoffs)

    def basis_index(self, occupations: Sequence[int]) -> int:
        """Row-major index of an occupation tuple."""
        if len(occupations) != self.modes:
            raise ValueError(
                f"expected {self.modes} occupations, got {len(occupations)}"
            )
        index = 0
        for n, cutoff in zip(occupations, self.cutoffs):
            if not 0 <= n < cutoff:
                raise ValueError(f"occupation {n} out of range [0, {cutoff})")
            index = index * cutoff + n
        return index

    def occupations_of(self, index: int) -> tuple[int, ...]:
        """Inverse of :meth:`basis_index`."""
        if not 0 <= index < self.dim:
            raise ValueError(f"basis index {index} out of range [0, {self.dim})")
        occ = []
        for cutoff in reversed(self.cutoffs):
            index, n = divmod(index, cutoff)
            occ.append(n)
        return tuple(reversed(occ))

    def all_occupations(self) -> Iterable[tuple[int, ...]]:
        """All occupation tuples in index order."""
        return (self.occupations_of(i) for i in range(self.dim))

    def check_mode(self, mode: int) -> None:
        if not 0 <= mode < self.modes:
            raise ValueError(f"mode {mode} out of range [0, {self.modes})")


def make_space(
    modes: int, cutoffs: Sequence[int], max_dim: int = DEFAULT_MAX_DIM
) -> FockSpace:
    """Build a :class:`FockSpace` after validating mode count and cutoffs.

    Each cutoff must be at least 2 (a one-dimensional mode carries no ladder
    structure) and the total dimension must not exceed ``max_dim``.
    """
    if modes < 1:
        raise ValueError("need at least one mode")
    if len(cutoffs) != modes:
        raise ValueError(f"expected {modes} cutoffs, got {len(cutoffs)}")
    if any(c < 2 for c in cutoffs):
        raise ValueError(f"every cutoff must be >= 2, got {tuple(cutoffs)}")
    dim = math.prod(cutoffs)
    if dim > max_dim:
        raise ValueError(f"dimension {dim} exceeds the configured maximum {max_dim}")
    return FockSpace(tuple(int(c) for c in cutoffs))


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized pure state over the Fock basis."""

    space: FockSpace
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.shape != (self.space.dim,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({self.space.dim},)"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > STRUCTURAL_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1 beyond tolerance")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, space: FockSpace, amplitudes: np.ndarray) -> "StateVector":
        """Normalize ``amplitudes`` and wrap them as a state."""
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(space, amps / norm)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A mixed state: Hermitian, unit-trace complex matrix on the Fock basis.

    Hermiticity and trace are validated on construction.  Positivity is
    guaranteed by the constructors in this package (outer products and
    convex mixtures) and audited by the spectral oracle tests rather than
    recomputed on every instantiation.
    """

    space: FockSpace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128, copy=True)
        dim = self.space.dim
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix has shape {mat.shape}, expected ({dim}, {dim})")
        herm_defect = np.max(np.abs(mat - mat.conj().T))
        if herm_defect > STRUCTURAL_TOL:
            raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
        trace = np.trace(mat)
        if abs(trace - 1.0) > STRUCTURAL_TOL:
            raise ValueError(f"trace {trace!r} differs from 1 beyond tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def density_from_pure(psi: StateVector) -> DensityOperator:
    """The projector |psi><psi| as a density operator."""
    mat = np.outer(psi.amplitudes, psi.amplitudes.conj())
    # outer() of a unit vector can miss trace 1 in the last bit; renormalize
    mat = 0.5 * (mat + mat.conj().T)
    mat /= np.trace(mat).real
    return DensityOperator(psi.space, mat)


def mix(weights: Sequence[float], densities: Sequence[DensityOperator]) -> DensityOperator:
    """Convex combination of density operators.

    Weights must be nonnegative and sum to 1 within ``STRUCTURAL_TOL``.
    """
    if len(weights) != len(densities) or not densities:
        raise ValueError("need matching, nonempty weights and densities")
    if any(w < 0 for w in weights):
        raise ValueError(f"negative weight in {tuple(weights)}")
    total = float(sum(weights))
    if abs(total - 1.0) > STRUCTURAL_TOL:
        raise ValueError(f"weights sum to {total!r}, expected 1")
    space = densities[0].space
    if any(d.space != space for d in densities):
        raise ValueError("densities live on different spaces")
    mat = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for w, d in zip(weights, densities):
        mat += w * d.matrix
    return DensityOperator(space, mat)


def as_density(state: StateVector | DensityOperator) -> DensityOperator:
    """Promote a pure state to its density operator; pass mixed states through."""
    if isinstance(state, StateVector):
        return density_from_pure(state)
    return state


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """A sparse complex matrix acting on the truncated Fock basis."""

    space: FockSpace
    matrix: sp.csr_matrix = field(repr=False)

    def __post_init__(self):
        dim = self.space.dim
        mat = sp.csr_matrix(self.matrix, dtype=np.complex128)
        if mat.shape != (dim, dim):
            raise ValueError(f"operator has shape {mat.shape}, expected ({dim}, {dim})")
        object.__setattr__(self, "matrix", mat)

    def dagger(self) -> "LinearOperator":
        return LinearOperator(self.space, self.matrix.conj().T.tocsr())

    def apply(self, psi: StateVector) -> np.ndarray:
        """Raw (unnormalized) image of a ket; may be the zero vector."""
        _require_same_space(self, psi)
        return self.matrix @ psi.amplitudes

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def is_hermitian(self, tol: float = SPECTRAL_TOL) -> bool:
        defect = self.matrix - self.matrix.conj().T
        return abs(defect).max() <= tol if defect.nnz else True

    # small amount of operator sugar, enough to write generator formulas
    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return compose(self, other)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        _require_same_space(self, other)
        return LinearOperator(self.space, (self.matrix + other.matrix).tocsr())

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        _require_same_space(self, other)
        return LinearOperator(self.space, (self.matrix - other.matrix).tocsr())

    def __mul__(self, scalar: complex) -> "LinearOperator":
        return LinearOperator(self.space, (self.matrix * scalar).tocsr())

    __rmul__ = __mul__


def _require_same_space(a, b) -> None:
    if a.space != b.space:
        raise ValueError("operands live on different Fock spaces")


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """Matrix product ``a @ b`` (apply ``b`` first)."""
    _require_same_space(a, b)
    return LinearOperator(a.space, (a.matrix @ b.matrix).tocsr())


def adjoint(a: LinearOperator) -> LinearOperator:
    return a.dagger()


def linear_combine(
    coeffs: Sequence[complex], ops: Sequence[LinearOperator]
) -> LinearOperator:
    """Weighted sum ``sum(c_k * op_k)``."""
    if len(coeffs) != len(ops) or not ops:
        raise ValueError("need matching, nonempty coefficients and operators")
    space = ops[0].space
    for op in ops[1:]:
        _require_same_space(ops[0], op)
    acc = sp.csr_matrix((space.dim, space.dim), dtype=np.complex128)
    for c, op in zip(coeffs, ops):
        acc = acc + c * op.matrix
    return LinearOperator(space, acc)


def identity_op(space: FockSpace) -> LinearOperator:
    return LinearOperator(space, sp.identity(space.dim, dtype=np.complex128, format="csr"))


def _single_mode_annihilation(cutoff: int) -> sp.csr_matrix:
    # <n-1| a |n> = sqrt(n)
    return sp.diags(
        np.sqrt(np.arange(1, cutoff)), 1, shape=(cutoff, cutoff), dtype=np.complex128
    ).tocsr()


def _embed(space: FockSpace, mode: int, block: sp.spmatrix) -> sp.csr_matrix:
    """Kronecker-embed a single-mode matrix at position ``mode``."""
    mat = None
    for m, cutoff in enumerate(space.cutoffs):
        factor = block if m == mode else sp.identity(cutoff, dtype=np.complex128)
        mat = factor if mat is None else sp.kron(mat, factor, format="csr")
    return sp.csr_matrix(mat)


def annihilation_op(space: FockSpace, mode: int) -> LinearOperator:
    """Bosonic annihilation operator on the selected mode."""
    space.check_mode(mode)
    return LinearOperator(
        space, _embed(space, mode, _single_mode_annihilation(space.cutoffs[mode]))
    )


def creation_op(space: FockSpace, mode: int) -> LinearOperator:
    return annihilation_op(space, mode).dagger()


def number_op(space: FockSpace, mode: int) -> LinearOperator:
    """Occupation-number operator; equals creation @ annihilation exactly."""
    space.check_mode(mode)
    diag = sp.diags(
        np.arange(space.cutoffs[mode], dtype=np.float64),
        0,
        dtype=np.complex128,
    )
    return LinearOperator(space, _embed(space, mode, diag))


def quadrature_ops(space: FockSpace, mode: int) -> tuple[LinearOperator, LinearOperator]:
    """Position and momentum quadratures, X = (a + a')/sqrt(2), P = (a - a')/(i sqrt(2))."""
    a = annihilation_op(space, mode)
    ad = a.dagger()
    x = linear_combine([1 / np.sqrt(2), 1 / np.sqrt(2)], [a, ad])
    p = linear_combine([1 / (1j * np.sqrt(2)), -1 / (1j * np.sqrt(2))], [a, ad])
    return x, p


# ---------------------------------------------------------------------------
# partial transpose and partial trace
# ---------------------------------------------------------------------------


def transpose_mode_matrix(matrix: np.ndarray, space: FockSpace, mode: int) -> np.ndarray:
    """Transpose the index pair of one mode in a ``dim x dim`` matrix.

    Pure index permutation, so applying it twice returns the input
    bit-exactly, and trace and Hermiticity are preserved.
    """
    space.check_mode(mode)
    k = space.modes
    shaped = np.asarray(matrix).reshape(space.cutoffs + space.cutoffs)
    return np.ascontiguousarray(shaped.swapaxes(mode, mode + k)).reshape(
        space.dim, space.dim
    )


def partial_transpose(rho: DensityOperator, mode: int) -> np.ndarray:
    """Partial transpose of a density matrix on the selected mode.

    The result is Hermitian with unit trace but in general not positive,
    which is the whole point: a negative eigenvalue certifies entanglement.
    It is therefore returned as a plain array, not a :class:`DensityOperator`.
    """
    return transpose_mode_matrix(rho.matrix, rho.space, mode)


def partial_transpose_op(op: LinearOperator, mode: int) -> LinearOperator:
    """Partial transpose of an operator (dense intermediate)."""
    return LinearOperator(
        op.space,
        sp.csr_matrix(transpose_mode_matrix(op.matrix.toarray(), op.space, mode)),
    )


def partial_trace(rho: DensityOperator, keep_modes: Sequence[int]) -> DensityOperator:
    """Reduced density operator on ``keep_modes``, tracing out the rest."""
    space = rho.space
    keep = sorted(set(keep_modes))
    if not keep:
        raise ValueError("keep_modes must be nonempty")
    for m in keep:
        space.check_mode(m)
    k = space.modes
    tensor = rho.matrix.reshape(space.cutoffs + space.cutoffs)
    dropped = [m for m in range(k) if m not in keep]
    # trace out dropped modes highest first so earlier ket-axis numbers stay
    # valid; np.trace removes the axis pair and keeps ket/bra axes aligned
    for m in sorted(dropped, reverse=True):
        tensor = np.trace(tensor, axis1=m, axis2=m + tensor.ndim // 2)
    reduced_space = FockSpace(tuple(space.cutoffs[m] for m in keep))
    mat = tensor.reshape(reduced_space.dim, reduced_space.dim)
    mat = 0.5 * (mat + mat.conj().T)
    return DensityOperator(reduced_space, mat)


def purity(rho: DensityOperator) -> float:
    """Tr[rho^2]; 1 for pure states."""
    # for Hermitian rho, Tr[rho^2] is the squared Frobenius norm
    return float(np.real(np.vdot(rho.matrix, rho.matrix)))
