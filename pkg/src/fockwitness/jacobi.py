"""Hermitian eigensolver front end: compiled kernel, pure-Python fallback.

The cyclic Jacobi rotation loop is the hot spot of the whole package (the
spectral oracle is O(dim³)), so it exists twice: a Cython extension
(``_jacobi_cy``) and a numpy fallback (``_jacobi_py``) with identical
contracts.  The compiled backend is preferred when importable; set
``FOCKWITNESS_PURE_JACOBI=1`` to force the fallback (useful for timing and
for debugging suspected kernel issues).  ``benchmarks/bench_jacobi.py``
compares the two.
"""

from __future__ import annotations

import os

import numpy as np

#: convergence: off-diagonal Frobenius mass below this times ‖A‖_F
JACOBI_TOL = 1e-14
#: give up after this many full sweeps
MAX_SWEEPS = 100


def _pick_backend():
    if os.environ.get("FOCKWITNESS_PURE_JACOBI", "") not in ("", "0"):
        from . import _jacobi_py

        return _jacobi_py, "pure"
    try:
        from . import _jacobi_cy

        return _jacobi_cy, "cython"
    except ImportError:
        from . import _jacobi_py

        return _jacobi_py, "pure"


_backend, _BACKEND_NAME = _pick_backend()


def backend_name() -> str:
    """Which rotation kernel is active: "cython" or "pure"."""
    return _BACKEND_NAME


def jacobi_eigh(
    matrix: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, vectors)`` with eigenvalues real and ascending
    and ``vectors[:, k]`` the eigenvector of ``eigenvalues[k]``.  The input
    is assumed Hermitian; callers wanting the check should use
    :func:`fockwitness.ppt.hermitian_eigenvalues`.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    diag, vectors, _ = _backend.jacobi_diagonalize(a, tol, max_sweeps)
    order = np.argsort(diag, kind="stable")
    return diag[order], vectors[:, order]
