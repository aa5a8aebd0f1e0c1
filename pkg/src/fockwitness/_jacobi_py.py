"""Cyclic Jacobi diagonalization of Hermitian matrices, pure-Python backend.

Same contract as the compiled backend in ``_jacobi_cy``: this one is the
fallback when the extension is unavailable, and the reference the compiled
kernel is tested against.  Row/column updates are vectorized, so the cost
per rotation is O(n) numpy work.
"""

from __future__ import annotations

import numpy as np


def _offdiag_norm(h: np.ndarray) -> float:
    # sum |h[p,q]|^2 directly: subtracting squared norms cancels away
    # off-diagonal mass below sqrt(eps)*norm and stops sweeps too early
    off = h.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_diagonalize(
    a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100
) -> tuple[np.ndarray, np.ndarray, int]:
    """Diagonalize Hermitian ``a`` by cyclic complex Jacobi rotations.

    Returns ``(diagonal, vectors, sweeps)`` with ``a ≈ V diag V†`` and the
    diagonal unsorted.  Convergence: off-diagonal Frobenius mass below
    ``tol`` times the Frobenius norm of the input, or a full sweep with no
    rotations.  Raises ``ArithmeticError`` after ``max_sweeps`` sweeps.
    """
    h = np.array(a, dtype=np.complex128)
    n = h.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm = float(np.linalg.norm(h))
    if n < 2 or norm == 0.0:
        return h.diagonal().real.copy(), v, 0
    target = tol * norm
    # a pivot below this cannot keep the off-diagonal mass above target
    skip = target / n
    for sweep in range(1, max_sweeps + 1):
        rotated = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                rotated += 1
                alpha = h[p, p].real
                beta = h[q, q].real
                theta = (beta - alpha) / (2.0 * r)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                e = apq / r
                se = s * e
                sec = s * np.conj(e)
                col_p = h[:, p].copy()
                col_q = h[:, q].copy()
                h[:, p] = c * col_p - sec * col_q
                h[:, q] = se * col_p + c * col_q
                h[p, :] = np.conj(h[:, p])
                h[q, :] = np.conj(h[:, q])
                rsc = r * s * c
                h[p, p] = alpha * c * c - 2.0 * rsc + beta * s * s
                h[q, q] = alpha * s * s + 2.0 * rsc + beta * c * c
                h[p, q] = 0.0
                h[q, p] = 0.0
                vec_p = v[:, p].copy()
                v[:, p] = c * vec_p - sec * v[:, q]
                v[:, q] = se * vec_p + c * v[:, q]
        if rotated == 0 or _offdiag_norm(h) < target:
            return h.diagonal().real.copy(), v, sweep
    raise ArithmeticError(
        f"Jacobi did not converge in {max_sweeps} sweeps "
        f"(off-diagonal mass {_offdiag_norm(h):.3e}, target {target:.3e})"
    )
