# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Cyclic Jacobi diagonalization of Hermitian matrices, compiled backend.

Same contract as ``_jacobi_py.jacobi_diagonalize``; the rotation loops are
typed C loops, which is where all the time goes at oracle dimensions.
"""

import numpy as np

from libc.math cimport fabs, hypot, sqrt


cdef double _offdiag_norm(double complex[:, ::1] h, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += (h[i, j].real * h[i, j].real
                        + h[i, j].imag * h[i, j].imag)
    return sqrt(acc)


def jacobi_diagonalize(a, double tol=1e-14, int max_sweeps=100):
    """Diagonalize Hermitian ``a`` by cyclic complex Jacobi rotations.

    Returns ``(diagonal, vectors, sweeps)`` with ``a ≈ V diag V†`` and the
    diagonal unsorted; raises ``ArithmeticError`` on non-convergence.
    """
    h_arr = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = h_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] h = h_arr
    cdef double complex[:, ::1] v = v_arr
    cdef double norm = float(np.linalg.norm(h_arr))
    if n < 2 or norm == 0.0:
        return h_arr.diagonal().real.copy(), v_arr, 0
    cdef double target = tol * norm
    cdef double skip = target / n
    cdef Py_ssize_t p, q, i
    cdef int sweep, rotated
    cdef double r, alpha, beta, theta, t, c, s, rsc
    cdef double complex apq, e, se, sec, hp, hq
    for sweep in range(1, max_sweeps + 1):
        rotated = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if r <= skip:
                    continue
                rotated += 1
                alpha = h[p, p].real
                beta = h[q, q].real
                theta = (beta - alpha) / (2.0 * r)
                if theta == 0.0:
                    t = 1.0
                elif theta > 0.0:
                    t = 1.0 / (theta + hypot(theta, 1.0))
                else:
                    t = -1.0 / (-theta + hypot(theta, 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                e = apq / r
                se = s * e
                sec = s * e.conjugate()
                for i in range(n):
                    hp = h[i, p]
                    hq = h[i, q]
                    h[i, p] = c * hp - sec * hq
                    h[i, q] = se * hp + c * hq
                for i in range(n):
                    h[p, i] = h[i, p].conjugate()
                    h[q, i] = h[i, q].conjugate()
                rsc = r * s * c
                h[p, p] = alpha * c * c - 2.0 * rsc + beta * s * s
                h[q, q] = alpha * s * s + 2.0 * rsc + beta * c * c
                h[p, q] = 0.0
                h[q, p] = 0.0
                for i in range(n):
                    hp = v[i, p]
                    hq = v[i, q]
                    v[i, p] = c * hp - sec * hq
                    v[i, q] = se * hp + c * hq
        if rotated == 0 or _offdiag_norm(h, n) < target:
            return h_arr.diagonal().real.copy(), v_arr, sweep
    raise ArithmeticError(
        f"Jacobi did not converge in {max_sweeps} sweeps "
        f"(off-diagonal mass {_offdiag_norm(h, n):.3e}, target {target:.3e})"
    )
