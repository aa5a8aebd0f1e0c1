"""Built-in invariant suites behind the ``selftest`` CLI command.

Each suite re-derives facts the library is supposed to guarantee —
commutation relations, transpose duality, spectrum reconstruction,
uncertainty-bound physicality, separable-state soundness — from scratch at
small dimensions, with one configurable seed.  The point is a fast,
dependency-free smoke check of an installed copy; the full oracle-backed
test suite lives in ``tests/``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import __version__
from .fock import (
    identity_op,
    linear_combine,
    make_space,
    partial_transpose,
    purity,
    transpose_mode_matrix,
)
from .jacobi import backend_name, jacobi_eigh
from .moments import (
    LEAKAGE_ERROR,
    LEAKAGE_WARN,
    expectation,
    pt_expectation,
    truncation_leakage,
    variance,
)
from .ppt import NEGATIVITY_FLOOR, hermitian_eigenvalues
from .states import random_pure, random_separable, tmsv
from .su import (
    algebra_residual,
    commutator,
    safe_subspace_projector,
    su2_generators,
    su11_generators,
)
from .witnesses import (
    BOUNDARY_TOL,
    hz_su2,
    hz_su11,
    k_phi_variance,
    pt_su2_product,
    su2_uncertainty,
    su11_uncertainty,
    sum_variance,
)

#: property-test margin slack, matching the witness boundary default
MARGIN_SLACK = 1e-9

_DEFAULTS = {
    "seed": 12345,
    "cutoff": 10,
    "samples": 25,
    "boundary_tol": BOUNDARY_TOL,
    "leakage_warn": LEAKAGE_WARN,
    "leakage_error": LEAKAGE_ERROR,
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    failed: int
    failures: tuple[str, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class SelftestResult:
    suites: tuple[SuiteResult, ...]
    config: dict
    non_default: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.suites)


class _Suite:
    """Tiny check counter so suites read as straight-line assertions."""

    def __init__(self, name: str):
        self.name = name
        self.passed = 0
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, label: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failures.append(label)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def result(self) -> SuiteResult:
        return SuiteResult(
            self.name, self.passed, len(self.failures),
            tuple(self.failures), tuple(self.notes),
        )


def _suite_algebra(cutoff: int) -> SuiteResult:
    s = _Suite("algebra")
    space = make_space(2, (cutoff, cutoff))
    su2 = su2_generators(space)
    su11 = su11_generators(space)
    for gens, label in ((su2, "su2"), (su11, "su11")):
        for op, axis in ((gens.x, "x"), (gens.y, "y"), (gens.z, "z")):
            s.check(op.is_hermitian(1e-12), f"{label}.{axis} hermitian")
        res = algebra_residual(gens)
        s.check(res < 1e-10, f"{label} safe-subspace residual {res:.3e}")
        edge = algebra_residual(gens, restrict=False)
        s.note(f"{label} edge-inclusive residual {edge:.3e} (expected O(cutoff))")
    # S_z commutes with the total squared spin away from the edge
    s2 = su2.x @ su2.x + su2.y @ su2.y + su2.z @ su2.z
    proj = safe_subspace_projector(space)
    defect = proj @ commutator(su2.z, s2) @ proj
    worst = float(abs(defect.matrix).max()) if defect.matrix.nnz else 0.0
    s.check(worst < 1e-10, f"[Sz, S^2] safe-subspace residual {worst:.3e}")
    return s.result()


def _suite_duality(seed: int, pairs: int) -> SuiteResult:
    s = _Suite("duality")
    rng = np.random.default_rng(seed)
    space = make_space(2, (4, 4))
    for k in range(pairs):
        rho = random_separable(space, seed=int(rng.integers(2**31)), terms=2)
        raw = rng.standard_normal((space.dim, space.dim)) + 1j * rng.standard_normal(
            (space.dim, space.dim)
        )
        mode = int(rng.integers(2))
        direct = np.trace(partial_transpose(rho, mode) @ raw)
        dual = np.trace(rho.matrix @ transpose_mode_matrix(raw, space, mode))
        s.check(abs(direct - dual) < 1e-12, f"pair {k} duality gap {abs(direct-dual):.3e}")
        # the involution must be bit-exact
        back = transpose_mode_matrix(
            transpose_mode_matrix(raw, space, mode), space, mode
        )
        s.check(np.array_equal(back, raw), f"pair {k} transpose involution")
    return s.result()


def _suite_moments(seed: int, samples: int) -> SuiteResult:
    s = _Suite("moments")
    space = make_space(2, (6, 6))
    gens = su2_generators(space)
    for k in range(samples):
        psi = random_pure(space, seed=seed + k)
        value = expectation(psi, gens.x)
        s.check(value.hermitian_input, f"sample {k} hermitian flag")
        s.check(value.imag_residual <= 1e-10, f"sample {k} imag residual")
        # variance must not see a real diagonal shift
        shifted = linear_combine([1.0, 2.5], [gens.x, identity_op(space)])
        gap = abs(variance(psi, gens.x) - variance(psi, shifted))
        s.check(gap <= 1e-10, f"sample {k} shift invariance gap {gap:.3e}")
    rho = random_separable(space, seed=seed, terms=3)
    m = pt_expectation(rho, gens.x @ gens.x, 1)
    s.check(m.hermitian_input and m.imag_residual <= 1e-10, "pt moment hermitian")
    return s.result()


def _suite_states(seed: int) -> SuiteResult:
    s = _Suite("states")
    space = make_space(2, (14, 14))
    psi = tmsv(space, 0.4)
    offdiag = sum(
        abs(psi.amplitudes[space.basis_index(occ)]) ** 2
        for occ in space.all_occupations()
        if occ[0] != occ[1]
    )
    s.check(offdiag == 0.0, "tmsv support off |n,n>")
    s.check(truncation_leakage(psi) < 1e-8, "tmsv(0.4) leakage")
    single = random_separable(space, seed=seed, terms=1)
    s.check(abs(purity(single) - 1.0) < 1e-10, "one-term separable purity")
    return s.result()


def _suite_physicality(seed: int, samples: int) -> SuiteResult:
    s = _Suite("physicality")
    space = make_space(2, (8, 8))
    for k in range(samples):
        psi = random_pure(space, seed=seed + k)
        s.check(truncation_leakage(psi) < 1e-8, f"sample {k} leakage")
        for fn, label in ((su2_uncertainty, "su2"), (su11_uncertainty, "su11")):
            report = fn(psi)
            s.check(
                report.margin >= -MARGIN_SLACK,
                f"sample {k} {label} margin {report.margin:.3e}",
            )
    return s.result()


def _suite_separability(seed: int, samples: int) -> SuiteResult:
    s = _Suite("separability")
    space = make_space(2, (6, 6))
    sound = (sum_variance, hz_su2, hz_su11, k_phi_variance)
    for k in range(samples):
        rho = random_separable(space, seed=seed + k, terms=3)
        for fn in sound:
            report = fn(rho)
            s.check(
                report.margin >= -MARGIN_SLACK,
                f"sample {k} {report.name} margin {report.margin:.3e}",
            )
        neg = hermitian_eigenvalues(partial_transpose(rho, 1)).negativity
        s.check(neg <= NEGATIVITY_FLOOR, f"sample {k} negativity {neg:.3e}")
    return s.result()


def _suite_diagnostic(seed: int, samples: int) -> SuiteResult:
    s = _Suite("diagnostic")
    space = make_space(2, (8, 8))
    for k in range(samples):
        psi = random_pure(space, seed=seed + k)
        report = pt_su2_product(psi)
        s.check(
            report.margin >= -MARGIN_SLACK,
            f"sample {k} pt_su2_product margin {report.margin:.3e}",
        )
        s.check(
            report.extras["uncertainty_rhs"] >= report.rhs - MARGIN_SLACK,
            f"sample {k} uncertainty rhs dominates",
        )
    return s.result()


def _suite_spectra(seed: int, samples: int) -> SuiteResult:
    s = _Suite("spectra")
    rng = np.random.default_rng(seed)
    w, _ = jacobi_eigh(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    s.check(np.allclose(w, [-1.0, 1.0], atol=1e-12), "2x2 reflection spectrum")
    w, _ = jacobi_eigh(np.array([[1.0, 1j], [-1j, 1.0]]))
    s.check(np.allclose(w, [0.0, 2.0], atol=1e-12), "2x2 complex spectrum")
    for k in range(samples):
        n = int(rng.integers(8, 33))
        raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = 0.5 * (raw + raw.conj().T)
        spec = hermitian_eigenvalues(h)
        s.check(spec.residual <= 1e-9, f"sample {k} residual {spec.residual:.3e}")
        reference = np.sort(np.linalg.eigvalsh(h))
        gap = float(np.max(np.abs(spec.eigenvalues - reference)))
        s.check(gap <= 1e-9, f"sample {k} vs LAPACK gap {gap:.3e}")
    # density spectra live in [0, 1]
    space = make_space(2, (5, 5))
    rho = random_separable(space, seed=seed, terms=4)
    spec = hermitian_eigenvalues(rho.matrix)
    s.check(
        spec.min >= -1e-10 and spec.eigenvalues[-1] <= 1.0 + 1e-10,
        "density spectrum range",
    )
    return s.result()


def run_selftest(
    seed: int = 12345,
    cutoff: int = 10,
    samples: int = 25,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> SelftestResult:
    """Run every invariant suite; cheap enough for an install check."""
    config = {
        "seed": seed,
        "cutoff": cutoff,
        "samples": samples,
        "boundary_tol": boundary_tol,
        "leakage_warn": leakage_warn,
        "leakage_error": leakage_error,
        "backend": backend_name(),
        "version": __version__,
    }
    non_default = tuple(
        f"{key}={config[key]!r} (default {default!r})"
        for key, default in _DEFAULTS.items()
        if config[key] != default
    )
    suites = (
        _suite_algebra(cutoff),
        _suite_duality(seed, pairs=min(samples, 20)),
        _suite_moments(seed, samples=min(samples, 10)),
        _suite_states(seed),
        _suite_physicality(seed, samples),
        _suite_separability(seed, samples=min(samples, 10)),
        _suite_diagnostic(seed, samples),
        _suite_spectra(seed, samples=min(samples, 10)),
    )
    return SelftestResult(suites, config, non_default)
