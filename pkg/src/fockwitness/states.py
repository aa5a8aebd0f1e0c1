"""Catalog of the state families the witnesses are evaluated on.

Pure families (Fock, Bell-form, coherent products, two-mode squeezed
vacuum, the three-mode single-pair state) are built directly from their
amplitude formulas, truncated to the space and renormalized; the leakage
guard reports the truncation error separately, so renormalization never
hides it.  Random families carry an explicit seed in the API so every
sampled state is reproducible.

:class:`StateSpec` is the JSON-facing description of a state (family name,
parameters, cutoffs, optional mixture); :func:`build_state` turns one into
a concrete state.  The command-line front end works entirely through it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Mapping, Sequence

import numpy as np

from .fock import (
    DEFAULT_MAX_DIM,
    DensityOperator,
    FockSpace,
    StateVector,
    as_density,
    make_space,
    mix,
)
from .moments import LEAKAGE_WARN, LeakageError, truncation_leakage

FAMILIES = (
    "fock",
    "bell_su2",
    "bell_su11",
    "coherent_product",
    "tmsv",
    "three_mode_hz",
    "mixture",
    "random_pure",
    "random_separable",
)


def _require_modes(space: FockSpace, modes: int) -> None:
    if space.modes != modes:
        raise ValueError(f"family needs {modes} modes, space has {space.modes}")


def _guard(psi: StateVector, max_leakage: float | None) -> StateVector:
    if max_leakage is not None:
        leakage = truncation_leakage(psi)
        if leakage > max_leakage:
            raise LeakageError(
                f"state leaks {leakage:.3e} past the cutoffs "
                f"(limit {max_leakage:.1e}); raise the cutoffs"
            )
    return psi


def fock(space: FockSpace, occupations: Sequence[int]) -> StateVector:
    """Number basis state |n_0, n_1, ...⟩."""
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[space.basis_index(occupations)] = 1.0
    return StateVector(space, amps)


def bell_su2(space: FockSpace) -> StateVector:
    """Single-excitation Bell form (|01⟩ + |10⟩)/√2."""
    _require_modes(space, 2)
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[space.basis_index((0, 1))] = 1 / sqrt(2)
    amps[space.basis_index((1, 0))] = 1 / sqrt(2)
    return StateVector(space, amps)


def bell_su11(space: FockSpace) -> StateVector:
    """Pair Bell form (|00⟩ + |11⟩)/√2."""
    _require_modes(space, 2)
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[space.basis_index((0, 0))] = 1 / sqrt(2)
    amps[space.basis_index((1, 1))] = 1 / sqrt(2)
    return StateVector(space, amps)


def coherent_amplitudes(cutoff: int, alpha: complex) -> np.ndarray:
    """Truncated coherent expansion e^{-|α|²/2} αⁿ/√(n!), not renormalized."""
    n = np.arange(cutoff)
    log_fact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, cutoff)))))
    amps = np.exp(-0.5 * abs(alpha) ** 2 - 0.5 * log_fact) * np.power(
        complex(alpha), n
    )
    return amps.astype(np.complex128)


def coherent_product(
    space: FockSpace,
    alpha: complex,
    beta: complex,
    max_leakage: float | None = LEAKAGE_WARN,
) -> StateVector:
    """Product of two coherent states, truncated and renormalized.

    The amplitudes must fit the cutoffs: construction fails if the
    truncated tail carries more than ``max_leakage`` population
    (pass ``None`` to skip the guard).
    """
    _require_modes(space, 2)
    amps = np.kron(
        coherent_amplitudes(space.cutoffs[0], alpha),
        coherent_amplitudes(space.cutoffs[1], beta),
    )
    return _guard(StateVector.normalized(space, amps), max_leakage)


def tmsv(
    space: FockSpace, x: float, max_leakage: float | None = LEAKAGE_WARN
) -> StateVector:
    """Two-mode squeezed vacuum: amplitudes √(1−x²)·xⁿ on |n,n⟩.

    Requires 0 ≤ x < 1 (x = 1 is not normalizable).  Truncated to the
    smaller cutoff and renormalized; the leakage guard enforces that the
    discarded geometric tail is below ``max_leakage``.
    """
    _require_modes(space, 2)
    if not 0.0 <= x < 1.0:
        raise ValueError(f"squeezing parameter x={x!r} outside [0, 1)")
    amps = np.zeros(space.dim, dtype=np.complex128)
    for n in range(min(space.cutoffs)):
        amps[space.basis_index((n, n))] = x**n
    return _guard(StateVector.normalized(space, amps), max_leakage)


def three_mode_hz(space: FockSpace) -> StateVector:
    """Single-pair three-mode state (|100⟩ + |011⟩)/√2."""
    _require_modes(space, 3)
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[space.basis_index((1, 0, 0))] = 1 / sqrt(2)
    amps[space.basis_index((0, 1, 1))] = 1 / sqrt(2)
    return StateVector(space, amps)


# ---------------------------------------------------------------------------
# random families
# ---------------------------------------------------------------------------


def _interior_mask(space: FockSpace, edge_margin: int) -> np.ndarray:
    """Basis states with every occupation at most ``cutoff - 1 - edge_margin``."""
    if any(c - 1 - edge_margin < 0 for c in space.cutoffs):
        raise ValueError(
            f"edge margin {edge_margin} leaves no states at cutoffs {space.cutoffs}"
        )
    mask = np.ones(space.dim, dtype=bool)
    for i, occ in enumerate(space.all_occupations()):
        if any(n > c - 1 - edge_margin for n, c in zip(occ, space.cutoffs)):
            mask[i] = False
    return mask


def _gaussian_unit_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return amps / np.linalg.norm(amps)


def random_pure(space: FockSpace, seed: int, edge_margin: int = 2) -> StateVector:
    """Seeded Haar-like random ket: normalized complex Gaussian amplitudes.

    By default the amplitudes are supported on the interior of the space
    (every occupation at least ``edge_margin`` below the top rung), so the
    sampled state has exactly zero leakage and exact quadratic moments.
    ``edge_margin=0`` samples the full truncated sphere instead.
    """
    rng = np.random.default_rng(seed)
    mask = _interior_mask(space, edge_margin)
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[mask] = _gaussian_unit_vector(rng, int(mask.sum()))
    return StateVector(space, amps)


def random_separable(
    space: FockSpace, seed: int, terms: int = 4, edge_margin: int = 2
) -> DensityOperator:
    """Seeded random separable mixture Σ p_k ρ_0^(k) ⊗ ρ_1^(k) ⊗ ...

    Each term is a product of independent random pure single-mode states
    (interior-supported, see :func:`random_pure`); the weights are a
    Dirichlet sample.  Positive under partial transpose by construction.
    """
    if terms < 1:
        raise ValueError("need at least one mixture term")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    total = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for k in range(terms):
        amps = None
        for cutoff in space.cutoffs:
            keep = cutoff - edge_margin
            if keep < 1:
                raise ValueError(
                    f"edge margin {edge_margin} leaves no states at cutoff {cutoff}"
                )
            vec = np.zeros(cutoff, dtype=np.complex128)
            vec[:keep] = _gaussian_unit_vector(rng, keep)
            amps = vec if amps is None else np.kron(amps, vec)
        total += weights[k] * np.outer(amps, amps.conj())
    total = 0.5 * (total + total.conj().T)
    total /= np.trace(total).real
    return DensityOperator(space, total)


# ---------------------------------------------------------------------------
# JSON-facing state descriptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateSpec:
    """Declarative description of a state: family, parameters, cutoffs.

    ``mix`` holds (weight, StateSpec) pairs for the ``mixture`` family;
    nested specs may omit ``cutoffs`` to inherit them from the parent.
    """

    family: str
    params: Mapping[str, Any] = field(default_factory=dict)
    cutoffs: tuple[int, ...] | None = None
    mix: tuple[tuple[float, "StateSpec"], ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}"
            )
        if (self.family == "mixture") != (self.mix is not None):
            raise ValueError("exactly the mixture family takes a mix list")


def spec_from_dict(payload: Mapping[str, Any]) -> StateSpec:
    """Parse the JSON object form {"family", "params", "cutoffs", "mix"}."""
    if not isinstance(payload, Mapping):
        raise ValueError(f"state spec must be an object, got {type(payload).__name__}")
    unknown = set(payload) - {"family", "params", "cutoffs", "mix"}
    if unknown:
        raise ValueError(f"unknown state-spec keys {sorted(unknown)}")
    if "family" not in payload:
        raise ValueError("state spec needs a 'family'")
    family = payload["family"]
    params = dict(payload.get("params") or {})
    cutoffs = payload.get("cutoffs")
    if cutoffs is not None:
        cutoffs = tuple(int(c) for c in cutoffs)
    mix_payload = payload.get("mix")
    mix_specs = None
    if mix_payload is not None:
        entries = []
        for entry in mix_payload:
            if not isinstance(entry, Mapping) or set(entry) != {"weight", "spec"}:
                raise ValueError("each mix entry needs exactly 'weight' and 'spec'")
            entries.append((float(entry["weight"]), spec_from_dict(entry["spec"])))
        mix_specs = tuple(entries)
    return StateSpec(family, params, cutoffs, mix_specs)


def _as_complex(value: Any, name: str) -> complex:
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"parameter {name!r} is not a number: {value!r}")


def default_cutoffs(spec: StateSpec) -> tuple[int, ...]:
    """Cutoffs used when a spec does not state them."""
    if spec.family == "three_mode_hz":
        return (4, 4, 4)
    if spec.family == "fock":
        occ = spec.params.get("occupations", ())
        return tuple(16 for _ in occ) or (16, 16)
    if spec.family == "mixture" and spec.mix:
        for _, sub in spec.mix:
            if sub.cutoffs is not None:
                return sub.cutoffs
        return default_cutoffs(spec.mix[0][1])
    return (16, 16)


#: sentinel default marking a parameter as required
_REQUIRED = object()


def _take_params(params: Mapping[str, Any], **known: Any) -> dict[str, Any]:
    unknown = set(params) - set(known)
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)}")
    out = dict(known)
    out.update(params)
    missing = [k for k, v in out.items() if v is _REQUIRED]
    if missing:
        raise ValueError(f"missing required parameters {sorted(missing)}")
    return out


def build_state(
    spec: StateSpec, max_dim: int = DEFAULT_MAX_DIM
) -> StateVector | DensityOperator:
    """Construct the state described by ``spec``.

    Invalid families, parameters, or cutoffs raise ``ValueError``;
    unrepresentable states (too much truncation leakage) raise
    :class:`~fockwitness.moments.LeakageError`.
    """
    cutoffs = spec.cutoffs if spec.cutoffs is not None else default_cutoffs(spec)
    if spec.family == "mixture":
        assert spec.mix is not None
        weights, parts = [], []
        for weight, sub in spec.mix:
            if sub.cutoffs is None:
                sub = StateSpec(sub.family, sub.params, cutoffs, sub.mix)
            elif sub.cutoffs != cutoffs:
                raise ValueError(
                    f"mixture part cutoffs {sub.cutoffs} differ from {cutoffs}"
                )
            weights.append(weight)
            parts.append(as_density(build_state(sub, max_dim)))
        return mix(weights, parts)

    space = make_space(len(cutoffs), cutoffs, max_dim)
    p = spec.params
    if spec.family == "fock":
        kw = _take_params(p, occupations=_REQUIRED)
        return fock(space, tuple(int(n) for n in kw["occupations"]))
    if spec.family == "bell_su2":
        _take_params(p)
        return bell_su2(space)
    if spec.family == "bell_su11":
        _take_params(p)
        return bell_su11(space)
    if spec.family == "coherent_product":
        kw = _take_params(p, alpha=_REQUIRED, beta=_REQUIRED, max_leakage=LEAKAGE_WARN)
        return coherent_product(
            space,
            _as_complex(kw["alpha"], "alpha"),
            _as_complex(kw["beta"], "beta"),
            max_leakage=kw["max_leakage"],
        )
    if spec.family == "tmsv":
        kw = _take_params(p, x=_REQUIRED, max_leakage=LEAKAGE_WARN)
        return tmsv(space, float(kw["x"]), max_leakage=kw["max_leakage"])
    if spec.family == "three_mode_hz":
        _take_params(p)
        return three_mode_hz(space)
    if spec.family == "random_pure":
        kw = _take_params(p, seed=_REQUIRED, edge_margin=2)
        return random_pure(space, int(kw["seed"]), int(kw["edge_margin"]))
    if spec.family == "random_separable":
        kw = _take_params(p, seed=_REQUIRED, terms=4, edge_margin=2)
        return random_separable(
            space, int(kw["seed"]), int(kw["terms"]), int(kw["edge_margin"])
        )
    raise AssertionError(f"unhandled family {spec.family!r}")
