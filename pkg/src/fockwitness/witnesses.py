"""Uncertainty bounds and separability criteria as signed-margin reports.

Every check is an inequality ``lhs >= rhs`` evaluated on a state and
reported with ``margin = lhs - rhs``.  The verdict is ``violated`` when the
margin is below ``-boundary_tol``, ``boundary`` within the tolerance, and
``satisfied`` otherwise.  What a violation *means* depends on the kind:

* ``physicality`` — the bound holds for every quantum state; a violation
  can only be a numerical or truncation fault.
* ``separability`` — the bound holds for every separable state; a
  violation certifies entanglement (the converse is false: these are
  sufficient conditions only).
* ``diagnostic`` — reported for insight, carries no certification either
  way.  ``pt_su2_product`` in particular can never fire: its right-hand
  side is dominated by the uncertainty bound, |<Na - Nb - 1>| <=
  <Na + Nb + 1> = 2<Kz> by the triangle inequality on nonnegative
  operators, so the report also carries the uncertainty rhs to make the
  slack visible.

Boundary verdicts are common and meaningful here: minimum-uncertainty
families (vacuum, two-mode squeezed vacuum) and coherent products sit
exactly on several of these bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi, sqrt
from typing import Any, Callable, Mapping

from .fock import (
    DensityOperator,
    StateVector,
    annihilation_op,
    compose,
    number_op,
)
from .moments import (
    LEAKAGE_ERROR,
    LEAKAGE_WARN,
    LeakageError,
    check_leakage,
    expectation,
    truncation_leakage,
    variance,
)
from .su import k_phi, su2_generators, su11_generators

#: |margin| at or below this is reported as "boundary" rather than a verdict
BOUNDARY_TOL = 1e-9

PHYSICALITY = "physicality"
SEPARABILITY = "separability"
DIAGNOSTIC = "diagnostic"

SATISFIED = "satisfied"
VIOLATED = "violated"
BOUNDARY = "boundary"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class WitnessReport:
    """One evaluated inequality: lhs >= rhs, margin = lhs - rhs."""

    name: str
    kind: str
    lhs: float
    rhs: float
    margin: float
    verdict: str
    leakage: float
    formula: str
    extras: Mapping[str, Any] = field(default_factory=dict)


def classify(margin: float, boundary_tol: float = BOUNDARY_TOL) -> str:
    if abs(margin) <= boundary_tol:
        return BOUNDARY
    return VIOLATED if margin < 0.0 else SATISFIED


def _report(
    name: str,
    kind: str,
    lhs: float,
    rhs: float,
    leakage: float,
    formula: str,
    boundary_tol: float,
    extras: Mapping[str, float] | None = None,
) -> WitnessReport:
    margin = lhs - rhs
    return WitnessReport(
        name=name,
        kind=kind,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        verdict=classify(margin, boundary_tol),
        leakage=float(leakage),
        formula=formula,
        extras=dict(extras or {}),
    )


State = StateVector | DensityOperator


def _mean(state: State, op) -> float:
    return expectation(state, op).real


def _number_sum(state: State) -> float:
    space = state.space
    return _mean(state, number_op(space, 0)) + _mean(state, number_op(space, 1))


# ---------------------------------------------------------------------------
# two-mode witnesses
# ---------------------------------------------------------------------------


def su2_uncertainty(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """dSx*dSy >= |<Sz>|/2 — holds for every state."""
    leakage = check_leakage(state, leakage_warn, leakage_error)
    gens = su2_generators(state.space)
    lhs = sqrt(variance(state, gens.x)) * sqrt(variance(state, gens.y))
    rhs = 0.5 * abs(_mean(state, gens.z))
    return _report(
        "su2_uncertainty", PHYSICALITY, lhs, rhs, leakage,
        "dSx*dSy >= |<Sz>|/2", boundary_tol,
    )


def su11_uncertainty(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """dKx*dKy >= |<Kz>|/2 — holds for every state."""
    leakage = check_leakage(state, leakage_warn, leakage_error)
    gens = su11_generators(state.space)
    lhs = sqrt(variance(state, gens.x)) * sqrt(variance(state, gens.y))
    rhs = 0.5 * abs(_mean(state, gens.z))
    return _report(
        "su11_uncertainty", PHYSICALITY, lhs, rhs, leakage,
        "dKx*dKy >= |<Kz>|/2", boundary_tol,
    )


def pt_su11_product(
    state: State,
    variant: str = "weak",
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """Partial transpose of the SU(1,1) uncertainty bound, in SU(2) variables.

    Transposing mode b maps the pair operators onto exchange operators, so
    the bound becomes a condition on dSx*dSy that separable states must
    satisfy.  Two right-hand sides are exposed: ``weak`` compares against
    |<Na + Nb>|/4 and ``strict`` keeps the operator-ordering +2, comparing
    against (<Na + Nb> + 2)/4.  The strict rhs is always the larger, so it
    flags a superset of the states the weak form flags.
    """
    if variant not in ("weak", "strict"):
        raise ValueError(f"variant must be 'weak' or 'strict', got {variant!r}")
    leakage = check_leakage(state, leakage_warn, leakage_error)
    gens = su2_generators(state.space)
    lhs = sqrt(variance(state, gens.x)) * sqrt(variance(state, gens.y))
    n_sum = _number_sum(state)
    if variant == "weak":
        rhs = 0.25 * abs(n_sum)
        formula = "dSx*dSy >= |<Na+Nb>|/4"
    else:
        rhs = 0.25 * (n_sum + 2.0)
        formula = "dSx*dSy >= (<Na+Nb>+2)/4"
    return _report(
        f"pt_su11_product_{variant}", SEPARABILITY, lhs, rhs, leakage,
        formula, boundary_tol,
    )


def sum_variance(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """var(Sx) + var(Sy) >= |<Na+Nb>|/2 for separable states."""
    leakage = check_leakage(state, leakage_warn, leakage_error)
    gens = su2_generators(state.space)
    lhs = variance(state, gens.x) + variance(state, gens.y)
    rhs = 0.5 * abs(_number_sum(state))
    return _report(
        "sum_variance", SEPARABILITY, lhs, rhs, leakage,
        "var(Sx)+var(Sy) >= |<Na+Nb>|/2", boundary_tol,
    )


def factorization_gap(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """|<ab'>|^2 - |<a><b'>|^2; exactly zero on pure product states.

    Informational only, so the leakage guard records but never refuses
    (the thresholds are accepted for interface uniformity).
    """
    del leakage_warn, leakage_error
    leakage = truncation_leakage(state)
    space = state.space
    a = annihilation_op(space, 0)
    bd = annihilation_op(space, 1).dagger()
    cross = abs(expectation(state, compose(a, bd)).value) ** 2
    split = abs(expectation(state, a).value * expectation(state, bd).value) ** 2
    return _report(
        "factorization_gap", DIAGNOSTIC, cross, split, leakage,
        "|<ab'>|^2 - |<a><b'>|^2", boundary_tol,
    )


def pt_su2_product(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """Partial transpose of the SU(2) uncertainty bound, in SU(1,1) variables.

    dKx*dKy >= |<Na - Nb - 1>|/4.  Vacuous as a separability test: the
    uncertainty bound |<Kz>|/2 = (<Na + Nb + 1>)/4 already dominates the
    rhs for every state, so no physical state can violate this.  Kept as a
    diagnostic; ``extras["uncertainty_rhs"]`` carries the dominating bound.
    """
    leakage = check_leakage(state, leakage_warn, leakage_error)
    gens = su11_generators(state.space)
    lhs = sqrt(variance(state, gens.x)) * sqrt(variance(state, gens.y))
    space = state.space
    asym = _mean(state, number_op(space, 0)) - _mean(state, number_op(space, 1)) - 1.0
    rhs = 0.25 * abs(asym)
    uncertainty_rhs = 0.5 * abs(_mean(state, gens.z))
    return _report(
        "pt_su2_product", DIAGNOSTIC, lhs, rhs, leakage,
        "dKx*dKy >= |<Na-Nb-1>|/4", boundary_tol,
        extras={"uncertainty_rhs": uncertainty_rhs},
    )


def hz_su2(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """<Na*Nb> >= |<ab'>|^2 for separable states (exchange-moment bound)."""
    leakage = check_leakage(state, leakage_warn, leakage_error)
    space = state.space
    lhs = _mean(state, compose(number_op(space, 0), number_op(space, 1)))
    cross = compose(annihilation_op(space, 0), annihilation_op(space, 1).dagger())
    rhs = abs(expectation(state, cross).value) ** 2
    return _report(
        "hz_su2", SEPARABILITY, lhs, rhs, leakage,
        "<Na*Nb> >= |<ab'>|^2", boundary_tol,
    )


def hz_su11(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """<Na><Nb> >= |<ab>|^2 for separable states (pair-moment bound)."""
    leakage = check_leakage(state, leakage_warn, leakage_error)
    space = state.space
    lhs = _mean(state, number_op(space, 0)) * _mean(state, number_op(space, 1))
    pair = compose(annihilation_op(space, 0), annihilation_op(space, 1))
    rhs = abs(expectation(state, pair).value) ** 2
    return _report(
        "hz_su11", SEPARABILITY, lhs, rhs, leakage,
        "<Na><Nb> >= |<ab>|^2", boundary_tol,
    )


def hz_three_mode(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """sqrt(<Na*Nb*Nc>) >= |<ab'c'>| for fully separable three-mode states."""
    if state.space.modes != 3:
        raise ValueError(f"three-mode witness on a {state.space.modes}-mode state")
    leakage = check_leakage(state, leakage_warn, leakage_error)
    space = state.space
    nnn = compose(
        compose(number_op(space, 0), number_op(space, 1)), number_op(space, 2)
    )
    lhs = sqrt(max(_mean(state, nnn), 0.0))
    cross = compose(
        compose(annihilation_op(space, 0), annihilation_op(space, 1).dagger()),
        annihilation_op(space, 2).dagger(),
    )
    rhs = abs(expectation(state, cross).value)
    return _report(
        "hz_three_mode", SEPARABILITY, lhs, rhs, leakage,
        "sqrt(<Na*Nb*Nc>) >= |<ab'c'>|", boundary_tol,
    )


def k_phi_variance(
    state: State,
    phi: float = pi / 2,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> WitnessReport:
    """var(K(phi)) >= 1/4 for separable states, any phase phi.

    K(phi) = (e^{i phi} a'b' + e^{-i phi} ab)/2 interpolates between K_x
    (phi = 0) and the conjugate pair quadrature; a variance below 1/4 at
    any phase certifies entanglement.
    """
    leakage = check_leakage(state, leakage_warn, leakage_error)
    lhs = variance(state, k_phi(state.space, phi))
    return _report(
        "k_phi_variance", SEPARABILITY, lhs, 0.25, leakage,
        "var(K(phi)) >= 1/4", boundary_tol,
        extras={"phi": float(phi)},
    )


# ---------------------------------------------------------------------------
# the full suite
# ---------------------------------------------------------------------------

#: evaluation order: (name, required mode count, callable)
_REGISTRY: tuple[tuple[str, int, Callable[..., WitnessReport]], ...] = (
    ("su2_uncertainty", 2, su2_uncertainty),
    ("su11_uncertainty", 2, su11_uncertainty),
    ("pt_su11_product_weak", 2, lambda state, **kw: pt_su11_product(state, "weak", **kw)),
    ("pt_su11_product_strict", 2, lambda state, **kw: pt_su11_product(state, "strict", **kw)),
    ("sum_variance", 2, sum_variance),
    ("factorization_gap", 2, factorization_gap),
    ("pt_su2_product", 2, pt_su2_product),
    ("hz_su2", 2, hz_su2),
    ("hz_su11", 2, hz_su11),
    ("k_phi_variance", 2, k_phi_variance),
    ("hz_three_mode", 3, hz_three_mode),
)

WITNESS_NAMES = tuple(name for name, _, _ in _REGISTRY)

_KINDS = {
    "su2_uncertainty": PHYSICALITY,
    "su11_uncertainty": PHYSICALITY,
    "pt_su11_product_weak": SEPARABILITY,
    "pt_su11_product_strict": SEPARABILITY,
    "sum_variance": SEPARABILITY,
    "factorization_gap": DIAGNOSTIC,
    "pt_su2_product": DIAGNOSTIC,
    "hz_su2": SEPARABILITY,
    "hz_su11": SEPARABILITY,
    "k_phi_variance": SEPARABILITY,
    "hz_three_mode": SEPARABILITY,
}

_FORMULAS = {
    "su2_uncertainty": "dSx*dSy >= |<Sz>|/2",
    "su11_uncertainty": "dKx*dKy >= |<Kz>|/2",
    "pt_su11_product_weak": "dSx*dSy >= |<Na+Nb>|/4",
    "pt_su11_product_strict": "dSx*dSy >= (<Na+Nb>+2)/4",
    "sum_variance": "var(Sx)+var(Sy) >= |<Na+Nb>|/2",
    "factorization_gap": "|<ab'>|^2 - |<a><b'>|^2",
    "pt_su2_product": "dKx*dKy >= |<Na-Nb-1>|/4",
    "hz_su2": "<Na*Nb> >= |<ab'>|^2",
    "hz_su11": "<Na><Nb> >= |<ab>|^2",
    "k_phi_variance": "var(K(phi)) >= 1/4",
    "hz_three_mode": "sqrt(<Na*Nb*Nc>) >= |<ab'c'>|",
}


def witness_formula(name: str) -> str:
    return _FORMULAS[name]


def witness_kind(name: str) -> str:
    return _KINDS[name]


def run_witness(name: str, state: State, **kwargs: Any) -> WitnessReport:
    """Evaluate a single witness by registry name."""
    for reg_name, modes, fn in _REGISTRY:
        if reg_name == name:
            if state.space.modes != modes:
                raise ValueError(
                    f"{name} needs a {modes}-mode state, got {state.space.modes} modes"
                )
            return fn(state, **kwargs)
    raise ValueError(f"unknown witness {name!r}; choose from {', '.join(WITNESS_NAMES)}")


def evaluate_all(
    state: State,
    *,
    boundary_tol: float = BOUNDARY_TOL,
    leakage_warn: float = LEAKAGE_WARN,
    leakage_error: float = LEAKAGE_ERROR,
) -> list[WitnessReport]:
    """Every witness in registry order; wrong-arity ones become not_applicable.

    Never raises: a witness that refuses to evaluate (leakage guard) is
    reported as not_applicable with the failure message in ``extras`` —
    callers that need a hard stop should run the guard themselves first.
    """
    reports = []
    for name, modes, fn in _REGISTRY:
        if state.space.modes != modes:
            reports.append(
                WitnessReport(
                    name=name,
                    kind=_KINDS[name],
                    lhs=0.0,
                    rhs=0.0,
                    margin=0.0,
                    verdict=NOT_APPLICABLE,
                    leakage=0.0,
                    formula=_FORMULAS[name],
                )
            )
            continue
        try:
            reports.append(
                fn(
                    state,
                    boundary_tol=boundary_tol,
                    leakage_warn=leakage_warn,
                    leakage_error=leakage_error,
                )
            )
        except LeakageError as exc:
            reports.append(
                WitnessReport(
                    name=name,
                    kind=_KINDS[name],
                    lhs=0.0,
                    rhs=0.0,
                    margin=0.0,
                    verdict=NOT_APPLICABLE,
                    leakage=truncation_leakage(state),
                    formula=_FORMULAS[name],
                    extras={"error": str(exc)},
                )
            )
    return reports
