"""Command-line front end.

Four subcommands:

* ``witness`` — build a state, evaluate witnesses, emit JSON or CSV.
* ``sweep``   — evaluate witnesses along a numeric parameter range, emit CSV.
* ``ppt``     — run the spectral partial-transpose oracle on a state.
* ``selftest``— run the built-in invariant suites.

Outputs are deterministic byte-for-byte for a fixed configuration and
seed: no timestamps, fixed key ordering, shortest-round-trip float
formatting.  Every artifact embeds the tool version, seed, cutoffs,
tolerances, and the formula string of each witness evaluated.

Exit codes: 0 success, 1 selftest failure, 2 invalid state spec or flags,
3 leakage guard tripped, 4 oracle dimension cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Any, Sequence

from . import __version__
from .fock import DensityOperator, StateVector
from .jacobi import backend_name
from .moments import LEAKAGE_ERROR, LEAKAGE_WARN, LeakageError, check_leakage
from .ppt import NEGATIVITY_FLOOR, ORACLE_MAX_DIM, OracleCapError, ppt_spectrum
from .selftest import run_selftest
from .states import (
    FAMILIES,
    StateSpec,
    build_state,
    default_cutoffs,
    spec_from_dict,
)
from .witnesses import (
    BOUNDARY_TOL,
    WITNESS_NAMES,
    WitnessReport,
    evaluate_all,
    run_witness,
    witness_formula,
)

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_BAD_SPEC = 2
EXIT_LEAKAGE = 3
EXIT_ORACLE_CAP = 4

#: fixed sweep-CSV column order
SWEEP_COLUMNS = ("param", "name", "kind", "lhs", "rhs", "margin", "verdict", "leakage")
#: fixed witness-CSV column order
WITNESS_COLUMNS = ("name", "kind", "lhs", "rhs", "margin", "verdict", "leakage", "formula")

_INT_RE = re.compile(r"^[+-]?\d+$")


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _parse_value(text: str) -> Any:
    lowered = text.strip().lower()
    if lowered in ("none", "null"):
        return None
    if _INT_RE.match(text.strip()):
        return int(text)
    for cast in (float, complex):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def _parse_params(pairs: Sequence[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"--param needs NAME=VALUE, got {pair!r}")
        name, _, value = pair.partition("=")
        params[name.strip()] = _parse_value(value)
    return params


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"{flag} needs comma-separated integers, got {text!r}") from exc


def _spec_from_args(args: argparse.Namespace) -> StateSpec:
    if args.spec_file and args.family:
        raise ValueError("give either --family or --spec-file, not both")
    if args.spec_file:
        with open(args.spec_file, encoding="utf-8") as handle:
            try:
                payload = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ValueError(f"spec file is not valid JSON: {exc}") from exc
        return spec_from_dict(payload)
    if not args.family:
        raise ValueError("a state is needed: pass --family or --spec-file")
    params = _parse_params(args.param)
    if args.occ is not None:
        if args.family != "fock":
            raise ValueError("--occ only applies to the fock family")
        params["occupations"] = list(_parse_int_list(args.occ, "--occ"))
    if args.family in ("random_pure", "random_separable"):
        params.setdefault("seed", args.seed)
    cutoffs = _parse_int_list(args.cutoffs, "--cutoffs") if args.cutoffs else None
    return StateSpec(args.family, params, cutoffs)


def _witness_names(selection: Sequence[str] | None) -> tuple[str, ...] | None:
    """Validated explicit names, or None for the full suite."""
    if not selection or "all" in selection:
        unknown = [n for n in selection or [] if n != "all" and n not in WITNESS_NAMES]
        if unknown:
            raise ValueError(f"unknown witness names {unknown}")
        return None
    unknown = [n for n in selection if n not in WITNESS_NAMES]
    if unknown:
        raise ValueError(
            f"unknown witness names {unknown}; choose from {', '.join(WITNESS_NAMES)}"
        )
    return tuple(dict.fromkeys(selection))


def _jsonable(value: Any) -> Any:
    if isinstance(value, complex):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _metadata(args: argparse.Namespace, spec: StateSpec) -> dict[str, Any]:
    meta: dict[str, Any] = {
        "version": __version__,
        "family": spec.family,
        "params": _jsonable(dict(spec.params)),
        "cutoffs": list(spec.cutoffs or default_cutoffs(spec)),
        "seed": getattr(args, "seed", None),
        "tolerances": {
            "boundary_tol": getattr(args, "boundary_tol", BOUNDARY_TOL),
            "leakage_warn": getattr(args, "leakage_warn", LEAKAGE_WARN),
            "leakage_error": getattr(args, "leakage_error", LEAKAGE_ERROR),
        },
    }
    return meta


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    outdir = os.environ.get("FOCKWITNESS_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _emit(text: str, path: str | None) -> None:
    target = _resolve_output(path)
    if target is None:
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _fmt(value: float) -> str:
    return repr(float(value))


def _report_dict(report: WitnessReport) -> dict[str, Any]:
    return {
        "name": report.name,
        "kind": report.kind,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "verdict": report.verdict,
        "leakage": report.leakage,
        "formula": report.formula,
        "extras": _jsonable(dict(report.extras)),
    }


def _meta_comment_lines(meta: dict[str, Any], names: Sequence[str]) -> list[str]:
    lines = [
        f"# fockwitness {meta['version']}",
        f"# family: {meta['family']}",
        f"# params: {json.dumps(meta['params'], sort_keys=True)}",
        f"# cutoffs: {','.join(str(c) for c in meta['cutoffs'])}",
        f"# seed: {meta['seed']}",
    ]
    for key, value in sorted(meta["tolerances"].items()):
        lines.append(f"# {key}: {value!r}")
    for name in names:
        lines.append(f"# formula {name}: {witness_formula(name)}")
    return lines


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _evaluate(
    state: StateVector | DensityOperator,
    names: tuple[str, ...] | None,
    args: argparse.Namespace,
) -> list[WitnessReport]:
    kwargs = {
        "boundary_tol": args.boundary_tol,
        "leakage_warn": args.leakage_warn,
        "leakage_error": args.leakage_error,
    }
    if names is None:
        return evaluate_all(state, **kwargs)
    return [run_witness(name, state, **kwargs) for name in names]


def cmd_witness(args: argparse.Namespace) -> int:
    names = _witness_names(args.witness)
    spec = _spec_from_args(args)
    state = build_state(spec)
    check_leakage(state, args.leakage_warn, args.leakage_error)
    reports = _evaluate(state, names, args)
    meta = _metadata(args, spec)
    if args.format == "json":
        payload = {"meta": meta, "reports": [_report_dict(r) for r in reports]}
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
    else:
        lines = _meta_comment_lines(meta, [r.name for r in reports])
        lines.append(",".join(WITNESS_COLUMNS))
        for r in reports:
            lines.append(
                ",".join(
                    (
                        r.name,
                        r.kind,
                        _fmt(r.lhs),
                        _fmt(r.rhs),
                        _fmt(r.margin),
                        r.verdict,
                        _fmt(r.leakage),
                        r.formula,
                    )
                )
            )
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _parse_sweep(text: str) -> tuple[str, float, float, float]:
    if "=" not in text:
        raise ValueError(f"--sweep needs NAME=START:STOP:STEP, got {text!r}")
    name, _, rng = text.partition("=")
    parts = rng.split(":")
    if len(parts) != 3:
        raise ValueError(f"--sweep needs NAME=START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"sweep range {rng!r} is not numeric") from exc
    if step <= 0.0:
        raise ValueError(f"sweep step must be positive, got {step!r}")
    if stop < start:
        raise ValueError(f"sweep stop {stop!r} is below start {start!r}")
    return name.strip(), start, stop, step


def _sweep_values(start: float, stop: float, step: float) -> list[float]:
    if start == stop:
        return []
    count = int((stop - start) / step + 1e-9) + 1
    return [start + k * step for k in range(count)]


def cmd_sweep(args: argparse.Namespace) -> int:
    names = _witness_names(args.witness)
    param, start, stop, step = _parse_sweep(args.sweep)
    spec = _spec_from_args(args)
    meta = _metadata(args, spec)
    meta["sweep"] = {"param": param, "start": start, "stop": stop, "step": step}
    listed = list(names) if names is not None else list(WITNESS_NAMES)
    lines = _meta_comment_lines(meta, listed)
    lines.append(
        f"# sweep: {param}={_fmt(start)}:{_fmt(stop)}:{_fmt(step)}"
    )
    lines.append(",".join(SWEEP_COLUMNS))
    for value in _sweep_values(start, stop, step):
        point = StateSpec(
            spec.family, {**dict(spec.params), param: value}, spec.cutoffs, spec.mix
        )
        state = build_state(point)
        check_leakage(state, args.leakage_warn, args.leakage_error)
        reports = _evaluate(state, names, args)
        for r in sorted(reports, key=lambda r: r.name):
            lines.append(
                ",".join(
                    (
                        _fmt(value),
                        r.name,
                        r.kind,
                        _fmt(r.lhs),
                        _fmt(r.rhs),
                        _fmt(r.margin),
                        r.verdict,
                        _fmt(r.leakage),
                    )
                )
            )
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_ppt(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    state = build_state(spec)
    spectrum = ppt_spectrum(state, args.mode, args.max_dim)
    meta = _metadata(args, spec)
    meta["backend"] = backend_name()
    payload = {
        "meta": meta,
        "mode": args.mode,
        "dim": int(spectrum.eigenvalues.size),
        "min_eigenvalue": spectrum.min,
        "negativity": spectrum.negativity,
        "residual": spectrum.residual,
        "verdict": "NPT" if spectrum.min < -NEGATIVITY_FLOOR else "PPT",
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    result = run_selftest(
        seed=args.seed,
        cutoff=args.cutoff,
        samples=args.samples,
        boundary_tol=args.boundary_tol,
        leakage_warn=args.leakage_warn,
        leakage_error=args.leakage_error,
    )
    print(f"fockwitness {__version__} selftest (backend: {backend_name()})")
    if result.non_default:
        print("non-default configuration: " + "; ".join(result.non_default))
    for suite in result.suites:
        print(f"{suite.name}: {suite.passed} passed, {suite.failed} failed")
        for failure in suite.failures:
            print(f"  FAIL {failure}")
        for note in suite.notes:
            print(f"  note: {note}")
    total_failed = sum(s.failed for s in result.suites)
    print("result: " + ("ok" if result.ok else f"{total_failed} failure(s)"))
    return EXIT_OK if result.ok else EXIT_SELFTEST


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=FAMILIES, help="state family to build")
    parser.add_argument("--spec-file", help="path to a JSON state spec")
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="family parameter, repeatable",
    )
    parser.add_argument("--occ", metavar="N0,N1,...", help="occupations (fock family)")
    parser.add_argument("--cutoffs", metavar="C0,C1,...", help="per-mode dimensions")
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for random families, recorded in output"
    )


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--boundary-tol", type=float, default=BOUNDARY_TOL)
    parser.add_argument("--leakage-warn", type=float, default=LEAKAGE_WARN)
    parser.add_argument("--leakage-error", type=float, default=LEAKAGE_ERROR)


def _add_witness_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--witness",
        action="append",
        metavar="NAME",
        help="witness to evaluate, repeatable; 'all' (default) runs the suite",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockwitness",
        description="Entanglement witnesses for truncated multimode Fock states.",
    )
    parser.add_argument(
        "--version", action="version", version=f"fockwitness {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    witness = sub.add_parser("witness", help="evaluate witnesses on one state")
    _add_state_flags(witness)
    _add_tolerance_flags(witness)
    _add_witness_flag(witness)
    witness.add_argument("--format", choices=("json", "csv"), default="json")
    witness.add_argument("--output", "-o", help="output path (default: stdout)")

    sweep = sub.add_parser("sweep", help="evaluate witnesses along a parameter range")
    _add_state_flags(sweep)
    _add_tolerance_flags(sweep)
    _add_witness_flag(sweep)
    sweep.add_argument(
        "--sweep",
        required=True,
        metavar="NAME=START:STOP:STEP",
        help="numeric family parameter range (START==STOP emits a header-only CSV)",
    )
    sweep.add_argument("--output", "-o", help="output path (default: stdout)")

    ppt = sub.add_parser("ppt", help="spectral partial-transpose oracle")
    _add_state_flags(ppt)
    ppt.add_argument("--mode", type=int, default=1, help="mode to transpose")
    ppt.add_argument("--max-dim", type=int, default=ORACLE_MAX_DIM)
    ppt.add_argument("--output", "-o", help="output path (default: stdout)")

    selftest = sub.add_parser("selftest", help="run the built-in invariant suites")
    selftest.add_argument("--seed", type=int, default=12345)
    selftest.add_argument(
        "--cutoff", type=int, default=10, help="cutoff for the commutator suites"
    )
    selftest.add_argument("--samples", type=int, default=25)
    _add_tolerance_flags(selftest)
    return parser


_COMMANDS = {
    "witness": cmd_witness,
    "sweep": cmd_sweep,
    "ppt": cmd_ppt,
    "selftest": cmd_selftest,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except OracleCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_CAP
    except LeakageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LEAKAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC


if __name__ == "__main__":
    sys.exit(main())
