"""
Every command prints one JSON envelope ``{command, inputs, result, exact}``
on stdout; ``--pretty`` renders the same payload with rich instead.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Literal, TypedDict

import humanize
import rich.console
import rich.logging
import rich.table

from . import __version__, fibrations, local_signature, numeric_invariants, plane_curves
from .chow_p1xp2 import hypersurface_chern
from .errors import (
    DimensionMismatch,
    GenusMismatch,
    MeyerSignatureError,
    NegativeCount,
    NotASingularPoint,
    NotSymplectic,
    ParseError,
)
from .exact_linalg import GaussianRational, RationalMatrix, format_rational, symmetric_signature
from .progress import SweepProgress, default_progress_bar
from .symplectic_meyer import SymplecticMatrix, meyer_cocycle, meyer_form
from .verify import SUITES, SweepConfig, run_sweeps

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_SYMPLECTIC = 3
EXIT_DOMAIN = 4


class OutputEnvelope(TypedDict):
    command: str
    inputs: dict
    result: object
    exact: Literal[True]


class UsageError(Exception):
    """Bad command-line input; reported with exit code 2."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else format_rational(value)
    if isinstance(value, GaussianRational):
        return str(value)
    if isinstance(value, RationalMatrix):
        return _jsonable(value.tolist())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    raise TypeError(f"Cannot serialize {value!r}")


def _rational(value: Fraction | int) -> str:
    """Rationals are always strings in the output, even when integral."""
    return format_rational(value)


# Input helpers


def _read_argument(text: str) -> str:
    """``@path`` reads the argument from a file."""
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text()
        except OSError as e:
            raise ParseError(f"Cannot read {text[1:]}: {e.strerror}") from e
    return text


def _parse_json(text: str, what: str):
    try:
        return json.loads(_read_argument(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"{what} is not valid JSON: {e}") from e


def _parse_rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text.replace("−", "-").strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{text!r} is not a rational number") from e


def _symplectic(rows, g: int, what: str) -> SymplecticMatrix:
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ParseError(f"{what} must be a JSON array of rows")
    try:
        return SymplecticMatrix(g, tuple(tuple(row) for row in rows))
    except TypeError as e:
        raise ParseError(f"{what}: {e}") from e
    except NotSymplectic as e:
        raise NotSymplectic(f"{what}: {e}") from e


# Commands


def cmd_invariants(args) -> tuple[dict, object]:
    return {"degree": args.degree}, numeric_invariants.degree_profile(args.degree)


def cmd_meyer(args) -> tuple[dict, object]:
    if args.file is not None:
        data = _parse_json(f"@{args.file}", "--file")
        if not isinstance(data, dict) or "a" not in data or "b" not in data:
            raise ParseError('--file must hold {"a": [[...]], "b": [[...]]}')
        rows_a, rows_b = data["a"], data["b"]
        g = data.get("genus", args.genus)
    else:
        if args.matrix_a is None or args.matrix_b is None:
            raise UsageError("meyer needs --matrix-a and --matrix-b (or --file)")
        rows_a = _parse_json(args.matrix_a, "--matrix-a")
        rows_b = _parse_json(args.matrix_b, "--matrix-b")
        g = args.genus

    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise UsageError(f"Genus must be a positive integer, got {g!r}")

    A = _symplectic(rows_a, g, "A")
    B = _symplectic(rows_b, g, "B")

    result: dict = {"tau": meyer_cocycle(A, B).value}
    if args.form:
        gram = meyer_form(A, B)
        triple = symmetric_signature(gram)
        result |= {
            "dim_V": gram.rows,
            "gram": gram,
            "n_plus": triple.n_plus,
            "n_minus": triple.n_minus,
            "n_zero": triple.n_zero,
        }
    return {"genus": g, "a": A.tolist(), "b": B.tolist()}, result


def cmd_chern(args) -> tuple[dict, object]:
    if args.bidegree is not None:
        a, b = args.bidegree
    elif args.a is not None and args.b is not None:
        a, b = args.a, args.b
    else:
        raise UsageError("chern needs a bidegree: 'chern A B' or 'chern --bidegree A B'")
    chern = hypersurface_chern(a, b)
    return {"bidegree": [a, b]}, chern


def _load_germs(args) -> list[tuple[local_signature.GermType, int]]:
    if args.germs is None:
        return []
    try:
        return local_signature.load_germs(args.germs)
    except OSError as e:
        raise ParseError(f"Cannot read {args.germs}: {e.strerror}") from e


def cmd_locsig_total(args) -> tuple[dict, object]:
    germs = _load_germs(args)
    total = local_signature.total_signature(germs)
    return (
        {"germs": local_signature.germs_to_json(germs)},
        {
            "signature": _rational(total.value),
            "integral": total.integral,
            "euler": local_signature.total_euler(germs),
        },
    )


def cmd_locsig_solve(args) -> tuple[dict, object]:
    germs = _load_germs(args)
    total_sign = _parse_rational_arg(args.total_sign)
    value = local_signature.solve_unknown(total_sign, germs, args.unknown_count)
    return (
        {
            "germs": local_signature.germs_to_json(germs),
            "total_sign": _rational(total_sign),
            "unknown_count": args.unknown_count,
        },
        {"loc_sig": _rational(value)},
    )


def cmd_locsig_euler(args) -> tuple[dict, object]:
    count = local_signature.typeI_count_from_euler(args.c2, args.genus, args.other_euler)
    return (
        {"c2": args.c2, "genus": args.genus, "other_euler": args.other_euler},
        {"type_i_count": count},
    )


def cmd_locsig_replay(args) -> tuple[dict, object]:
    match args.scenario:
        case "hyperelliptic":
            scenario = fibrations.hyperelliptic_scenario()
        case "type-ii":
            scenario = fibrations.type_ii_scenario(args.m)
        case "pencil":
            scenario = fibrations.pencil_scenario(args.degree)
        case _:  # pragma: no cover
            raise UsageError(f"Unknown scenario {args.scenario}")

    derivation = fibrations.replay(scenario)
    return (
        {"scenario": scenario.name, "c1_squared": scenario.c1_squared, "c2": scenario.c2},
        {
            "signature": _rational(derivation.signature),
            "type_i_count": derivation.type_i_count,
            "germ": str(derivation.solved_germ.label or derivation.solved_germ.tag),
            "loc_sig": _rational(derivation.solved_loc_sig),
            "phi": _rational(derivation.solved_phi),
            "consistent": derivation.consistent,
        },
    )


def _curve_inputs(args, need_point: bool) -> tuple[plane_curves.HomogPoly, plane_curves.ProjPoint | None]:
    F = plane_curves.parse_poly(_read_argument(args.poly))
    if args.point is None:
        if need_point:
            raise UsageError(f"curve {args.curve_command} needs --point")
        return F, None
    return F, plane_curves.parse_point(args.point)


def cmd_curve(args) -> tuple[dict, object]:
    need_point = args.curve_command != "conic"
    F, p = _curve_inputs(args, need_point)
    inputs = {"poly": plane_curves.format_poly(F), "degree": F.degree}
    if p is not None:
        inputs["point"] = [str(c) for c in p.coords]

    match args.curve_command:
        case "singular":
            result = {"singular": plane_curves.is_singular_point(F, p)}
        case "classify":
            result = {"class": str(plane_curves.classify_double_point(F, p))}
        case "tangent":
            result = {"hyperplane": plane_curves.discriminant_tangent_hyperplane(p, F.degree)}
        case "gradient":
            result = {"gradient": plane_curves.gradient(F, p)}
        case "hessian":
            chart, det = plane_curves.hessian_determinant(F, p)
            result = {"chart": chart, "determinant": det}
        case "conic":
            S = plane_curves.conic_matrix(F)
            result = {
                "matrix": S,
                "determinant": plane_curves.conic_determinant(F),
                "smooth": plane_curves.conic_is_smooth(F),
                "singular_points": [
                    [str(c) for c in q.coords] for q in plane_curves.singular_points_of_conic(F)
                ],
            }
        case _:  # pragma: no cover
            raise UsageError(f"Unknown curve command {args.curve_command}")

    return inputs, result


def cmd_verify(args) -> tuple[dict, object, int]:
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["cocycle_trials"] = args.trials
    try:
        config = SweepConfig(**overrides)
    except ValueError as e:
        raise UsageError(str(e)) from e

    if args.pretty:
        progress = SweepProgress(
            len(SUITES),
            progress_bar=default_progress_bar(rich.console.Console(stderr=True)),
            overall_description="Checks",
        )
    else:
        progress = SweepProgress(len(SUITES))

    with progress:
        report = run_sweeps(config, progress)

    result = {
        "ok": report.ok,
        "checks": report.checks,
        "suites": [
            {"name": s.name, "checks": s.checks, "failures": list(s.failures)}
            for s in report.suites
        ],
    }
    return dataclasses.asdict(config), result, EXIT_OK if report.ok else EXIT_FAILED


# Rendering


def _render_pretty(console: rich.console.Console, command: str, inputs: dict, result) -> None:
    console.rule(f"[bold]{command}")
    for title, payload in (("inputs", inputs), ("result", result)):
        table = rich.table.Table(title=title, show_header=False, title_justify="left")
        table.add_column(style="cyan")
        table.add_column()
        payload = _jsonable(payload)
        for key, value in payload.items() if isinstance(payload, dict) else [("value", payload)]:
            if isinstance(value, int) and not isinstance(value, bool):
                text = humanize.intcomma(value)
            elif isinstance(value, str):
                text = value
            else:
                text = json.dumps(value)
            table.add_row(key, text)
        console.print(table)


def _emit(console: rich.console.Console, args, command: str, inputs: dict, result) -> None:
    if args.pretty:
        _render_pretty(console, command, inputs, result)
        return
    envelope = OutputEnvelope(command=command, inputs=inputs, result=result, exact=True)
    console.file.write(json.dumps(_jsonable(envelope), sort_keys=False) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="meyer-signature",
        description="Exact computations around the Meyer function of plane curve families.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--pretty", action="store_true", help="Human-readable output instead of JSON")

    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = commands.add_parser("invariants", help="Closed-form invariants of the degree-d family")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.set_defaults(handler=cmd_invariants)

    p = commands.add_parser("meyer", help="Meyer cocycle tau_g(A, B)")
    p.add_argument("--genus", "-g", type=int, default=1)
    p.add_argument("--matrix-a", help="JSON array of rows (or @path)")
    p.add_argument("--matrix-b", help="JSON array of rows (or @path)")
    p.add_argument("--file", help='JSON file {"a": ..., "b": ..., "genus": g}')
    p.add_argument("--form", action="store_true", help="Also print the Gram matrix and inertia")
    p.set_defaults(handler=cmd_meyer)

    p = commands.add_parser("chern", help="Chern numbers of a hypersurface in P^1 x P^2")
    p.add_argument("a", type=int, nargs="?")
    p.add_argument("b", type=int, nargs="?")
    p.add_argument("--bidegree", type=int, nargs=2, metavar=("A", "B"))
    p.set_defaults(handler=cmd_chern)

    locsig = commands.add_parser("locsig", help="Local signature calculus")
    locsig_commands = locsig.add_subparsers(
        dest="locsig_command", required=True, parser_class=_ArgumentParser
    )

    p = locsig_commands.add_parser("total", help="Sum of local signatures")
    p.add_argument("--germs", help="Germ list JSON file")
    p.set_defaults(handler=cmd_locsig_total)

    p = locsig_commands.add_parser("solve", help="Solve for an unknown local signature")
    p.add_argument("--germs", help="Germ list JSON file of the known germs")
    p.add_argument("--total-sign", required=True, help="Signature of the total space, p/q")
    p.add_argument("--unknown-count", type=int, default=1)
    p.set_defaults(handler=cmd_locsig_solve)

    p = locsig_commands.add_parser("euler", help="Number of type I fibers from the Euler number")
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--other-euler", type=int, default=0)
    p.set_defaults(handler=cmd_locsig_euler)

    p = locsig_commands.add_parser("replay", help="Re-derive a local signature from a fibration")
    p.add_argument("scenario", choices=["hyperelliptic", "type-ii", "pencil"])
    p.add_argument("--m", type=int, default=7, help="Order of the type II family")
    p.add_argument("--degree", "-d", type=int, default=4, help="Degree of the pencil")
    p.set_defaults(handler=cmd_locsig_replay)

    curve = commands.add_parser("curve", help="Plane curve singularities")
    curve_commands = curve.add_subparsers(
        dest="curve_command", required=True, parser_class=_ArgumentParser
    )
    for name, help_text in (
        ("singular", "Whether the gradient vanishes at the point"),
        ("classify", "Nodal or degenerate double point"),
        ("tangent", "Tangent hyperplane to the discriminant"),
        ("gradient", "Gradient at the point"),
        ("hessian", "Chart Hessian determinant at the point"),
        ("conic", "Conic matrix, determinant and smoothness"),
    ):
        p = curve_commands.add_parser(name, help=help_text)
        p.add_argument("--poly", required=True, help="Homogeneous polynomial (or @path)")
        p.add_argument("--point", help="x,y,z or [x:y:z]")
        p.set_defaults(handler=cmd_curve)

    p = commands.add_parser("verify", help="Run the verification sweeps")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, help="Number of random cocycle triples")
    p.set_defaults(handler=cmd_verify)

    return parser


def _configure_logging(verbose: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    handler = rich.logging.RichHandler(
        console=rich.console.Console(stderr=True), show_path=False, show_time=False
    )
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


def _exit_code(error: Exception, command: str | None) -> int:
    if isinstance(error, (NegativeCount, NotASingularPoint)):
        return EXIT_DOMAIN
    if command == "meyer" and isinstance(error, (NotSymplectic, DimensionMismatch, GenusMismatch)):
        return EXIT_SYMPLECTIC
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    stderr = rich.console.Console(stderr=True, highlight=False)

    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        stderr.print(f"{parser.prog}: error: {e}", markup=False, soft_wrap=True)
        return EXIT_INPUT

    _configure_logging(args.verbose)
    logger.debug("Arguments: %s", {k: v for k, v in vars(args).items() if k != "handler"})
    stdout = rich.console.Console(file=sys.stdout)

    handler: Callable = args.handler
    try:
        if args.command == "verify":
            inputs, result, code = handler(args)
        else:
            inputs, result = handler(args)
            code = EXIT_OK
    except (MeyerSignatureError, UsageError, ValueError, TypeError) as e:
        stderr.print(f"{parser.prog} {args.command}: {e}", markup=False, soft_wrap=True)
        return _exit_code(e, args.command)

    command = " ".join(
        part
        for part in (
            args.command,
            getattr(args, "locsig_command", None),
            getattr(args, "curve_command", None),
        )
        if part
    )
    _emit(stdout, args, command, inputs, result)
    return code
