"""Command-line front end: k-sweeps, convergence studies, decompositions and duality checks.

Sweeps are written as CSV, structured reports as JSON. Every command computes
its whole result before writing anything, so a failing invocation never
leaves partial output behind.

Exit codes: 0 success, 1 duality/assertion failure, 2 invalid input.
"""

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from .connections import decompose
from .connections import decomposition_to_chain
from .connections import reconstruction_error
from .connections import v_delta
from .connections import v_epsilon
from .connections import v_general
from .exceptions import ContactInteractionError
from .exceptions import DualityViolationError
from .exceptions import InvalidParameterError
from .loader import load_chain_file
from .regularization import convergence_study
from .regularization import realize_with_deltas
from .schema import DeltaInteraction
from .schema import EpsilonInteraction
from .schema import InteractionChain
from .schema import Mat2R
from .schema import SweepSpec
from .scattering import duality_check
from .scattering import fermion_boson_duality_check
from .scattering import scatter
from .scattering import scatter_chain
from .scattering import scatter_identical
from .utils import format_number
from .utils import parse_grid
from .utils import parse_matrix
from .utils import parse_site

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = "CONTACT_INTERACTIONS_LOG_LEVEL"
CLI_DUALITY_TOL = 1e-10

SCATTER_COLUMNS = ["k", "T", "R", "Re_A", "Im_A", "Re_B", "Im_B"]
IDENTICAL_COLUMNS = ["k", "Re_C", "Im_C", "C_phase"]


class Output:
    """A computed result in both tabular and structured form."""

    def __init__(self, columns: list[str], rows: list[list[float | str]], document: dict[str, Any]):
        self.columns = columns
        self.rows = rows
        self.document = document

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.document, indent=2) + "\n"
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_number(x) if isinstance(x, float) else x for x in row])
        return buffer.getvalue()


def _interaction_matrix(args: argparse.Namespace) -> Mat2R:
    if args.delta is not None:
        return v_delta(args.delta)
    if args.epsilon is not None:
        return v_epsilon(args.epsilon)
    if args.matrix is not None:
        return v_general(*parse_matrix(args.matrix))
    raise InvalidParameterError("one of --delta, --epsilon or --matrix is required")


def _sweep_spec(
    args: argparse.Namespace,
    interaction: Mat2R | InteractionChain,
    quantity: str,
    statistics: str | None = None,
) -> SweepSpec:
    if args.k_grid is not None:
        grid = parse_grid(args.k_grid, log=args.log)
        k_min, k_max, k_count = grid[0], grid[-1], len(grid)
    else:
        k_min = k_max = args.k
        k_count = 1
    return SweepSpec(
        quantity=quantity,
        interaction=interaction,
        k_min=k_min,
        k_max=k_max,
        k_count=k_count,
        log=args.log,
        statistics=statistics,
    )


def _scattering_output(spec: SweepSpec) -> Output:
    rows: list[list[float | str]] = []
    for k in spec.k_values():
        if isinstance(spec.interaction, InteractionChain):
            result = scatter_chain(spec.interaction, k)
        else:
            result = scatter(spec.interaction, k)
        rows.append([k, result.T, result.R, result.A.real, result.A.imag, result.B.real, result.B.imag])
    column = SCATTER_COLUMNS.index(spec.quantity) if spec.quantity in SCATTER_COLUMNS else 1
    document = {
        "quantity": SCATTER_COLUMNS[column],
        "k": [row[0] for row in rows],
        "values": [row[column] for row in rows],
    }
    logger.info(f"Scattering sweep over {len(rows)} k-values")
    return Output(SCATTER_COLUMNS, rows, document)


def cmd_scatter(args: argparse.Namespace) -> Output:
    spec = _sweep_spec(args, _interaction_matrix(args), args.quantity)
    return _scattering_output(spec)


def cmd_identical(args: argparse.Namespace) -> Output:
    spec = _sweep_spec(args, _interaction_matrix(args), "C_phase", args.statistics)
    rows: list[list[float | str]] = []
    for k in spec.k_values():
        result = scatter_identical(spec.interaction, k, args.statistics)
        rows.append([k, result.C.real, result.C.imag, result.phase])
    document = {
        "statistics": args.statistics,
        "quantity": "C_phase",
        "k": [row[0] for row in rows],
        "values": [row[3] for row in rows],
    }
    return Output(IDENTICAL_COLUMNS, rows, document)


def _a_values(args: argparse.Namespace) -> list[float]:
    if args.a_grid is not None:
        return sorted(parse_grid(args.a_grid, log=args.log), reverse=True)
    if args.a is None:
        raise InvalidParameterError("one of --a or --a-grid is required")
    text = args.a.strip()
    if not text:
        raise InvalidParameterError("a-list is empty")
    try:
        return [float(item) for item in text.split(",")]
    except ValueError as e:
        raise InvalidParameterError(f"invalid a-list {args.a!r}: {e}") from e


def cmd_regularize(args: argparse.Namespace) -> Output:
    if args.u == 0:
        raise InvalidParameterError("epsilon strength must be nonzero", context={"u": args.u})
    report = convergence_study(args.u, args.k, _a_values(args))
    rows: list[list[float | str]] = [[p.a, p.error] for p in report.points]
    return Output(["a", "error"], rows, report.to_dict())


def cmd_decompose(args: argparse.Namespace) -> Output:
    text = args.matrix if args.matrix is not None else args.entries
    if text is None:
        raise InvalidParameterError("matrix entries t,v,u,s are required")
    matrix = v_general(*parse_matrix(text))
    decomposition = decompose(matrix, strategy=args.strategy)
    error = reconstruction_error(matrix, decomposition)
    steps = [{"kind": step.kind, "strength": step.strength} for step in decomposition.steps]
    document = {
        "matrix": list(matrix.entries()),
        "branch": decomposition.branch,
        "steps": steps,
        "reconstruction_error": error,
    }
    rows: list[list[float | str]] = [[step.kind, step.strength] for step in decomposition.steps]
    return Output(["kind", "strength"], rows, document)


def _duality_k_values(args: argparse.Namespace) -> list[float]:
    if args.k_grid is not None:
        return parse_grid(args.k_grid, log=args.log)
    return [args.k]


def cmd_duality(args: argparse.Namespace) -> tuple[Output, bool]:
    k_values = _duality_k_values(args)
    rows: list[list[float | str]] = []
    if args.mode == "tr":
        for k in k_values:
            report = duality_check(args.v, k, tol=math.inf)
            rows.append([k, report.deviation])
        document: dict[str, Any] = {"mode": "tr", "v": args.v}
    else:
        if args.u is None:
            raise InvalidParameterError("exchange duality needs --u")
        for k in k_values:
            report_x = fermion_boson_duality_check(args.v, args.u, k, tol=math.inf)
            rows.append([k, report_x.deviation])
        document = {"mode": "exchange", "v": args.v, "u": args.u}

    max_dev = max(float(row[1]) for row in rows)
    passed = max_dev <= CLI_DUALITY_TOL
    document.update({"k_count": len(rows), "max_dev": max_dev, "tolerance": CLI_DUALITY_TOL, "passed": passed})
    logger.info(f"Duality {args.mode}: max deviation {max_dev:.3e} over {len(rows)} k-values")
    return Output(["k", "deviation"], rows, document), passed


def _chain_from_args(args: argparse.Namespace) -> InteractionChain:
    sources = [args.file is not None, bool(args.site), args.realize is not None]
    if sum(sources) != 1:
        raise InvalidParameterError("give exactly one of --file, --site or --realize")
    if args.file is not None:
        return load_chain_file(Path(args.file))
    if args.site:
        sites: list[DeltaInteraction | EpsilonInteraction] = []
        for text in args.site:
            kind, strength, position = parse_site(text)
            if kind == "delta":
                sites.append(DeltaInteraction(strength=strength, position=position))
            else:
                sites.append(EpsilonInteraction(strength=strength, position=position))
        return InteractionChain(interactions=sorted(sites, key=lambda item: item.position))
    decomposition = decompose(v_general(*parse_matrix(args.realize)))
    if args.b is None:
        raise InvalidParameterError("--realize needs --b")
    if args.half_spacing is not None:
        return realize_with_deltas(decomposition, args.b, args.half_spacing)
    return decomposition_to_chain(decomposition, args.b)


def cmd_chain(args: argparse.Namespace) -> Output:
    chain = _chain_from_args(args)
    spec = _sweep_spec(args, chain, args.quantity)
    return _scattering_output(spec)


def _add_interaction_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta", type=float, metavar="V", help="delta potential of strength V (1/length)")
    group.add_argument("--epsilon", type=float, metavar="U", help="epsilon potential of strength U (length)")
    group.add_argument("--matrix", metavar="t,v,u,s", help="general connection matrix [[t, v], [u, s]]")


def _add_k_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--k", type=float, default=1.0, help="single wavenumber (default: 1.0)")
    group.add_argument("--k-grid", metavar="MIN:MAX:COUNT", help="wavenumber grid")
    parser.add_argument("--log", action="store_true", help="geometric grid spacing")


def _add_output_options(parser: argparse.ArgumentParser, default: str) -> None:
    parser.add_argument("--output", choices=["csv", "json"], default=default, help=f"format (default: {default})")
    parser.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contact-interactions",
        description="Generalized 1D contact interactions: scattering, regularization, factorization",
        allow_abbrev=False,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scatter", help="T/R sweep for a single contact interaction")
    _add_interaction_options(p)
    _add_k_options(p)
    p.add_argument("--quantity", choices=["T", "R"], default="T", help="quantity reported in JSON output")
    _add_output_options(p, "csv")

    p = sub.add_parser("identical", help="two identical particles: C(k) sweep")
    _add_interaction_options(p)
    _add_k_options(p)
    p.add_argument("--statistics", choices=["boson", "fermion"], required=True)
    _add_output_options(p, "csv")

    p = sub.add_parser("regularize", help="three-delta convergence study towards V_epsilon(u)")
    p.add_argument("--u", type=float, required=True, help="target epsilon strength")
    p.add_argument("--k", type=float, default=1.0, help="wavenumber (default: 1.0)")
    p.add_argument("--a", metavar="A1,A2,...", help="decreasing half-spacings")
    p.add_argument("--a-grid", metavar="MIN:MAX:COUNT", help="half-spacing grid (use with --log)")
    p.add_argument("--log", action="store_true", help="geometric grid spacing")
    _add_output_options(p, "json")

    p = sub.add_parser("decompose", help="delta/epsilon factorization of a connection matrix")
    p.add_argument("entries", nargs="?", metavar="t,v,u,s", help="matrix entries")
    p.add_argument("--matrix", metavar="t,v,u,s", help="matrix entries (use for negative t)")
    p.add_argument("--strategy", choices=["u-first", "larger"], default="u-first", help="three-factor branch choice")
    _add_output_options(p, "json")

    p = sub.add_parser("duality", help="delta/epsilon duality checks over a k-grid")
    p.add_argument("mode", choices=["tr", "exchange"])
    p.add_argument("--v", type=float, required=True, help="delta strength")
    p.add_argument("--u", type=float, help="epsilon strength (exchange mode, vu = 4)")
    _add_k_options(p)
    _add_output_options(p, "json")

    p = sub.add_parser("chain", help="T/R sweep through a chain of point interactions")
    p.add_argument("--site", action="append", metavar="KIND:STRENGTH@POS", help="add a delta or epsilon site")
    p.add_argument("--file", metavar="PATH", help="YAML chain description")
    p.add_argument("--realize", metavar="t,v,u,s", help="lay out the factorization of a matrix")
    p.add_argument("--b", type=float, help="factor spacing for --realize")
    p.add_argument("--a", dest="half_spacing", type=float, help="replace epsilons by three deltas of half-spacing A")
    _add_k_options(p)
    p.add_argument("--quantity", choices=["T", "R"], default="T", help="quantity reported in JSON output")
    _add_output_options(p, "csv")

    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, os.getenv(LOG_LEVEL_ENV, "WARNING").upper(), logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    passed = True
    try:
        if args.command == "scatter":
            output = cmd_scatter(args)
        elif args.command == "identical":
            output = cmd_identical(args)
        elif args.command == "regularize":
            output = cmd_regularize(args)
        elif args.command == "decompose":
            output = cmd_decompose(args)
        elif args.command == "duality":
            output, passed = cmd_duality(args)
        else:
            output = cmd_chain(args)
    except DualityViolationError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 1
    except ContactInteractionError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 2
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ()))
        print(f"error: {location}: {first.get('msg')}" if location else f"error: {first.get('msg')}", file=sys.stderr)
        return 2

    _emit(output.render(args.output), args.out)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
