"""
Command-line front end: describe, residual, solve, sweep, verify, classify,
cases and corollary. JSON goes to stdout (or --output), logs to stderr.
"""

import argparse
import io
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence, Tuple

from src.grs3d import config
from src.grs3d.algebra_catalog import FamilyInstance, FamilyTag, instance_from_dict, make_instance
from src.grs3d.errors import GRSError, SchemaError
from src.grs3d.grs_system import CandidateSolution, SolitonParams, classify_named, residual
from src.grs3d.helpers import (
    build_cases_report,
    build_classify_report,
    build_corollary_report,
    build_describe_report,
    build_residual_report,
    build_solve_report,
    build_verify_report,
    dump_json,
    parse_assignments,
    parse_grid,
    parse_number,
    parse_vector,
)
from src.grs3d.soliton_solver import SolveConfig, SolutionSet, solve, sweep, write_sweep_csv
from src.grs3d.theorem_atlas import all_cases, all_claims, verify_all, verify_case, verify_corollary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FAMILY_CHOICES = [tag.value for tag in FamilyTag]


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad usage."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise SchemaError(message)


def _number(raw: str):
    return parse_number(raw)


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILY_CHOICES)
    p.add_argument("--params", action="append", metavar="K=V[,K=V...]")
    p.add_argument("--instance-file", help="JSON with family and params (describe output works)")


def _soliton_args(p: argparse.ArgumentParser, lam_required: bool = False) -> None:
    p.add_argument("--alpha", type=_number, required=True)
    p.add_argument("--beta", type=_number, required=True)
    p.add_argument("--lambda", dest="lam", type=_number, required=lam_required)


def _solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--starts", type=int, default=config.DEFAULT_STARTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=float, default=config.DEFAULT_BOX)
    p.add_argument("--dedup-radius", type=float, default=config.DEFAULT_DEDUP_RADIUS)
    p.add_argument("--max-iters", type=int, default=config.DEFAULT_MAX_ITERS)
    p.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--tol", type=float, default=None, help="residual tolerance (env GRS3D_TOL)")

    parser = _Parser(prog="grs3d", description="Generalized Ricci solitons on 3D metric Lie groups")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("describe", parents=[common], help="structure, curvature and group of an instance")
    _instance_args(p)

    p = sub.add_parser("residual", parents=[common], help="evaluate the soliton residual")
    _instance_args(p)
    _soliton_args(p, lam_required=True)
    p.add_argument("--X", nargs=3, metavar=("X1", "X2", "X3"))

    p = sub.add_parser("solve", parents=[common], help="multistart search for solutions")
    _instance_args(p)
    _soliton_args(p)
    _solver_args(p)
    p.add_argument("--diagnostics", action="store_true", help="include per-start records")

    p = sub.add_parser("sweep", parents=[common], help="solve over a parameter grid")
    p.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    p.add_argument("--grid", action="append", required=True, metavar="K=v1:v2|K=lo..hi/n")
    _soliton_args(p)
    _solver_args(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", parents=[common], help="check theorem cases by substitution")
    p.add_argument("--theorem", default="all", help="case id or 'all'")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("classify", parents=[common], help="named equation for (alpha, beta, lambda)")
    _soliton_args(p)
    p.add_argument("--dim", type=int, default=3)

    p = sub.add_parser("cases", parents=[common], help="list registered theorem cases")
    p.add_argument("--family", choices=FAMILY_CHOICES)

    p = sub.add_parser("corollary", parents=[common], help="check corollary witnesses")
    p.add_argument("--claim", default="all", help="claim id or 'all'")

    return parser


# ------------------------------------------------------------------
# Commands
# ------------------------------------------------------------------

def _load_instance(args: argparse.Namespace) -> FamilyInstance:
    if args.instance_file:
        try:
            with open(args.instance_file, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise SchemaError(f"Cannot read instance file {args.instance_file}: {e}") from e
        return instance_from_dict(data)
    if not args.family:
        raise SchemaError("Pass --family with --params, or --instance-file")
    return make_instance(args.family, parse_assignments(args.params))


def _solve_config(args: argparse.Namespace) -> SolveConfig:
    return SolveConfig(
        starts=args.starts,
        seed=args.seed,
        box=args.box,
        tol=config.resolve_tol(args.tol),
        dedup_radius=args.dedup_radius,
        max_iters=args.max_iters,
        workers=args.workers,
    )


def cmd_describe(args: argparse.Namespace) -> Tuple[str, int]:
    return dump_json(build_describe_report(_load_instance(args))), EXIT_OK


def cmd_residual(args: argparse.Namespace) -> Tuple[str, int]:
    inst = _load_instance(args)
    X = parse_vector(args.X)
    tol = config.resolve_tol(args.tol)
    cand = CandidateSolution(tuple(X), SolitonParams(args.alpha, args.beta, args.lam))
    report = residual(inst, cand, tol)
    return dump_json(build_residual_report(inst, report, tol)), EXIT_OK


def cmd_solve(args: argparse.Namespace) -> Tuple[str, int]:
    cfg = _solve_config(args)
    inst = _load_instance(args)
    result: SolutionSet = solve(inst, args.alpha, args.beta, args.lam, cfg)
    return dump_json(build_solve_report(inst, result, cfg, args.diagnostics)), EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> Tuple[str, int]:
    cfg = _solve_config(args)
    grid = parse_grid(args.grid)
    rows = sweep(args.family, grid, args.alpha, args.beta, cfg, lam=args.lam)
    if args.format == "json":
        data = [
            {"family": r.family.value, "params": r.params, "alpha": r.alpha,
             "beta": r.beta, "lambda": r.lam, "n_solutions": r.n_solutions,
             "min_residual": r.min_residual, "ew_compat": r.ew_compat, "ps_compat": r.ps_compat,
             "vnh_compat": r.vnh_compat, "manifold_flag": r.manifold_flag, "einstein": r.einstein}
            for r in rows
        ]
        return dump_json({"rows": data}), EXIT_OK
    buf = io.StringIO()
    write_sweep_csv(rows, buf)
    return buf.getvalue(), EXIT_OK


def cmd_verify(args: argparse.Namespace) -> Tuple[str, int]:
    if args.theorem == "all":
        reports = verify_all(args.samples, args.seed, args.tol)
    else:
        reports = [verify_case(args.theorem, args.samples, args.seed, args.tol)]
    data = build_verify_report(reports)
    return dump_json(data), EXIT_FAILED if data["failed"] else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> Tuple[str, int]:
    named = classify_named(SolitonParams(args.alpha, args.beta, args.lam), args.dim)
    return dump_json(build_classify_report(named)), EXIT_OK


def cmd_cases(args: argparse.Namespace) -> Tuple[str, int]:
    cases = [c for c in all_cases() if args.family is None or c.family.value == args.family]
    return dump_json(build_cases_report(cases)), EXIT_OK


def cmd_corollary(args: argparse.Namespace) -> Tuple[str, int]:
    ids = [c.id for c in all_claims()] if args.claim == "all" else [args.claim]
    reports = [verify_corollary(i, args.tol) for i in ids]
    data = build_corollary_report(reports)
    return dump_json(data), EXIT_OK if data["passes"] else EXIT_FAILED


COMMANDS: Dict[str, Callable[[argparse.Namespace], Tuple[str, int]]] = {
    "describe": cmd_describe,
    "residual": cmd_residual,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "cases": cmd_cases,
    "corollary": cmd_corollary,
}


def _emit(text: str, output: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and emit; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SchemaError as e:
        logger.error("Usage error: %s", e)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    try:
        text, code = COMMANDS[args.command](args)
    except GRSError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE

    try:
        _emit(text, args.output)
    except OSError as e:
        logger.error("Cannot write output %s: %s", args.output, e)
        return EXIT_USAGE
    return code


def main() -> None:
    sys.exit(run())
