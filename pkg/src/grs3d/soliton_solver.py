"""
Multistart Levenberg–Marquardt search for left-invariant generalized Ricci
solitons, and parameter sweeps built on it.
"""

import csv
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import IO, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from src.grs3d import config
from src.grs3d.algebra_catalog import FAMILY_PARAMS, FamilyInstance, FamilyTag, make_instance
from src.grs3d.curvature_engine import curvature_report, ricci
from src.grs3d.errors import ValidationError
from src.grs3d.grs_system import (
    UPPER,
    CandidateSolution,
    NamedEquation,
    SolitonParams,
    classify_named,
    lie_derivative_metric,
    residual,
)

logger = logging.getLogger(__name__)

# 2^3 isolated roots for three quadrics in three unknowns
BEZOUT_BOUND = 8
MANIFOLD_FACTOR = 10

SWEEP_HEADER = (
    "family", "A", "B", "C", "D", "eta", "alpha", "beta",
    "n_solutions", "min_residual", "ew_compat", "ps_compat", "vnh_compat",
)

_UPPER_ROWS = np.array([i for i, _ in UPPER])
_UPPER_COLS = np.array([j for _, j in UPPER])


class Unknowns(str, Enum):
    X_ONLY = "X_ONLY"
    X_AND_LAMBDA = "X_AND_LAMBDA"


@dataclass(frozen=True)
class SolveConfig:
    unknowns: Optional[Unknowns] = None
    starts: int = config.DEFAULT_STARTS
    seed: int = 0
    box: float = config.DEFAULT_BOX
    tol: float = config.DEFAULT_TOL
    dedup_radius: float = config.DEFAULT_DEDUP_RADIUS
    max_iters: int = config.DEFAULT_MAX_ITERS
    workers: int = config.DEFAULT_WORKERS

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ValidationError(f"starts >= 1 violated (got {self.starts})")
        if not self.tol > 0:
            raise ValidationError(f"tol > 0 violated (got {self.tol})")
        if not self.dedup_radius > 0:
            raise ValidationError(f"dedup_radius > 0 violated (got {self.dedup_radius})")
        if not self.box > 0:
            raise ValidationError(f"box > 0 violated (got {self.box})")
        if self.max_iters < 1:
            raise ValidationError(f"max_iters >= 1 violated (got {self.max_iters})")
        if self.workers < 1:
            raise ValidationError(f"workers >= 1 violated (got {self.workers})")

    def to_dict(self) -> dict:
        return {
            "unknowns": self.unknowns.value if self.unknowns else None,
            "starts": self.starts,
            "seed": self.seed,
            "box": self.box,
            "tol": self.tol,
            "dedup_radius": self.dedup_radius,
            "max_iters": self.max_iters,
            "workers": self.workers,
        }


@dataclass(frozen=True)
class StartRecord:
    index: int
    start: Tuple[float, ...]
    final: Tuple[float, ...]
    inf_norm: float
    nfev: int
    status: int
    accepted: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "start": list(self.start),
            "final": list(self.final),
            "inf_norm": self.inf_norm,
            "nfev": self.nfev,
            "status": self.status,
            "accepted": self.accepted,
        }


@dataclass(frozen=True, eq=False)
class FoundSolution:
    candidate: CandidateSolution
    inf_norm: float

    def to_dict(self) -> dict:
        return {**self.candidate.to_dict(), "inf_norm": self.inf_norm}


@dataclass(frozen=True, eq=False)
class SolutionSet:
    solutions: Tuple[FoundSolution, ...]
    manifold_flag: bool
    diagnostics: Tuple[StartRecord, ...] = ()

    @property
    def min_residual(self) -> Optional[float]:
        norms = [d.inf_norm for d in self.diagnostics if np.isfinite(d.inf_norm)]
        return min(norms) if norms else None

    def nontrivial(self, radius: float) -> List[FoundSolution]:
        return [s for s in self.solutions if np.linalg.norm(s.candidate.vector) > radius]

    def to_dict(self, with_diagnostics: bool = True) -> dict:
        data = {
            "solutions": [s.to_dict() for s in self.solutions],
            "manifold_flag": self.manifold_flag,
            "min_residual": self.min_residual,
        }
        if with_diagnostics:
            data["diagnostics"] = [d.to_dict() for d in self.diagnostics]
        return data


# ------------------------------------------------------------------
# Residual model
# ------------------------------------------------------------------

class _System:
    """Numeric residual and Jacobian for one (instance, α, β[, λ])."""

    def __init__(self, inst: FamilyInstance, alpha: float, beta: float, lam: Optional[float]):
        self.eps = inst.signature.eps
        self.g = inst.signature.metric()
        self.lie = [lie_derivative_metric(inst, e) for e in np.eye(3)]
        self.constant = -2.0 * beta * ricci(inst).components
        self.alpha = alpha
        self.lam = lam

    def split(self, z: np.ndarray) -> Tuple[np.ndarray, float]:
        if self.lam is None:
            return z[:3], float(z[3])
        return z, self.lam

    def __call__(self, z: np.ndarray) -> np.ndarray:
        X, lam = self.split(z)
        lowered = self.eps * X
        m = (
            X[0] * self.lie[0] + X[1] * self.lie[1] + X[2] * self.lie[2]
            + 2.0 * self.alpha * np.outer(lowered, lowered)
            + self.constant
            - 2.0 * lam * self.g
        )
        return m[_UPPER_ROWS, _UPPER_COLS]

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        X, _ = self.split(z)
        lowered = self.eps * X
        columns = []
        for k in range(3):
            e = np.zeros(3)
            e[k] = self.eps[k]
            d = self.lie[k] + 2.0 * self.alpha * (np.outer(e, lowered) + np.outer(lowered, e))
            columns.append(d[_UPPER_ROWS, _UPPER_COLS])
        if self.lam is None:
            columns.append((-2.0 * self.g)[_UPPER_ROWS, _UPPER_COLS])
        return np.column_stack(columns)


def _run_start(system: _System, index: int, z0: np.ndarray, cfg: SolveConfig) -> StartRecord:
    try:
        result = least_squares(
            system,
            z0,
            jac=system.jacobian,
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=cfg.max_iters,
        )
        z, nfev, status = result.x, int(result.nfev), int(result.status)
    except (ValueError, np.linalg.LinAlgError) as e:
        logger.debug("Start %d failed: %s", index, e)
        z, nfev, status = z0, 0, -1
    norm = float(np.max(np.abs(system(z)))) if np.all(np.isfinite(z)) else float("inf")
    return StartRecord(
        index=index,
        start=tuple(float(v) for v in z0),
        final=tuple(float(v) for v in z),
        inf_norm=norm,
        nfev=nfev,
        status=status,
        accepted=norm < cfg.tol,
    )


def _dedup(points: Sequence[Tuple[float, ...]], radius: float) -> List[Tuple[float, ...]]:
    kept: List[np.ndarray] = []
    out: List[Tuple[float, ...]] = []
    for p in sorted(points):
        arr = np.asarray(p)
        if all(np.linalg.norm(arr - q) >= radius for q in kept):
            kept.append(arr)
            out.append(p)
    return out


def solve(
    inst: FamilyInstance,
    alpha: float,
    beta: float,
    lam: Optional[float] = None,
    cfg: Optional[SolveConfig] = None,
) -> SolutionSet:
    """Collect converged, deduplicated solutions of the six-equation system.

    λ is an unknown when *lam* is None. Starts are drawn uniformly from
    [-box, box]^n with ``numpy.random.default_rng(cfg.seed)``.
    """
    cfg = cfg or SolveConfig()
    unknowns = Unknowns.X_ONLY if lam is not None else Unknowns.X_AND_LAMBDA
    if cfg.unknowns is not None and cfg.unknowns is not unknowns:
        raise ValidationError(
            f"unknowns={cfg.unknowns.value} conflicts with lambda={'given' if lam is not None else 'free'}"
        )

    system = _System(inst, float(alpha), float(beta), None if lam is None else float(lam))
    dim = 3 if lam is not None else 4
    rng = np.random.default_rng(cfg.seed)
    starts = rng.uniform(-cfg.box, cfg.box, size=(cfg.starts, dim))

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(lambda i: _run_start(system, i, starts[i], cfg), range(cfg.starts)))
    else:
        records = [_run_start(system, i, starts[i], cfg) for i in range(cfg.starts)]

    accepted = [r.final for r in records if r.accepted]
    unique = _dedup(accepted, cfg.dedup_radius)
    fine = len(_dedup(accepted, cfg.dedup_radius / 10.0))
    manifold_flag = fine >= MANIFOLD_FACTOR * BEZOUT_BOUND

    solutions = []
    for z in unique:
        X = tuple(z[:3])
        lam_value = z[3] if lam is None else lam
        cand = CandidateSolution(X, SolitonParams(alpha, beta, lam_value))
        report = residual(inst, cand, cfg.tol)
        if not report.passes:
            logger.warning("Dropping solution %s: re-check residual %.3e", z, report.inf_norm)
            continue
        solutions.append(FoundSolution(cand, report.inf_norm))

    logger.info(
        "Solved %s %s (alpha=%s, beta=%s, lambda=%s): %d/%d starts accepted, %d solutions%s",
        inst.tag.value, inst.values, alpha, beta, "free" if lam is None else lam,
        len(accepted), cfg.starts, len(solutions), ", manifold" if manifold_flag else "",
    )
    return SolutionSet(tuple(solutions), manifold_flag, tuple(records))


# ------------------------------------------------------------------
# Sweeps
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    family: FamilyTag
    params: Dict[str, float]
    alpha: float
    beta: float
    lam: Optional[float]
    n_solutions: int
    min_residual: Optional[float]
    ew_compat: bool
    ps_compat: bool
    vnh_compat: bool
    manifold_flag: bool = False
    einstein: bool = False

    def csv_row(self) -> List[str]:
        def fmt(value: object) -> str:
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            return repr(float(value)) if isinstance(value, float) else str(value)

        return [
            self.family.value,
            *(fmt(self.params.get(k)) for k in ("A", "B", "C", "D")),
            fmt(int(self.params["eta"])) if "eta" in self.params else "",
            fmt(float(self.alpha)),
            fmt(float(self.beta)),
            str(self.n_solutions),
            fmt(self.min_residual),
            fmt(self.ew_compat),
            fmt(self.ps_compat),
            fmt(self.vnh_compat),
        ]


def _grid_points(family: FamilyTag, grid: Mapping[str, Sequence[float]]) -> List[Dict[str, float]]:
    names = FAMILY_PARAMS[family]
    missing = [n for n in names if n not in grid]
    if missing:
        raise ValidationError(f"Grid for {family.value} is missing {', '.join(missing)}")
    axes = [list(grid[n]) for n in names]
    if any(len(axis) == 0 for axis in axes):
        raise ValidationError("Sweep grid is empty")
    return [dict(zip(names, values)) for values in itertools.product(*axes)]


def sweep(
    family: "FamilyTag | str",
    param_grid: Mapping[str, Sequence[float]],
    alpha: float,
    beta: float,
    cfg: Optional[SolveConfig] = None,
    lam: Optional[float] = None,
) -> List[SweepRow]:
    """One row per admissible grid point; constraint violators are skipped."""
    family = FamilyTag.parse(family)
    cfg = cfg or SolveConfig()
    points = _grid_points(family, param_grid)
    named = classify_named(SolitonParams(alpha, beta, lam))
    sign_ok = set(named.sign_compatible)

    rows: List[SweepRow] = []
    for point in points:
        try:
            inst = make_instance(family, point)
        except ValidationError as e:
            logger.warning("Skipping grid point %s: %s", point, e)
            continue
        result = solve(inst, alpha, beta, lam, cfg)
        nontrivial = result.nontrivial(cfg.dedup_radius)
        if lam is None:
            ps = float(alpha) * float(beta) < 0 and any(
                abs(float(s.candidate.params.lam)) < cfg.tol for s in nontrivial
            )
        else:
            ps = NamedEquation.PROJECTIVE_SKEW in sign_ok
        rows.append(
            SweepRow(
                family=family,
                params=inst.values,
                alpha=alpha,
                beta=beta,
                lam=lam,
                n_solutions=len(nontrivial),
                min_residual=result.min_residual,
                ew_compat=NamedEquation.EINSTEIN_WEYL in sign_ok,
                ps_compat=ps,
                vnh_compat=NamedEquation.NEAR_HORIZON in sign_ok,
                manifold_flag=result.manifold_flag,
                einstein=curvature_report(inst).is_einstein,
            )
        )
    logger.info("Sweep %s: %d of %d grid points solved", family.value, len(rows), len(points))
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow(row.csv_row())
