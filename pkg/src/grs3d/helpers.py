"""
Shared helpers used by the CLI commands: argument parsing and report builders.
"""

import json
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.grs3d import SCHEMA_VERSION
from src.grs3d.algebra_catalog import (
    FamilyInstance,
    identify_group,
    is_unimodular,
    jacobi_defect,
    l_endomorphism,
    structure_tensor,
)
from src.grs3d.curvature_engine import bianchi_defect, connection, curvature_report
from src.grs3d.errors import SchemaError
from src.grs3d.grs_system import NamedClassification, ResidualReport
from src.grs3d.soliton_solver import SolutionSet, SolveConfig
from src.grs3d.theorem_atlas import CaseReport, CorollaryReport, TheoremCase, match_solution

logger = logging.getLogger(__name__)


def parse_number(raw: str) -> "int | Fraction | float":
    """Integers and p/q stay exact; anything else is a float."""
    text = raw.strip()
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"Bad rational {raw!r}: {e}") from e
    try:
        return float(text)
    except ValueError:
        raise SchemaError(f"Bad number {raw!r}") from None


def parse_assignments(items: Optional[Iterable[str]]) -> Dict[str, "int | Fraction | float"]:
    """Parse ``K=V`` tokens (commas also split) into a dict."""
    out: Dict[str, "int | Fraction | float"] = {}
    for item in items or ():
        for token in item.split(","):
            token = token.strip()
            if not token:
                continue
            key, sep, value = token.partition("=")
            if not sep or not key.strip():
                raise SchemaError(f"Expected K=V, got {token!r}")
            out[key.strip()] = parse_number(value)
    return out


def parse_grid(items: Optional[Iterable[str]]) -> Dict[str, List[float]]:
    """Grid axes as ``K=v1:v2:...`` or ``K=start..stop/steps``."""
    grid: Dict[str, List[float]] = {}
    for item in items or ():
        key, sep, axis = item.partition("=")
        if not sep:
            raise SchemaError(f"Expected K=values, got {item!r}")
        if ".." in axis:
            bounds, _, steps = axis.partition("/")
            lo, _, hi = bounds.partition("..")
            n = int(steps) if steps else 5
            grid[key.strip()] = [float(v) for v in np.linspace(float(parse_number(lo)), float(parse_number(hi)), n)]
        else:
            grid[key.strip()] = [float(parse_number(v)) for v in axis.split(":") if v.strip()]
    return grid


def parse_vector(raw: Optional[Sequence[str]]) -> np.ndarray:
    if raw is None:
        return np.zeros(3)
    values = [float(parse_number(v)) for v in raw]
    if len(values) != 3:
        raise SchemaError(f"X needs three components, got {len(values)}")
    return np.array(values)


def dump_json(data: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **data}, indent=2, default=str)


def build_describe_report(inst: FamilyInstance) -> dict:
    """Structure constants, curvature and group data of one instance."""
    report: dict = {
        "instance": inst.to_dict(),
        "signature": list(inst.signature.causal_signs),
        "structure_constants": structure_tensor(inst).components.tolist(),
        "jacobi_defect": jacobi_defect(structure_tensor(inst)),
        "unimodular": is_unimodular(inst),
        "group": identify_group(inst).value,
        "connection": connection(inst).gamma.tolist(),
        "bianchi_defect": bianchi_defect(inst),
        "curvature": curvature_report(inst).to_dict(),
    }
    if report["unimodular"]:
        L = l_endomorphism(inst)
        report["L"] = {"matrix": L.matrix.tolist(), "segre": L.segre.value}
    return report


def build_residual_report(inst: FamilyInstance, report: ResidualReport, tol: float) -> dict:
    return {"instance": inst.to_dict(), "tol": tol, **report.to_dict()}


def build_solve_report(
    inst: FamilyInstance, result: SolutionSet, cfg: SolveConfig, with_diagnostics: bool = False
) -> dict:
    data = result.to_dict(with_diagnostics=with_diagnostics)
    for entry, found in zip(data["solutions"], result.solutions):
        entry["matches"] = match_solution(inst, found.candidate)
    return {"instance": inst.to_dict(), "config": cfg.to_dict(), **data}


def build_classify_report(named: NamedClassification) -> dict:
    return named.to_dict()


def build_verify_report(reports: List[CaseReport]) -> dict:
    failed = [r.case_id for r in reports if not r.passes and not r.typo]
    return {
        "cases": [r.to_dict() for r in reports],
        "n_cases": len(reports),
        "failed": failed,
        "typo_cases": {r.case_id: r.passing_readings for r in reports if r.typo},
    }


def build_cases_report(cases: List[TheoremCase]) -> dict:
    return {"n_cases": len(cases), "cases": [c.summary() for c in cases]}


def build_corollary_report(reports: List[CorollaryReport]) -> dict:
    return {"claims": [r.to_dict() for r in reports], "passes": all(r.passes for r in reports)}
