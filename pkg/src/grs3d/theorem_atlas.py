"""
Closed-form solution families for left-invariant generalized Ricci solitons
on three-dimensional metric Lie algebras, with a substitution harness that
checks every family against the residual and the named-equation claims.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.grs3d.algebra_catalog import (
    FAMILY_PARAMS,
    FamilyInstance,
    FamilyTag,
    GroupName,
    identify_group,
    make_instance,
)
from src.grs3d.config import resolve_tol
from src.grs3d.curvature_engine import ricci
from src.grs3d.errors import DomainError, SchemaError, UnknownCaseError, ValidationError
from src.grs3d.grs_system import (
    CandidateSolution,
    NamedEquation,
    SolitonParams,
    classify_named,
    flat_square,
    lie_derivative_metric,
    residual,
)

logger = logging.getLogger(__name__)

SAMPLE_LOW = 0.25
SAMPLE_HIGH = 3.0
SAMPLE_MARGIN = 0.5
MATCH_TOL = 1e-6
UNMATCHED = "UNMATCHED"


class CaseNote(str, Enum):
    EINSTEIN = "EINSTEIN"
    FLAT = "FLAT"
    KILLING_CONTINUUM = "KILLING_CONTINUUM"
    RICCI_SOLITON = "RICCI_SOLITON"
    SUSPECTED_TYPO = "SUSPECTED_TYPO"


@dataclass(frozen=True)
class Condition:
    """Admissibility requirement on a quantity built from the free parameters."""

    kind: str  # "nonzero" | "positive" | "nonnegative"
    label: str
    quantity: Callable[[Mapping[str, float]], float]

    def holds(self, p: Mapping[str, float], margin: float = 0.0) -> bool:
        q = self.quantity(p)
        if not math.isfinite(q):
            return False
        if self.kind == "nonzero":
            return abs(q) > margin
        if self.kind == "positive":
            return q > margin
        return q >= 0.0


def _nz(label: str, fn: Callable[[Mapping[str, float]], float]) -> Condition:
    return Condition("nonzero", label, fn)


def _pos(label: str, fn: Callable[[Mapping[str, float]], float]) -> Condition:
    return Condition("positive", label, fn)


def _nn(label: str, fn: Callable[[Mapping[str, float]], float]) -> Condition:
    return Condition("nonnegative", label, fn)


ALPHA_NZ = _nz("alpha != 0", lambda p: p["alpha"])


@dataclass(frozen=True)
class Construction:
    params: Dict[str, float]
    alpha: float
    beta: float
    lam: float
    X: Tuple[float, float, float]


Builder = Callable[[Mapping[str, float], Mapping[str, object]], Construction]


@dataclass(frozen=True)
class Reading:
    name: str
    build: Builder
    preferred: bool = True


@dataclass(frozen=True)
class TheoremCase:
    id: str
    family: FamilyTag
    free: Tuple[str, ...]
    readings: Tuple[Reading, ...]
    conditions: Tuple[Condition, ...] = ()
    branches: Tuple[Tuple[str, Tuple[object, ...]], ...] = ()
    notes: frozenset = frozenset()
    typo_detail: Optional[str] = None

    @property
    def preferred(self) -> Reading:
        return next(r for r in self.readings if r.preferred)

    def branch_choices(self) -> List[Dict[str, object]]:
        names = [name for name, _ in self.branches]
        values = [vals for _, vals in self.branches]
        return [dict(zip(names, combo)) for combo in itertools.product(*values)]

    def summary(self) -> dict:
        return {
            "id": self.id,
            "family": self.family.value,
            "free": list(self.free),
            "conditions": [c.label for c in self.conditions],
            "branches": {name: list(vals) for name, vals in self.branches},
            "notes": sorted(n.value for n in self.notes),
            "readings": [r.name for r in self.readings],
            "typo_detail": self.typo_detail,
        }


def _out(params: Dict[str, float], alpha: float, beta: float, lam: float, X: Sequence[float]) -> Construction:
    return Construction(params, float(alpha), float(beta), float(lam), tuple(float(x) for x in X))


_REGISTRY: Dict[str, TheoremCase] = {}


def _case(
    case_id: str,
    family: FamilyTag,
    free: Sequence[str],
    build: "Builder | Sequence[Reading]",
    conditions: Sequence[Condition] = (),
    branches: Sequence[Tuple[str, Tuple[object, ...]]] = (),
    notes: Iterable[CaseNote] = (),
    typo_detail: Optional[str] = None,
) -> None:
    readings = (Reading("printed", build),) if callable(build) else tuple(build)
    note_set = frozenset(notes) | ({CaseNote.SUSPECTED_TYPO} if typo_detail else frozenset())
    _REGISTRY[case_id] = TheoremCase(
        case_id, family, tuple(free), readings, tuple(conditions), tuple(branches), note_set, typo_detail
    )


PM = (("pm", (1, -1)),)
EPS = (("eps", (1, -1)),)
sqrt = math.sqrt

# ------------------------------------------------------------------
# Riemannian unimodular
# ------------------------------------------------------------------

F = FamilyTag.RIEM_UNIMODULAR

_case(
    "riem-unimodular-1", F, ("A", "beta", "X1", "X2", "X3"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["A"], "C": p["A"]}, 0, p["beta"], -0.5 * p["beta"] * p["A"] ** 2,
        (p["X1"], p["X2"], p["X3"]),
    ),
    notes=(CaseNote.KILLING_CONTINUUM, CaseNote.EINSTEIN),
)
_case(
    "riem-unimodular-2", F, ("A", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["A"], "C": p["A"]}, p["alpha"], p["beta"], -0.5 * p["beta"] * p["A"] ** 2, (0, 0, 0)
    ),
    notes=(CaseNote.EINSTEIN,),
)
_case(
    "riem-unimodular-3", F, ("B", "alpha", "beta"),
    lambda p, s: _out({"A": 0, "B": p["B"], "C": p["B"]}, p["alpha"], p["beta"], 0, (0, 0, 0)),
    notes=(CaseNote.FLAT, CaseNote.EINSTEIN),
)
_case(
    "riem-unimodular-4", F, ("A", "C", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["C"], "C": p["C"]}, p["alpha"], p["beta"],
        0.5 * p["beta"] * p["A"] * (p["A"] - 2 * p["C"]),
        (s["pm"] * sqrt(p["beta"] * p["A"] * (p["A"] - p["C"]) / p["alpha"]), 0, 0),
    ),
    conditions=(
        ALPHA_NZ,
        _nz("A - C != 0", lambda p: p["A"] - p["C"]),
        _pos("alpha*beta*A*(A - C) > 0", lambda p: p["alpha"] * p["beta"] * p["A"] * (p["A"] - p["C"])),
    ),
    branches=PM,
)

# ------------------------------------------------------------------
# Riemannian non-unimodular
# ------------------------------------------------------------------

F = FamilyTag.RIEM_NONUNIMODULAR
A_NZ = _nz("A != 0", lambda p: p["A"])
A_PLUS_D_NZ = _nz("A + D != 0", lambda p: p["A"] + p["D"])


def _rn1(p, s):
    A, a, b = p["A"], p["alpha"], p["beta"]
    x1 = -A / a
    return _out({"A": A, "B": p["B"], "C": -p["B"], "D": A}, a, b, (2 * a * a * b + a) * x1 ** 2, (x1, 0, 0))


_case("riem-nonunimodular-1", F, ("A", "B", "alpha", "beta"), _rn1, conditions=(A_NZ, ALPHA_NZ))
_case(
    "riem-nonunimodular-2", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": 0, "D": 0}, p["alpha"], p["beta"],
        0.5 * p["beta"] * (2 * p["A"] ** 2 + p["B"] ** 2),
        (0, 0, s["pm"] * sqrt(p["beta"] * (p["A"] ** 2 + p["B"] ** 2) / p["alpha"])),
    ),
    conditions=(A_NZ, ALPHA_NZ, _pos("alpha*beta > 0", lambda p: p["alpha"] * p["beta"])),
    branches=PM,
)
_case(
    "riem-nonunimodular-3", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": -p["B"], "D": p["A"]}, p["alpha"], p["beta"],
        2 * p["beta"] * p["A"] ** 2, (0, 0, 0),
    ),
    conditions=(A_NZ,),
    notes=(CaseNote.EINSTEIN,),
)


def _rn4(p, s):
    A, D, b = p["A"], p["D"], p["beta"]
    alpha = -(A * A + D * D) / (b * (A + D) ** 2)
    return _out({"A": A, "B": 0, "C": 0, "D": D}, alpha, b, 0, (b * (A + D), 0, 0))


_case(
    "riem-nonunimodular-4", F, ("A", "D", "beta"), _rn4,
    conditions=(A_PLUS_D_NZ, _nz("beta != 0", lambda p: p["beta"])),
)
_case(
    "riem-nonunimodular-5", F, ("A", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": 0, "C": 0, "D": p["A"]}, p["alpha"], p["beta"],
        p["A"] ** 2 * (1 / p["alpha"] + 2 * p["beta"]), (-p["A"] / p["alpha"], 0, 0),
    ),
    conditions=(A_NZ, ALPHA_NZ),
)

# ------------------------------------------------------------------
# g1, g2
# ------------------------------------------------------------------

F = FamilyTag.G1

_case(
    "g1-1", F, ("A", "B", "alpha"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"]}, p["alpha"], 0, 0, (0, -p["A"] / p["alpha"], -p["A"] / p["alpha"])
    ),
    conditions=(A_NZ, ALPHA_NZ),
)
_case(
    "g1-2", F, ("A", "B", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"]}, 0, p["beta"], 0.5 * p["beta"] * p["B"] ** 2,
        (2 * p["beta"] * p["B"], -2 * p["beta"] * p["A"], -2 * p["beta"] * p["A"]),
    ),
    conditions=(A_NZ,),
    notes=(CaseNote.RICCI_SOLITON,),
)


def _g1_3(p, s):
    A, a, b = p["A"], p["alpha"], p["beta"]
    x = (-1 + s["pm"] * sqrt(1 - 8 * a * b)) * A / (2 * a)
    return _out({"A": A, "B": 0}, a, b, 0, (0, x, x))


_case(
    "g1-3", F, ("A", "alpha", "beta"), _g1_3,
    conditions=(A_NZ, ALPHA_NZ, _nn("1 - 8*alpha*beta >= 0", lambda p: 1 - 8 * p["alpha"] * p["beta"])),
    branches=PM,
)


def _g2_1(corrected: bool) -> Builder:
    def build(p, s):
        X2, X3, a = p["X2"], p["X3"], p["alpha"]
        eps = s["eps"]
        root = sqrt(X3 * X3 - X2 * X2)
        A = 4 * a * X2 * X3 / (3 * eps * root)
        lam = a * (3 * X2 ** 4 - 10 * X2 ** 2 * X3 ** 2 + 3 * X3 ** 4) / (X2 ** 2 - X3 ** 2)
        if corrected:
            lam /= 6
        X1 = -eps * (X2 * X2 + X3 * X3) / (2 * root)
        return _out({"A": A, "B": -A / 2, "C": eps * a * root}, a, -3 / (8 * a), lam, (X1, X2, X3))

    return build


_case(
    "g2-1", FamilyTag.G2, ("X2", "X3", "alpha"),
    (Reading("literal", _g2_1(False), preferred=False), Reading("corrected", _g2_1(True))),
    conditions=(ALPHA_NZ, _pos("X3^2 - X2^2 > 0", lambda p: p["X3"] ** 2 - p["X2"] ** 2)),
    branches=EPS,
    typo_detail="lambda as printed is six times the value the system requires",
)

# ------------------------------------------------------------------
# g3
# ------------------------------------------------------------------

F = FamilyTag.G3

_case(
    "g3-1", F, ("A", "beta", "X1", "X2", "X3"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["A"], "C": p["A"]}, 0, p["beta"], 0.5 * p["beta"] * p["A"] ** 2,
        (p["X1"], p["X2"], p["X3"]),
    ),
    notes=(CaseNote.KILLING_CONTINUUM, CaseNote.EINSTEIN),
)
_case(
    "g3-2", F, ("B", "beta", "X1"),
    lambda p, s: _out({"A": 0, "B": p["B"], "C": p["B"]}, 0, p["beta"], 0, (p["X1"], 0, 0)),
    notes=(CaseNote.KILLING_CONTINUUM, CaseNote.FLAT),
)
_case(
    "g3-3", F, ("B", "alpha", "beta"),
    lambda p, s: _out({"A": 0, "B": p["B"], "C": p["B"]}, p["alpha"], p["beta"], 0, (0, 0, 0)),
    notes=(CaseNote.FLAT, CaseNote.EINSTEIN),
)
_case(
    "g3-4", F, ("A", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["A"], "C": p["A"]}, p["alpha"], p["beta"], 0.5 * p["beta"] * p["A"] ** 2, (0, 0, 0)
    ),
    notes=(CaseNote.EINSTEIN,),
)
_case(
    "g3-5", F, ("A", "C", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["C"], "C": p["C"]}, p["alpha"], p["beta"],
        0.5 * p["beta"] * p["A"] * (2 * p["C"] - p["A"]),
        (s["pm"] * sqrt(p["beta"] * p["A"] * (p["C"] - p["A"]) / p["alpha"]), 0, 0),
    ),
    conditions=(
        ALPHA_NZ,
        _pos("alpha*beta*A*(C - A) > 0", lambda p: p["alpha"] * p["beta"] * p["A"] * (p["C"] - p["A"])),
    ),
    branches=PM,
)
_case(
    "g3-6", F, ("B", "C", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["B"], "B": p["B"], "C": p["C"]}, p["alpha"], p["beta"],
        0.5 * p["beta"] * p["C"] * (2 * p["B"] - p["C"]),
        (0, 0, s["pm"] * sqrt(p["beta"] * p["C"] * (p["C"] - p["B"]) / p["alpha"])),
    ),
    conditions=(
        ALPHA_NZ,
        _pos("alpha*beta*C*(C - B) > 0", lambda p: p["alpha"] * p["beta"] * p["C"] * (p["C"] - p["B"])),
    ),
    branches=PM,
)


def _g3_7(corrected: bool) -> Builder:
    def build(p, s):
        A, a, eps = p["A"], p["alpha"], s["eps"]
        x1 = eps * A / (sqrt(2) * a)
        x3 = A / (2 * a) if corrected else eps * A / (2 * a)
        return _out({"A": A, "B": -A, "C": 0}, a, -3 / (8 * a), A * A / (2 * a), (x1, -x1, x3))

    return build


_case(
    "g3-7", F, ("A", "alpha"),
    (Reading("literal", _g3_7(False), preferred=False), Reading("corrected", _g3_7(True))),
    conditions=(A_NZ, ALPHA_NZ),
    branches=EPS,
    typo_detail="X3 carries the sign epsilon as printed; only X3 = A/(2 alpha) solves for both signs",
)


def _g3_8(p, s):
    X1, X2, b, eps = p["X1"], p["X2"], p["beta"], s["eps"]
    r2 = X1 * X1 + X2 * X2
    r = sqrt(r2)
    k = eps / (4 * b * r)
    return _out(
        {"A": -k * (2 * X1 * X1 + X2 * X2), "B": k * (X1 * X1 + 2 * X2 * X2), "C": k * (X1 * X1 - X2 * X2)},
        -3 / (8 * b), b,
        -(X1 ** 4 + X1 ** 2 * X2 ** 2 + X2 ** 4) / (4 * b * r2),
        (X1, X2, -eps * X1 * X2 / r),
    )


_case(
    "g3-8", F, ("X1", "X2", "beta"), _g3_8,
    conditions=(_nz("beta != 0", lambda p: p["beta"]), _pos("X1^2 + X2^2 > 0", lambda p: p["X1"] ** 2 + p["X2"] ** 2)),
    branches=EPS,
)

# ------------------------------------------------------------------
# g4
# ------------------------------------------------------------------

F = FamilyTag.G4


def _g4_1(p, s):
    A, eta, a, b = p["A"], p["eta"], p["alpha"], p["beta"]
    x3 = s["pm"] * sqrt(-eta * b * A / a)
    return _out({"A": A, "B": A + eta, "eta": eta}, a, b, 0.5 * b * A * A, (0, -eta * x3, x3))


_case(
    "g4-1", F, ("A", "eta", "alpha", "beta"), _g4_1,
    conditions=(ALPHA_NZ, _pos("-eta*A*alpha*beta > 0", lambda p: -p["eta"] * p["A"] * p["alpha"] * p["beta"])),
    branches=PM,
)
_case(
    "g4-2", F, ("A", "eta", "beta", "X3"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["A"] + p["eta"], "eta": p["eta"]}, 0, p["beta"], 0.5 * p["beta"] * p["A"] ** 2,
        (-p["eta"] * p["beta"] * p["A"], -p["eta"] * p["X3"], p["X3"]),
    ),
    notes=(CaseNote.RICCI_SOLITON,),
)


def _g4_3(p, s):
    A, eta, a = p["A"], p["eta"], p["alpha"]
    x2 = s["pm"] * sqrt(-eta * A / (4 * a * a))
    return _out({"A": A, "B": A / 2 + eta, "eta": eta}, a, -1 / (8 * a), 0, (eta * A / (4 * a), x2, -eta * x2))


_case(
    "g4-3", F, ("A", "eta", "alpha"), (Reading("literal", _g4_3),),
    conditions=(ALPHA_NZ, _pos("-eta*A > 0", lambda p: -p["eta"] * p["A"])),
    branches=PM,
    typo_detail="square root needs eta*A < 0; the printed formulas hold on that domain",
)


def _g4_4(corrected: bool) -> Builder:
    def build(p, s):
        A, B, eta, a = p["A"], p["B"], p["eta"], p["alpha"]
        m = A - 2 * B + 2 * eta
        beta = -A * (A - B + eta) / (a * m * m)
        x1 = eta * beta * m if corrected else beta * m
        return _out({"A": A, "B": B, "eta": eta}, a, beta, -0.5 * beta * A * m, (x1, 0, 0))

    return build


G4_M_NZ = _nz("A - 2B + 2eta != 0", lambda p: p["A"] - 2 * p["B"] + 2 * p["eta"])

_case(
    "g4-4", F, ("A", "B", "eta", "alpha"),
    (Reading("literal", _g4_4(False), preferred=False), Reading("corrected", _g4_4(True))),
    conditions=(ALPHA_NZ, G4_M_NZ, _nz("A*(A - B + eta) != 0", lambda p: p["A"] * (p["A"] - p["B"] + p["eta"]))),
    typo_detail="X1 as printed lacks the factor eta; fails for eta = -1",
)


def _g4_5_radicand(p: Mapping[str, float]) -> float:
    A, B, eta = p["A"], p["B"], p["eta"]
    return (5 * eta * A * B - 3 * eta * A * A - 5 * A - 2 * eta + 4 * B - 2 * eta * B * B) / A


def _g4_5(p, s):
    A, B, eta, a = p["A"], p["B"], p["eta"], p["alpha"]
    n = A - B + eta
    m = A - 2 * B + 2 * eta
    x3 = s["pm"] * sqrt(_g4_5_radicand(p)) / (2 * a)
    return _out({"A": A, "B": B, "eta": eta}, a, -n / (4 * a * A), n * m / (8 * a), (eta * n / (2 * a), -eta * x3, x3))


_case(
    "g4-5", F, ("A", "B", "eta", "alpha"), _g4_5,
    conditions=(A_NZ, ALPHA_NZ, _nn("radicand >= 0", _g4_5_radicand)),
    branches=PM,
)

# ------------------------------------------------------------------
# g5
# ------------------------------------------------------------------

F = FamilyTag.G5

_case(
    "g5-1", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": -p["B"], "D": p["A"]}, p["alpha"], p["beta"],
        -(1 / p["alpha"] + 2 * p["beta"]) * p["A"] ** 2, (0, 0, -p["A"] / p["alpha"]),
    ),
    conditions=(A_NZ, ALPHA_NZ),
)


def _g5_2(corrected: bool) -> Builder:
    def build(p, s):
        A, B, a, eps = p["A"], p["B"], p["alpha"], s["eps"]
        x3 = -A / (2 * a)
        x2 = (-eps if corrected else eps) * B / (2 * a)
        return _out({"A": A, "B": B, "C": 0, "D": 0}, a, -1 / (4 * a), B * B / (8 * a), (eps * x3, x2, x3))

    return build


_case(
    "g5-2", F, ("A", "B", "alpha"),
    (Reading("literal", _g5_2(False), preferred=False), Reading("corrected", _g5_2(True))),
    conditions=(A_NZ, ALPHA_NZ),
    branches=EPS,
    typo_detail="X2 as printed has the wrong sign relative to X1 = eps*X3",
)
_case(
    "g5-3", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": -p["B"], "D": p["A"]}, p["alpha"], p["beta"],
        -2 * p["beta"] * p["A"] ** 2, (0, 0, 0),
    ),
    conditions=(A_NZ,),
    notes=(CaseNote.EINSTEIN,),
)
_case(
    "g5-4", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": 0, "D": 0}, p["alpha"], p["beta"],
        -0.5 * p["beta"] * (2 * p["A"] ** 2 + p["B"] ** 2),
        (0, s["pm"] * sqrt(-p["beta"] * (p["A"] ** 2 + p["B"] ** 2) / p["alpha"]), 0),
    ),
    conditions=(A_NZ, ALPHA_NZ, _pos("-alpha*beta > 0", lambda p: -p["alpha"] * p["beta"])),
    branches=PM,
)
_case(
    "g5-5", F, ("A", "alpha"),
    lambda p, s: _out({"A": p["A"], "B": 0, "C": 0, "D": 0}, p["alpha"], -1 / p["alpha"], 0, (0, 0, -p["A"] / p["alpha"])),
    conditions=(A_NZ, ALPHA_NZ),
)


def _g5_6(corrected: bool) -> Builder:
    def build(p, s):
        A, a, b = p["A"], p["alpha"], p["beta"]
        t = a * b
        x1 = s["pm"] * A * sqrt(8 * t * t + 5 * t + 1) / (2 * a * (1 + 2 * t))
        lam = A * A * (32 * t ** 3 + 28 * t * t + 9 * t + 1) / (4 * a * (1 + 2 * t) ** 2)
        if corrected:
            D = A * (1 + 4 * t) / (2 * (1 + 2 * t))
            lam = -lam
        else:
            D = p["D"]
        return _out({"A": A, "B": 0, "C": 0, "D": D}, a, b, lam, (x1, 0, -A / (2 * a)))

    return build


_case(
    "g5-6", F, ("A", "D", "alpha", "beta"),
    (Reading("literal", _g5_6(False), preferred=False), Reading("corrected", _g5_6(True))),
    conditions=(
        A_NZ,
        ALPHA_NZ,
        A_PLUS_D_NZ,
        _nz("2*alpha*beta + 1 != 0", lambda p: 2 * p["alpha"] * p["beta"] + 1),
        _nz("8*alpha*beta + 3 != 0", lambda p: 8 * p["alpha"] * p["beta"] + 3),
    ),
    branches=PM,
    typo_detail="D is left free and lambda has the wrong sign as printed; the corrected reading fixes "
    "D = A(1 + 4 alpha beta) / (2(1 + 2 alpha beta)) and ignores the supplied D",
)


def _g5_7(corrected: bool) -> Builder:
    def build(p, s):
        A, D, a = p["A"], p["D"], p["alpha"]
        lam = -A * (2 * A * A - A * D + D * D) / (4 * a * (A - D))
        if corrected:
            lam = -lam
            x2 = s["pm"] * sqrt(2 * A * A - A * D + D * D) / (2 * a)
        else:
            x2 = s["pm"] * sqrt(A * A - 0.5 * A * D + 0.5 * D * D) / a
        beta = -(2 * A - D) / (4 * a * (A - D))
        return _out({"A": A, "B": 0, "C": 0, "D": D}, a, beta, lam, (0, x2, -D / (2 * a)))

    return build


A_MINUS_D_NZ = _nz("A - D != 0", lambda p: p["A"] - p["D"])

_case(
    "g5-7", F, ("A", "D", "alpha"),
    (Reading("literal", _g5_7(False), preferred=False), Reading("corrected", _g5_7(True))),
    conditions=(ALPHA_NZ, A_MINUS_D_NZ, A_PLUS_D_NZ),
    branches=PM,
    typo_detail="lambda has the wrong sign and X2 is off by a factor sqrt(2) as printed",
)

# ------------------------------------------------------------------
# g6
# ------------------------------------------------------------------

F = FamilyTag.G6

_case(
    "g6-1", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": p["B"], "D": p["A"]}, p["alpha"], p["beta"],
        (1 / p["alpha"] + 2 * p["beta"]) * p["A"] ** 2, (-p["A"] / p["alpha"], 0, 0),
    ),
    conditions=(A_NZ, ALPHA_NZ),
)
_case(
    "g6-2", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": p["B"], "D": p["A"]}, p["alpha"], p["beta"], 2 * p["beta"] * p["A"] ** 2, (0, 0, 0)
    ),
    conditions=(A_NZ,),
    notes=(CaseNote.EINSTEIN,),
)
_case(
    "g6-3", F, ("A", "D", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": s["sign"] * p["A"], "C": s["sign"] * p["D"], "D": p["D"]}, p["alpha"], p["beta"],
        0.5 * p["beta"] * (p["A"] + p["D"]) ** 2, (0, 0, 0),
    ),
    conditions=(A_PLUS_D_NZ,),
    branches=(("sign", (1, -1)),),
    notes=(CaseNote.EINSTEIN,),
)
_case(
    "g6-4", F, ("A", "B", "alpha", "beta"),
    lambda p, s: _out(
        {"A": p["A"], "B": p["B"], "C": 0, "D": 0}, p["alpha"], p["beta"],
        0.5 * p["beta"] * (2 * p["A"] ** 2 - p["B"] ** 2),
        (0, 0, s["pm"] * sqrt(p["beta"] * (p["B"] ** 2 - p["A"] ** 2) / p["alpha"])),
    ),
    conditions=(
        A_NZ,
        ALPHA_NZ,
        _pos("alpha*beta*(B^2 - A^2) > 0", lambda p: p["alpha"] * p["beta"] * (p["B"] ** 2 - p["A"] ** 2)),
    ),
    branches=PM,
)


def _g6_5(p, s):
    A, D, a = p["A"], p["D"], p["alpha"]
    q = A * A + D * D
    return _out({"A": A, "B": 0, "C": 0, "D": D}, a, -q / (a * (A + D) ** 2), 0, (-q / (a * (A + D)), 0, 0))


_case("g6-5", F, ("A", "D", "alpha"), _g6_5, conditions=(A_PLUS_D_NZ, ALPHA_NZ))


def _g6_6(radical: bool) -> Builder:
    def build(p, s):
        A, D, a = p["A"], p["D"], p["alpha"]
        x3 = s["pm"] * sqrt(2 * A * A - A * D + D * D) / (2 * a) if radical else 0.0
        return _out(
            {"A": A, "B": 0, "C": 0, "D": D}, a,
            -(2 * A - D) / (4 * a * (A - D)),
            -A * (2 * A * A - A * D + D * D) / (4 * a * (A - D)),
            (-D / (2 * a), 0, x3),
        )

    return build


_case(
    "g6-6", F, ("A", "D", "alpha"),
    (Reading("radical", _g6_6(True)), Reading("zero", _g6_6(False), preferred=False)),
    conditions=(ALPHA_NZ, A_MINUS_D_NZ, A_PLUS_D_NZ),
    branches=PM,
    typo_detail="X3 is printed both as a square-root expression and as X3 = 0",
)
_case(
    "g6-7", F, ("C", "D", "alpha", "beta"),
    lambda p, s: _out(
        {"A": 0, "B": 0, "C": p["C"], "D": p["D"]}, p["alpha"], p["beta"],
        0.5 * p["beta"] * (2 * p["D"] ** 2 - p["C"] ** 2),
        (0, s["pm"] * sqrt(p["beta"] * (p["D"] ** 2 - p["C"] ** 2) / p["alpha"]), 0),
    ),
    conditions=(
        _nz("D != 0", lambda p: p["D"]),
        ALPHA_NZ,
        _pos("alpha*beta*(D^2 - C^2) > 0", lambda p: p["alpha"] * p["beta"] * (p["D"] ** 2 - p["C"] ** 2)),
    ),
    branches=PM,
)

# ------------------------------------------------------------------
# g7
# ------------------------------------------------------------------

F = FamilyTag.G7
D_NZ = _nz("D != 0", lambda p: p["D"])

_case(
    "g7-1", F, ("B", "D", "beta", "X1"),
    lambda p, s: _out(
        {"A": 0, "B": p["B"], "C": 0, "D": p["D"]}, 0, p["beta"], 0,
        (p["X1"], -p["B"] * p["X1"] / p["D"], -p["B"] * p["X1"] / p["D"]),
    ),
    conditions=(D_NZ,),
    notes=(CaseNote.FLAT, CaseNote.KILLING_CONTINUUM),
)


def _g7_2(p, s):
    B, D, b, lam = p["B"], p["D"], p["beta"], p["lam"]
    return _out(
        {"A": D / 2, "B": B, "C": 0, "D": D}, 0, b, lam,
        (
            -4 * B * lam / D ** 2,
            (16 * lam * B * B - 4 * lam * D * D + b * D ** 4) / (4 * D ** 3),
            (16 * lam * B * B + 4 * lam * D * D + b * D ** 4) / (4 * D ** 3),
        ),
    )


_case("g7-2", F, ("B", "D", "beta", "lam"), _g7_2, conditions=(D_NZ,), notes=(CaseNote.RICCI_SOLITON,))


def _g7_3_disc(p: Mapping[str, float]) -> float:
    return p["D"] ** 2 - 4 * p["alpha"] * p["beta"] * p["A"] * (p["A"] - p["D"])


def _g7_3(p, s):
    a = p["alpha"]
    x = (-p["D"] + s["pm"] * sqrt(_g7_3_disc(p))) / (2 * a)
    return _out({"A": p["A"], "B": p["B"], "C": 0, "D": p["D"]}, a, p["beta"], 0, (0, x, x))


_case(
    "g7-3", F, ("A", "B", "D", "alpha", "beta"), _g7_3,
    conditions=(ALPHA_NZ, A_PLUS_D_NZ, _nn("D^2 - 4*alpha*beta*A*(A - D) >= 0", _g7_3_disc)),
    branches=PM,
)
_case(
    "g7-4", F, ("B", "D", "alpha", "beta"),
    lambda p, s: _out(
        {"A": 0 if s["root"] == "A=0" else p["D"], "B": p["B"], "C": 0, "D": p["D"]},
        p["alpha"], p["beta"], 0, (0, 0, 0),
    ),
    conditions=(D_NZ,),
    branches=(("root", ("A=0", "A=D")),),
    notes=(CaseNote.FLAT, CaseNote.EINSTEIN),
)
_case(
    "g7-5", F, ("D", "beta"),
    lambda p, s: _out(
        {"A": p["D"] / 2, "B": 0, "C": 0, "D": p["D"]}, 0, p["beta"],
        p["beta"] * (p["D"] / 2) ** 2, (0, 0, p["beta"] * p["D"] / 2),
    ),
    conditions=(D_NZ, _nz("beta != 0", lambda p: p["beta"])),
    notes=(CaseNote.RICCI_SOLITON,),
)


def _g7_6_disc(p: Mapping[str, float]) -> float:
    return p["D"] ** 2 + 3 * p["B"] * p["C"]


def _g7_6(p, s):
    a, C = p["alpha"], p["C"]
    x = (-p["D"] + s["pm"] * sqrt(_g7_6_disc(p))) / (2 * a)
    return _out({"A": 0, "B": p["B"], "C": C, "D": p["D"]}, a, -1 / (4 * a), C * C / (8 * a), (-C / (2 * a), x, x))


_case(
    "g7-6", F, ("B", "C", "D", "alpha"), _g7_6,
    conditions=(D_NZ, ALPHA_NZ, _nn("D^2 + 3BC >= 0", _g7_6_disc)),
    branches=PM,
)
_case(
    "g7-7", F, ("C", "D", "alpha", "beta"),
    lambda p, s: _out(
        {"A": 0, "B": 0, "C": p["C"], "D": p["D"]}, p["alpha"], p["beta"], -0.5 * p["beta"] * p["C"] ** 2,
        (s["pm"] * sqrt(-p["beta"] * p["C"] ** 2 / p["alpha"]), 0, 0),
    ),
    conditions=(D_NZ, ALPHA_NZ, _pos("-alpha*beta*C^2 > 0", lambda p: -p["alpha"] * p["beta"] * p["C"] ** 2)),
    branches=PM,
)
_case(
    "g7-8", F, ("B", "C", "D", "alpha"),
    lambda p, s: _out(
        {"A": 0, "B": p["B"], "C": p["C"], "D": p["D"]}, p["alpha"], -1 / p["alpha"],
        0.5 * p["C"] ** 2 / p["alpha"], (p["C"] / p["alpha"], 0, 0),
    ),
    conditions=(D_NZ, ALPHA_NZ),
)

# ------------------------------------------------------------------
# Special families [x, y] = l(x)y - l(y)x
# ------------------------------------------------------------------


def _special(family: FamilyTag, prefix: str) -> None:
    lor = -1.0 if family is FamilyTag.SPECIAL_LOR else 1.0

    def norm(p: Mapping[str, float]) -> float:
        return p["A"] ** 2 + p["B"] ** 2 + lor * p["C"] ** 2

    abc = ("A", "B", "C")
    _case(
        f"{prefix}-1", family, abc + ("alpha", "beta"),
        lambda p, s: _out({k: p[k] for k in abc}, p["alpha"], p["beta"], 2 * p["beta"] * norm(p), (0, 0, 0)),
        notes=(CaseNote.EINSTEIN,),
    )
    _case(
        f"{prefix}-2", family, ("beta", "X1", "X2", "X3"),
        lambda p, s: _out({"A": 0, "B": 0, "C": 0}, 0, p["beta"], 0, (p["X1"], p["X2"], p["X3"])),
        notes=(CaseNote.FLAT, CaseNote.KILLING_CONTINUUM),
    )

    def build3(p, s):
        q = dict(p)
        if s.get("root") == "C=0":
            q["C"] = 0.0
        elif s.get("root") == "A=B=0":
            q["A"] = q["B"] = 0.0
        a = q["alpha"]
        return _out(
            {k: q[k] for k in abc}, a, q["beta"], (1 / a + 2 * q["beta"]) * norm(q),
            (q["A"] / a, q["B"] / a, lor * q["C"] / a),
        )

    _case(
        f"{prefix}-3", family, abc + ("alpha", "beta"), build3,
        conditions=(ALPHA_NZ,),
        branches=(("root", ("C=0", "A=B=0")),) if lor < 0 else (),
    )


_special(FamilyTag.SPECIAL_RIEM, "special-I")
_special(FamilyTag.SPECIAL_LOR, "special-II")

del F


# ------------------------------------------------------------------
# Registry access and instantiation
# ------------------------------------------------------------------

def all_cases() -> List[TheoremCase]:
    return [_REGISTRY[k] for k in sorted(_REGISTRY)]


def get_case(case_id: str) -> TheoremCase:
    try:
        return _REGISTRY[case_id]
    except KeyError:
        raise UnknownCaseError(f"Unknown theorem case: {case_id!r}") from None


@dataclass(frozen=True, eq=False)
class CaseInstance:
    case_id: str
    reading: str
    branch: Dict[str, object]
    instance: FamilyInstance
    candidate: CandidateSolution

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "reading": self.reading,
            "branch": dict(self.branch),
            "instance": self.instance.to_dict(),
            "candidate": self.candidate.to_dict(),
        }


def _check_free(case: TheoremCase, free_params: Mapping[str, float]) -> Dict[str, float]:
    missing = [k for k in case.free if k not in free_params]
    extra = [k for k in free_params if k not in case.free]
    if missing or extra:
        raise SchemaError(
            f"Case {case.id} takes {', '.join(case.free)}"
            + (f"; missing {', '.join(missing)}" if missing else "")
            + (f"; unexpected {', '.join(extra)}" if extra else "")
        )
    values = {k: float(v) for k, v in free_params.items()}
    if "eta" in values and values["eta"] not in (1.0, -1.0):
        raise DomainError(f"Case {case.id}: eta = ±1 violated")
    for cond in case.conditions:
        if not cond.holds(values):
            raise DomainError(f"Case {case.id}: {cond.label} violated")
    return values


def instantiate(
    case_id: str, free_params: Mapping[str, float], reading: Optional[str] = None
) -> List[CaseInstance]:
    """Materialize every sign branch of a case.

    Raises:
        UnknownCaseError: unknown case id or reading.
        DomainError: an admissibility condition fails.
    """
    case = get_case(case_id)
    values = _check_free(case, free_params)
    if reading is None:
        chosen = case.preferred
    else:
        chosen = next((r for r in case.readings if r.name == reading), None)
        if chosen is None:
            raise UnknownCaseError(f"Case {case_id} has no reading {reading!r}")

    out = []
    for branch in case.branch_choices():
        built = chosen.build(values, branch)
        try:
            inst = make_instance(case.family, built.params)
        except ValidationError as e:
            raise DomainError(f"Case {case_id}: construction leaves the family ({e})") from e
        cand = CandidateSolution(built.X, SolitonParams(built.alpha, built.beta, built.lam))
        out.append(CaseInstance(case_id, chosen.name, branch, inst, cand))
    return out


def sample(case: TheoremCase, rng: np.random.Generator, max_tries: int = 10000) -> Dict[str, float]:
    """Admissible free parameters, each scalar drawn from ±[0.25, 3]."""
    for _ in range(max_tries):
        p: Dict[str, float] = {}
        for name in case.free:
            sign = float(rng.choice([-1.0, 1.0]))
            p[name] = sign if name == "eta" else sign * float(rng.uniform(SAMPLE_LOW, SAMPLE_HIGH))
        if all(c.holds(p, SAMPLE_MARGIN) for c in case.conditions):
            return p
    raise DomainError(f"Case {case.id}: no admissible sample in {max_tries} draws")


# ------------------------------------------------------------------
# Verification
# ------------------------------------------------------------------

def term_scale(inst: FamilyInstance, cand: CandidateSolution) -> float:
    """Largest entry among the individual terms of the soliton equation."""
    p = cand.params
    terms = (
        lie_derivative_metric(inst, cand.vector),
        2 * float(p.alpha) * flat_square(cand.vector, inst.signature),
        2 * float(p.beta) * ricci(inst).components,
    )
    return max([1.0, 2 * abs(float(p.lam or 0.0))] + [float(np.max(np.abs(t))) for t in terms])


def check_candidate(ci: CaseInstance, tol: float) -> Tuple[float, bool]:
    """Absolute residual check; term_scale only enters failure diagnostics."""
    report = residual(ci.instance, ci.candidate, tol)
    return report.inf_norm, report.passes


@dataclass
class ReadingReport:
    reading: str
    max_residual: float = 0.0
    checked: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return self.checked > 0 and not self.failures

    def to_dict(self) -> dict:
        return {
            "reading": self.reading,
            "max_residual": self.max_residual,
            "checked": self.checked,
            "passes": self.passes,
            "failures": self.failures[:5],
            "n_failures": len(self.failures),
        }


@dataclass
class CaseReport:
    case_id: str
    samples: int
    preferred: str
    readings: Dict[str, ReadingReport]
    typo: bool

    @property
    def passes(self) -> bool:
        return self.readings[self.preferred].passes

    @property
    def passing_readings(self) -> List[str]:
        return [name for name, r in self.readings.items() if r.passes]

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "samples": self.samples,
            "preferred": self.preferred,
            "passes": self.passes,
            "suspected_typo": self.typo,
            "passing_readings": self.passing_readings,
            "readings": {k: v.to_dict() for k, v in self.readings.items()},
        }


def verify_case(case_id: str, samples: int = 100, seed: int = 0, tol: Optional[float] = None) -> CaseReport:
    """Substitute random admissible draws of a case into the residual."""
    if samples < 1:
        raise ValidationError(f"samples >= 1 violated (got {samples})")
    tol = resolve_tol(tol)
    case = get_case(case_id)
    rng = np.random.default_rng(seed)
    reports = {r.name: ReadingReport(r.name) for r in case.readings}

    for _ in range(samples):
        free = sample(case, rng)
        for reading in case.readings:
            rep = reports[reading.name]
            try:
                branches = instantiate(case_id, free, reading.name)
            except DomainError as e:
                rep.failures.append({"free": free, "error": str(e)})
                continue
            for ci in branches:
                norm, ok = check_candidate(ci, tol)
                rep.checked += 1
                rep.max_residual = max(rep.max_residual, norm)
                if not ok:
                    rep.failures.append({
                        "free": free,
                        "branch": ci.branch,
                        "residual": norm,
                        "term_scale": term_scale(ci.instance, ci.candidate),
                    })

    result = CaseReport(case_id, samples, case.preferred.name, reports, CaseNote.SUSPECTED_TYPO in case.notes)
    if result.typo:
        logger.info("Case %s: passing readings %s", case_id, result.passing_readings or "none")
    elif not result.passes:
        logger.error("Case %s failed %d checks", case_id, len(reports[case.preferred.name].failures))
    return result


def verify_all(samples: int = 100, seed: int = 0, tol: Optional[float] = None) -> List[CaseReport]:
    reports = [verify_case(c.id, samples, seed, tol) for c in all_cases()]
    failed = [r.case_id for r in reports if not r.passes and not r.typo]
    logger.info("Verified %d cases, %d failed%s", len(reports), len(failed), f": {failed}" if failed else "")
    return reports


def match_solution(inst: FamilyInstance, cand: CandidateSolution, tol: float = MATCH_TOL) -> List[str]:
    """Theorem cases (with branch) that reproduce the given solution.

    Free parameters are read off the instance and the candidate; a case
    matches when its construction returns the same data to ``tol``.
    """
    pool: Dict[str, float] = dict(inst.values)
    pool.update(alpha=float(cand.params.alpha), beta=float(cand.params.beta))
    pool.update(zip(("X1", "X2", "X3"), (float(x) for x in cand.X)))
    if cand.params.lam is not None:
        pool["lam"] = float(cand.params.lam)

    target = np.concatenate(
        [
            [inst.values[k] for k in FAMILY_PARAMS[inst.tag]],
            [float(cand.params.alpha), float(cand.params.beta), float(cand.params.lam or 0.0)],
            cand.vector,
        ]
    )
    scale = max(1.0, float(np.max(np.abs(target))))
    matches = []
    for case in all_cases():
        if case.family is not inst.tag or any(k not in pool for k in case.free):
            continue
        free = {k: pool[k] for k in case.free}
        if not all(c.holds(free) for c in case.conditions):
            continue
        for branch in case.branch_choices():
            built = case.preferred.build(free, branch)
            got = np.concatenate(
                [
                    [float(built.params[k]) for k in FAMILY_PARAMS[inst.tag]],
                    [built.alpha, built.beta, built.lam],
                    built.X,
                ]
            )
            if np.max(np.abs(got - target)) <= tol * scale:
                label = case.id if not branch else f"{case.id}[{','.join(f'{k}={v}' for k, v in branch.items())}]"
                matches.append(label)
    return matches or [UNMATCHED]


# ------------------------------------------------------------------
# Corollaries
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    group: GroupName
    equation: NamedEquation
    case_id: Optional[str] = None
    free: Mapping[str, float] = field(default_factory=dict)
    reason: Optional[str] = None

    @property
    def witnessed(self) -> bool:
        return self.case_id is not None


@dataclass(frozen=True)
class CorollaryClaim:
    id: str
    families: Tuple[FamilyTag, ...]
    pairs: Tuple[Witness, ...]


EW = NamedEquation.EINSTEIN_WEYL
PS = NamedEquation.PROJECTIVE_SKEW
VNH = NamedEquation.NEAR_HORIZON
NONUNI = GroupName.UNCLASSIFIED_NONUNIMODULAR


def _three(case_id: str, group: GroupName, base: Dict[str, float]) -> Tuple[Witness, ...]:
    return tuple(
        Witness(group, eq, case_id, {**base, "beta": b}) for eq, b in ((EW, -1.0), (PS, -0.5), (VNH, 0.5))
    )


_CLAIMS: Dict[str, CorollaryClaim] = {
    c.id: c
    for c in (
        CorollaryClaim("riem-unimodular", (FamilyTag.RIEM_UNIMODULAR,), (
            Witness(GroupName.SU2, EW, "riem-unimodular-4", {"A": 1.0, "C": 2.0, "alpha": 1.0, "beta": -1.0}),
            Witness(GroupName.SU2, VNH, "riem-unimodular-4", {"A": 2.0, "C": 1.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.SL2R, VNH, "riem-unimodular-4", {"A": 2.0, "C": -1.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.H3, VNH, "riem-unimodular-4", {"A": 1.0, "C": 0.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.E2, VNH, reason="the sign pattern (+,+,0) forces A = 0 or B = C = 0 in the "
                    "non-Einstein family, which collapses to the flat case"),
        )),
        CorollaryClaim("riem-nonunimodular", (FamilyTag.RIEM_NONUNIMODULAR,),
                       _three("riem-nonunimodular-1", NONUNI, {"A": 1.0, "B": 0.0, "alpha": 1.0})),
        CorollaryClaim("g1", (FamilyTag.G1,), (
            Witness(GroupName.E11, EW, "g1-3", {"A": 1.0, "alpha": 1.0, "beta": -1.0}),
            Witness(GroupName.E11, PS, "g1-3", {"A": 1.0, "alpha": 1.0, "beta": -0.5}),
        )),
        CorollaryClaim("g3", (FamilyTag.G3,), (
            Witness(GroupName.SL2R, EW, "g3-5", {"A": 2.0, "C": 1.0, "alpha": 1.0, "beta": -1.0}),
            Witness(GroupName.SL2R, PS, "g3-5", {"A": 2.0, "C": 1.0, "alpha": 1.0, "beta": -0.5}),
            Witness(GroupName.SL2R, VNH, "g3-5", {"A": 1.0, "C": 2.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.H3, EW, "g3-5", {"A": 1.0, "C": 0.0, "alpha": 1.0, "beta": -1.0}),
            Witness(GroupName.H3, VNH, "g3-6", {"B": 0.0, "C": -1.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.SU2, VNH, "g3-6", {"B": 1.0, "C": -1.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.H3, PS, reason="no closed-form family on the Heisenberg pattern has "
                    "lambda = 0 with alpha*beta < 0"),
        )),
        CorollaryClaim("g4", (FamilyTag.G4,), (
            Witness(GroupName.SL2R, EW, "g4-1", {"A": 1.0, "eta": 1.0, "alpha": 1.0, "beta": -1.0}),
            Witness(GroupName.SL2R, VNH, "g4-1", {"A": -1.0, "eta": 1.0, "alpha": 1.0, "beta": 0.5}),
            Witness(GroupName.E2, EW, "g4-4", {"A": 1.0, "B": 1.0, "eta": 1.0, "alpha": 1.0}),
            Witness(GroupName.E11, VNH, reason="E(1,1) needs eta*A < 0 with B = eta, where the first family "
                    "requires B = A + eta and hence A = 0"),
        )),
        CorollaryClaim("g5", (FamilyTag.G5,), _three("g5-1", NONUNI, {"A": 1.0, "B": 0.0, "alpha": 1.0})),
        CorollaryClaim("g6", (FamilyTag.G6,), _three("g6-1", NONUNI, {"A": 1.0, "B": 0.0, "alpha": 1.0})),
        CorollaryClaim("g7", (FamilyTag.G7,), _three("g7-3", NONUNI, {"A": 1.0, "B": 0.0, "D": 3.0, "alpha": 1.0})),
        CorollaryClaim(
            "special", (FamilyTag.SPECIAL_RIEM, FamilyTag.SPECIAL_LOR),
            _three("special-I-3", NONUNI, {"A": 1.0, "B": 0.0, "C": 0.0, "alpha": 1.0})
            + _three("special-II-3", NONUNI, {"A": 1.0, "B": 1.0, "C": 0.0, "alpha": 1.0}),
        ),
    )
}


def all_claims() -> List[CorollaryClaim]:
    return [_CLAIMS[k] for k in sorted(_CLAIMS)]


@dataclass(frozen=True)
class PairReport:
    group: GroupName
    equation: NamedEquation
    status: str  # PASS | FAIL | UNWITNESSED
    case_id: Optional[str] = None
    group_found: Optional[GroupName] = None
    primary: Optional[NamedEquation] = None
    residual: Optional[float] = None
    reason: Optional[str] = None
    family: Optional[FamilyTag] = None

    def to_dict(self) -> dict:
        return {
            "family": self.family.value if self.family else None,
            "group": self.group.value,
            "equation": self.equation.value,
            "status": self.status,
            "case": self.case_id,
            "group_found": self.group_found.value if self.group_found else None,
            "primary": self.primary.value if self.primary else None,
            "residual": self.residual,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class CorollaryReport:
    claim_id: str
    pairs: Tuple[PairReport, ...]

    @property
    def passes(self) -> bool:
        statuses = [p.status for p in self.pairs]
        return "FAIL" not in statuses and "PASS" in statuses

    def to_dict(self) -> dict:
        return {"claim": self.claim_id, "passes": self.passes, "pairs": [p.to_dict() for p in self.pairs]}


def _check_witness(w: Witness, tol: float) -> PairReport:
    if not w.witnessed:
        return PairReport(w.group, w.equation, "UNWITNESSED", reason=w.reason)
    ci = instantiate(w.case_id, w.free)[0]
    group = identify_group(ci.instance)
    named = classify_named(ci.candidate.params)
    equation_ok = w.equation in (named.primary, *named.compatible, *named.sign_compatible)
    norm, residual_ok = check_candidate(ci, tol)
    ok = group is w.group and equation_ok and residual_ok
    reason = None
    if not ok:
        reason = ", ".join(
            msg for msg, bad in (
                (f"group {group.value}", group is not w.group),
                (f"equation {named.primary.value}", not equation_ok),
                (f"residual {norm:.3e}", not residual_ok),
            ) if bad
        )
    return PairReport(
        w.group, w.equation, "PASS" if ok else "FAIL", w.case_id, group, named.primary, norm, reason,
        ci.instance.tag,
    )


def verify_corollary(claim_id: str, tol: Optional[float] = None) -> CorollaryReport:
    try:
        claim = _CLAIMS[claim_id]
    except KeyError:
        raise UnknownCaseError(f"Unknown corollary: {claim_id!r}") from None
    tol = resolve_tol(tol)
    report = CorollaryReport(claim_id, tuple(_check_witness(w, tol) for w in claim.pairs))
    if not report.passes:
        logger.error("Corollary %s has failing witnesses", claim_id)
    return report
