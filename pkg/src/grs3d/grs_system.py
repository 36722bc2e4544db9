"""
Generalized Ricci soliton equation for left-invariant data:

    ℒ_X g + 2α X♭⊙X♭ − 2β Ric = 2λ g

Residuals are stored as LHS − RHS; the six independent entries are ordered
(11, 22, 33, 12, 13, 23) for every family.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import sympy as sp

from src.grs3d.algebra_catalog import FamilyInstance, FamilyTag, MetricSignature, structure_tensor
from src.grs3d.config import resolve_tol
from src.grs3d.curvature_engine import ricci
from src.grs3d.errors import ValidationError

logger = logging.getLogger(__name__)

Number = int | Fraction | float

UPPER = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))
EQUATION_LABELS = ("11", "22", "33", "12", "13", "23")
_FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class SolitonParams:
    alpha: Number
    beta: Number
    lam: Optional[Number] = None

    def to_dict(self) -> dict:
        return {
            "alpha": float(self.alpha),
            "beta": float(self.beta),
            "lambda": None if self.lam is None else float(self.lam),
        }


@dataclass(frozen=True, eq=False)
class CandidateSolution:
    X: Tuple[float, float, float]
    params: SolitonParams

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.X, dtype=float)

    @property
    def is_trivial(self) -> bool:
        return (
            not np.any(self.vector)
            and float(self.params.beta) == 0.0
            and self.params.lam is not None
            and float(self.params.lam) == 0.0
        )

    def to_dict(self) -> dict:
        return {"X": [float(x) for x in self.X], **self.params.to_dict()}


@dataclass(frozen=True, eq=False)
class ResidualReport:
    matrix: np.ndarray
    six_equations: Tuple[float, ...]
    inf_norm: float
    passes: bool
    trivial: bool

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "six_equations": dict(zip(EQUATION_LABELS, self.six_equations)),
            "inf_norm": self.inf_norm,
            "passes": self.passes,
            "trivial": self.trivial,
        }


class NamedEquation(str, Enum):
    KILLING = "KILLING"
    HOMOTHETIC = "HOMOTHETIC"
    RICCI_SOLITON = "RICCI_SOLITON"
    EINSTEIN_WEYL = "EINSTEIN_WEYL"
    PROJECTIVE_SKEW = "PROJECTIVE_SKEW"
    NEAR_HORIZON = "NEAR_HORIZON"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class NamedClassification:
    primary: NamedEquation
    compatible: Tuple[NamedEquation, ...] = ()
    scalings: Dict[str, float] = field(default_factory=dict)
    sign_compatible: Tuple[NamedEquation, ...] = ()
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "primary": self.primary.value,
            "compatible": [n.value for n in self.compatible],
            "scalings": dict(self.scalings),
            "sign_compatible": [n.value for n in self.sign_compatible],
            "notes": list(self.notes),
        }


# ------------------------------------------------------------------
# Matrix pieces
# ------------------------------------------------------------------

def lie_derivative_metric(inst: FamilyInstance, X: Iterable[float]) -> np.ndarray:
    """(ℒ_X g)(e_i, e_j) = −g([X, e_i], e_j) − g(e_i, [X, e_j])."""
    c = structure_tensor(inst).components
    # column i holds [X, e_i]
    ad_x = np.einsum("a,aik->ki", np.asarray(X, dtype=float), c)
    lowered = inst.signature.eps[:, None] * ad_x
    return -(lowered + lowered.T)


def flat_square(X: Iterable[float], sig: MetricSignature) -> np.ndarray:
    lowered = sig.eps * np.asarray(X, dtype=float)
    return np.outer(lowered, lowered)


def residual_matrix(inst: FamilyInstance, cand: CandidateSolution) -> np.ndarray:
    p = cand.params
    if p.lam is None:
        raise ValidationError("Residual needs a value for lambda")
    X = cand.vector
    return (
        lie_derivative_metric(inst, X)
        + 2.0 * float(p.alpha) * flat_square(X, inst.signature)
        - 2.0 * float(p.beta) * ricci(inst).components
        - 2.0 * float(p.lam) * inst.signature.metric()
    )


def residual(
    inst: FamilyInstance, cand: CandidateSolution, tol: Optional[float] = None
) -> ResidualReport:
    tol = resolve_tol(tol)
    if tol <= 0:
        raise ValidationError(f"tol > 0 violated (got {tol})")
    matrix = residual_matrix(inst, cand)
    six = tuple(float(matrix[i, j]) for i, j in UPPER)
    inf_norm = float(np.max(np.abs(six)))
    return ResidualReport(
        matrix=matrix,
        six_equations=six,
        inf_norm=inf_norm,
        passes=inf_norm < tol,
        trivial=cand.is_trivial,
    )


# ------------------------------------------------------------------
# Symbolic system
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SystemDescriptor:
    """Six polynomial equations in X₁, X₂, X₃ (and λ when left free).

    ``canonical`` holds the residual entries; ``printed`` holds the same
    equations as ``lhs = rhs`` with the λ terms on the right and the
    family's printed scaling applied.
    """

    symbols: Tuple[sp.Symbol, ...]
    canonical: Tuple[sp.Expr, ...]
    printed: Tuple[sp.Eq, ...]
    factors: Tuple[Number, ...]

    def evaluate(self, X: Iterable[float], lam: Optional[float] = None) -> np.ndarray:
        values = dict(zip(self.symbols[:3], [float(x) for x in X]))
        if len(self.symbols) == 4:
            if lam is None:
                raise ValidationError("System leaves lambda free; pass a value")
            values[self.symbols[3]] = float(lam)
        return np.array([float(expr.subs(values)) for expr in self.canonical])

    def to_dict(self) -> dict:
        return {
            "unknowns": [str(s) for s in self.symbols],
            "equations": [
                {"entry": label, "lhs": str(eq.lhs), "rhs": str(eq.rhs)}
                for label, eq in zip(EQUATION_LABELS, self.printed)
            ],
        }


def _sym(value: Number, exact: bool) -> sp.Expr:
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    if isinstance(value, int) and not isinstance(value, bool):
        return sp.Integer(value)
    if exact:
        return sp.nsimplify(float(value), tolerance=_FLOAT_TOL, rational=True)
    return sp.Float(float(value))


def _matrix_sym(m: np.ndarray, exact: bool) -> sp.Matrix:
    return sp.Matrix(3, 3, [_sym(float(x), exact) for x in m.flatten()])


def printed_factors(tag: FamilyTag) -> Tuple[Number, ...]:
    if tag in (FamilyTag.SPECIAL_RIEM, FamilyTag.SPECIAL_LOR):
        return (Fraction(1, 2),) * 3 + (1,) * 3
    return (1,) * 6


def scalar_system(inst: FamilyInstance, params: SolitonParams) -> SystemDescriptor:
    exact = inst.exact and all(
        isinstance(v, (int, Fraction)) for v in (params.alpha, params.beta, params.lam or 0)
    )
    X = sp.symbols("X1 X2 X3")
    lam_sym = sp.Symbol("lambda")
    symbols: Tuple[sp.Symbol, ...] = tuple(X)
    if params.lam is None:
        lam: sp.Expr = lam_sym
        symbols = symbols + (lam_sym,)
    else:
        lam = _sym(params.lam, exact)
    alpha = _sym(params.alpha, exact)
    beta = _sym(params.beta, exact)

    eps = inst.signature.causal_signs
    lie = sp.zeros(3, 3)
    for k in range(3):
        lie += X[k] * _matrix_sym(lie_derivative_metric(inst, np.eye(3)[k]), exact)
    ric = _matrix_sym(ricci(inst).components, exact)
    lowered = [eps[i] * X[i] for i in range(3)]

    canonical: List[sp.Expr] = []
    printed: List[sp.Eq] = []
    factors = printed_factors(inst.tag)
    for (i, j), factor in zip(UPPER, factors):
        g_ij = eps[i] if i == j else 0
        lhs = sp.expand(lie[i, j] + 2 * alpha * lowered[i] * lowered[j] - 2 * beta * ric[i, j])
        canonical.append(sp.expand(lhs - 2 * lam * g_ij))
        f = _sym(factor, True)
        printed.append(sp.Eq(sp.expand(f * lhs), sp.expand(f * 2 * lam * g_ij), evaluate=False))
    return SystemDescriptor(tuple(symbols), tuple(canonical), tuple(printed), factors)


# ------------------------------------------------------------------
# Named equations and scaling
# ------------------------------------------------------------------

def _equals(value: Number, target: Number) -> bool:
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Fraction(value) == Fraction(target)
    return abs(float(value) - float(target)) <= _FLOAT_TOL


def _product(a: Number, b: Number) -> Number:
    if all(isinstance(v, (int, Fraction)) for v in (a, b)):
        return Fraction(a) * Fraction(b)
    return float(a) * float(b)


def classify_named(params: SolitonParams, dim: int = 3) -> NamedClassification:
    """Primary label by exact match; compatibility under
    (X, α, β, λ) → (cX, α/c, cβ, cλ)."""
    if dim < 3:
        raise ValidationError(f"dim >= 3 violated (got {dim})")
    alpha, beta = params.alpha, params.beta
    lam = 0 if params.lam is None else params.lam
    ew_beta = Fraction(-1, dim - 2)
    ps_beta = Fraction(-1, dim - 1)
    nh_beta = Fraction(1, 2)

    a0, b0, l0 = _equals(alpha, 0), _equals(beta, 0), _equals(lam, 0)
    if a0 and b0 and l0:
        primary = NamedEquation.KILLING
    elif a0 and b0:
        primary = NamedEquation.HOMOTHETIC
    elif a0 and _equals(beta, 1):
        primary = NamedEquation.RICCI_SOLITON
    elif _equals(alpha, 1) and _equals(beta, ew_beta):
        primary = NamedEquation.EINSTEIN_WEYL
    elif _equals(alpha, 1) and _equals(beta, ps_beta) and l0:
        primary = NamedEquation.PROJECTIVE_SKEW
    elif _equals(alpha, 1) and _equals(beta, nh_beta):
        primary = NamedEquation.NEAR_HORIZON
    else:
        primary = NamedEquation.GENERIC

    ab = _product(alpha, beta)
    compatible: List[NamedEquation] = []
    scalings: Dict[str, float] = {}
    if a0 and b0:
        compatible.append(NamedEquation.KILLING if l0 else NamedEquation.HOMOTHETIC)
    if a0 and not b0:
        compatible.append(NamedEquation.RICCI_SOLITON)
        scalings[NamedEquation.RICCI_SOLITON.value] = 1.0 / float(beta)
    if not a0:
        for name, target, needs_zero_lam in (
            (NamedEquation.EINSTEIN_WEYL, ew_beta, False),
            (NamedEquation.PROJECTIVE_SKEW, ps_beta, True),
            (NamedEquation.NEAR_HORIZON, nh_beta, False),
        ):
            if _equals(ab, target) and (l0 or not needs_zero_lam):
                compatible.append(name)
                scalings[name.value] = float(alpha)

    sign_compatible: List[NamedEquation] = []
    notes: List[str] = []
    ab_f = float(ab)
    if ab_f < 0:
        sign_compatible.append(NamedEquation.EINSTEIN_WEYL)
        if l0:
            sign_compatible.append(NamedEquation.PROJECTIVE_SKEW)
    elif ab_f > 0:
        sign_compatible.append(NamedEquation.NEAR_HORIZON)
        if not _equals(ab, nh_beta):
            notes.append(
                "near-horizon compatibility keyed on sign(alpha*beta); the defining "
                "bullet gives alpha*beta = 1/2 while a later statement uses alpha*beta = 1"
            )

    return NamedClassification(
        primary=primary,
        compatible=tuple(compatible),
        scalings=scalings,
        sign_compatible=tuple(sign_compatible),
        notes=tuple(notes),
    )


def scaling_action(cand: CandidateSolution, c: float) -> CandidateSolution:
    """(X, α, β, λ) → (cX, α/c, cβ, cλ); the residual scales by c."""
    if c == 0:
        raise ValidationError("c != 0 violated")
    p = cand.params
    scaled = replace(
        p,
        alpha=p.alpha / c,
        beta=p.beta * c,
        lam=None if p.lam is None else p.lam * c,
    )
    return CandidateSolution(tuple(float(x) * c for x in cand.X), scaled)
