"""
Levi-Civita connection and curvature of a left-invariant metric, computed
in the pseudo-orthonormal basis of the catalog.

Conventions:
    ∇_{e_i} e_j = Σ_k Γ[i, j, k] e_k
    R(X, Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_[X,Y], R[i, j, k, l] = e_l-component of R(e_i, e_j)e_k
    Ric(Y, Z) = tr(X ↦ R(X, Y)Z)
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from src.grs3d.algebra_catalog import FamilyInstance, FamilyTag, structure_tensor
from src.grs3d.config import CURVATURE_FLOOR, CURVATURE_TOL
from src.grs3d.errors import DomainError

logger = logging.getLogger(__name__)

_PRINCIPAL_PLANES = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    gamma: np.ndarray

    def covariant(self, x: Iterable[float], y: Iterable[float]) -> np.ndarray:
        """∇_x y for left-invariant fields x, y given by their coordinates."""
        return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float), self.gamma)


@dataclass(frozen=True, eq=False)
class RicciTensor:
    components: np.ndarray

    def __getitem__(self, key: Tuple[int, int]) -> float:
        return float(self.components[key])


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    ricci: RicciTensor
    scalar_curvature: float
    sectional: Tuple[float, float, float]
    sectional_is_constant: bool
    is_einstein: bool
    is_flat: bool
    sectional_constant: Optional[float]
    naturally_reductive: Optional[bool] = None
    proper_naturally_reductive: bool = False

    def to_dict(self) -> dict:
        return {
            "ricci": self.ricci.components.tolist(),
            "scalar_curvature": self.scalar_curvature,
            "sectional": list(self.sectional),
            "sectional_is_constant": self.sectional_is_constant,
            "is_einstein": self.is_einstein,
            "is_flat": self.is_flat,
            "sectional_constant": self.sectional_constant,
            "naturally_reductive": self.naturally_reductive,
            "proper_naturally_reductive": self.proper_naturally_reductive,
        }


@dataclass(frozen=True)
class RecurrenceReport:
    norm: float
    light_like: bool
    recurrent: bool
    omega: Optional[Tuple[float, float, float]]

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "light_like": self.light_like,
            "recurrent": self.recurrent,
            "omega": list(self.omega) if self.omega is not None else None,
        }


def connection(inst: FamilyInstance) -> ConnectionCoefficients:
    """Koszul formula for left-invariant fields:
    2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)."""
    c = structure_tensor(inst).components
    eps = inst.signature.eps
    # c[i,j,k] ε_k − c[j,k,i] ε_i + c[k,i,j] ε_j, divided by 2ε_k
    lowered = (
        c * eps[None, None, :]
        - np.transpose(c, (2, 0, 1)) * eps[:, None, None]
        + np.transpose(c, (1, 2, 0)) * eps[None, :, None]
    )
    return ConnectionCoefficients(lowered / (2.0 * eps[None, None, :]))


def riemann(inst: FamilyInstance) -> np.ndarray:
    gamma = connection(inst).gamma
    c = structure_tensor(inst).components
    # ∇_i∇_j e_k = Σ_m Γ[j,k,m] Γ[i,m,:]
    nested = np.einsum("jkm,imn->ijkn", gamma, gamma)
    return nested - np.transpose(nested, (1, 0, 2, 3)) - np.einsum("ijm,mkn->ijkn", c, gamma)


def ricci(inst: FamilyInstance) -> RicciTensor:
    R = riemann(inst)
    ric = np.einsum("iabi->ab", R)
    return RicciTensor(0.5 * (ric + ric.T))


def scalar_curvature(inst: FamilyInstance) -> float:
    return float(np.sum(inst.signature.eps * np.diag(ricci(inst).components)))


def bianchi_defect(inst: FamilyInstance) -> float:
    """Max |R(e_i,e_j)e_k + cyclic| over all basis triples."""
    R = riemann(inst)
    cyclic = R + np.transpose(R, (1, 2, 0, 3)) + np.transpose(R, (2, 0, 1, 3))
    return float(np.max(np.abs(cyclic)))


def sectional_curvature(
    inst: FamilyInstance, u: Iterable[float], v: Iterable[float], R: Optional[np.ndarray] = None
) -> Optional[float]:
    """g(R(u,v)v, u) / (g(u,u)g(v,v) − g(u,v)²); None on degenerate planes."""
    if R is None:
        R = riemann(inst)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    sig = inst.signature
    denom = sig.inner(u, u) * sig.inner(v, v) - sig.inner(u, v) ** 2
    size = float(np.dot(u, u) * np.dot(v, v))
    if size == 0.0 or abs(denom) <= CURVATURE_TOL * size:
        return None
    Ruvv = np.einsum("i,j,k,ijkn->n", u, v, v, R)
    return sig.inner(Ruvv, u) / denom


def _tolerance(inst: FamilyInstance, R: np.ndarray) -> float:
    magnitude = max(float(np.max(np.abs(R))), inst.scale ** 2)
    return max(CURVATURE_TOL * magnitude, CURVATURE_FLOOR)


def naturally_reductive(inst: FamilyInstance) -> Optional[bool]:
    """Membership in the naturally reductive locus of the families where it is known.

    Riemannian unimodular: two of A, B, C agree. g3: A = B. g4: A = B - eta.
    None for the other families.
    """
    v = inst.values
    tol = CURVATURE_TOL * max(1.0, inst.scale)
    if inst.tag is FamilyTag.RIEM_UNIMODULAR:
        A, B, C = v["A"], v["B"], v["C"]
        return min(abs(A - B), abs(B - C), abs(A - C)) <= tol
    if inst.tag is FamilyTag.G3:
        return abs(v["A"] - v["B"]) <= tol
    if inst.tag is FamilyTag.G4:
        return abs(v["A"] - (v["B"] - v["eta"])) <= tol
    return None


def curvature_report(inst: FamilyInstance) -> CurvatureReport:
    R = riemann(inst)
    ric = ricci(inst)
    eps = inst.signature.eps
    g = np.diag(eps)
    scalar = float(np.sum(eps * np.diag(ric.components)))
    tol = _tolerance(inst, R)

    sectional = tuple(
        float(sectional_curvature(inst, np.eye(3)[i], np.eye(3)[j], R)) for i, j in _PRINCIPAL_PLANES
    )

    # R(X,Y)Z = K(g(Y,Z)X − g(X,Z)Y) for K = scalar/6
    K = scalar / 6.0
    delta = np.eye(3)
    model = K * (
        np.einsum("jk,in->ijkn", g, delta) - np.einsum("ik,jn->ijkn", g, delta)
    )
    constant = bool(np.max(np.abs(R - model)) <= tol)
    einstein = bool(np.max(np.abs(ric.components - (scalar / 3.0) * g)) <= tol)
    flat = bool(np.max(np.abs(R)) <= max(CURVATURE_TOL * inst.scale ** 2, CURVATURE_FLOOR))
    if constant != einstein:
        logger.warning(
            "Einstein and constant-curvature predicates disagree for %s %s",
            inst.tag.value, inst.values,
        )

    reductive = naturally_reductive(inst)
    # locally symmetric members (flat or constant curvature) are not proper
    return CurvatureReport(
        ricci=ric,
        scalar_curvature=scalar,
        sectional=sectional,
        sectional_is_constant=constant,
        is_einstein=einstein,
        is_flat=flat,
        sectional_constant=(0.0 if flat else K) if constant else None,
        naturally_reductive=reductive,
        proper_naturally_reductive=bool(reductive) and not constant,
    )


def null_recurrence_check(
    inst: FamilyInstance, X: Iterable[float], tol: float = CURVATURE_TOL
) -> RecurrenceReport:
    """Is X light-like, and is ∇_{e_i}X = ω_i X for every i?

    Raises:
        DomainError: X is the zero vector.
    """
    X = np.asarray(X, dtype=float)
    length = float(np.dot(X, X))
    if length == 0.0:
        raise DomainError("Recurrence check needs a non-zero vector X")

    norm = inst.signature.inner(X, X)
    light_like = abs(norm) <= tol * length
    conn = connection(inst)
    scale = max(1.0, inst.scale)

    omega = []
    for i in range(3):
        dX = conn.covariant(np.eye(3)[i], X)
        w = float(np.dot(dX, X) / length)
        if np.max(np.abs(dX - w * X)) > tol * scale * np.sqrt(length):
            logger.debug("∇_e%d X not proportional to X for %s", i + 1, inst.tag.value)
            return RecurrenceReport(norm, light_like, False, None)
        omega.append(w)
    return RecurrenceReport(norm, light_like, True, tuple(omega))
