"""
Metric Lie algebra catalog: the ten three-dimensional families, their
bracket tables, constraint validation and group identification.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Real
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from src.grs3d.config import CONSTRAINT_TOL, SEGRE_TOL
from src.grs3d.errors import DomainError, SchemaError, ValidationError

logger = logging.getLogger(__name__)

Number = int | Fraction | float


class FamilyTag(str, Enum):
    RIEM_UNIMODULAR = "riem-unimodular"
    RIEM_NONUNIMODULAR = "riem-nonunimodular"
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    G4 = "g4"
    G5 = "g5"
    G6 = "g6"
    G7 = "g7"
    SPECIAL_RIEM = "special-riem"
    SPECIAL_LOR = "special-lor"

    @property
    def riemannian(self) -> bool:
        return self in _RIEMANNIAN_TAGS

    @classmethod
    def parse(cls, raw: "str | FamilyTag") -> "FamilyTag":
        if isinstance(raw, FamilyTag):
            return raw
        key = str(raw).strip().lower().replace("_", "-")
        for tag in cls:
            if tag.value == key or tag.name.lower().replace("_", "-") == key:
                return tag
        raise SchemaError(f"Unknown family: {raw!r}")


_RIEMANNIAN_TAGS = frozenset(
    {FamilyTag.RIEM_UNIMODULAR, FamilyTag.RIEM_NONUNIMODULAR, FamilyTag.SPECIAL_RIEM}
)

FAMILY_PARAMS: Dict[FamilyTag, Tuple[str, ...]] = {
    FamilyTag.RIEM_UNIMODULAR: ("A", "B", "C"),
    FamilyTag.RIEM_NONUNIMODULAR: ("A", "B", "C", "D"),
    FamilyTag.G1: ("A", "B"),
    FamilyTag.G2: ("A", "B", "C"),
    FamilyTag.G3: ("A", "B", "C"),
    FamilyTag.G4: ("A", "B", "eta"),
    FamilyTag.G5: ("A", "B", "C", "D"),
    FamilyTag.G6: ("A", "B", "C", "D"),
    FamilyTag.G7: ("A", "B", "C", "D"),
    FamilyTag.SPECIAL_RIEM: ("A", "B", "C"),
    FamilyTag.SPECIAL_LOR: ("A", "B", "C"),
}


@dataclass(frozen=True)
class MetricSignature:
    """Causal characters (ε₁, ε₂, ε₃) of the pseudo-orthonormal basis."""

    causal_signs: Tuple[int, int, int]

    def __post_init__(self) -> None:
        if tuple(self.causal_signs) not in ((1, 1, 1), (1, 1, -1)):
            raise ValidationError(
                f"Unsupported signature {self.causal_signs}; only (+,+,+) and (+,+,-)"
            )

    @classmethod
    def riemannian(cls) -> "MetricSignature":
        return cls((1, 1, 1))

    @classmethod
    def lorentzian(cls) -> "MetricSignature":
        return cls((1, 1, -1))

    @property
    def is_lorentzian(self) -> bool:
        return self.causal_signs[2] == -1

    @property
    def eps(self) -> np.ndarray:
        return np.array(self.causal_signs, dtype=float)

    def metric(self) -> np.ndarray:
        return np.diag(self.eps)

    def inner(self, u: Iterable[float], v: Iterable[float]) -> float:
        return float(np.dot(self.eps * np.asarray(u, dtype=float), np.asarray(v, dtype=float)))


@dataclass(frozen=True)
class FamilyInstance:
    """A validated metric Lie algebra: family tag, parameters, signature."""

    tag: FamilyTag
    params: Tuple[Tuple[str, Number], ...]
    signature: MetricSignature

    def __getitem__(self, name: str) -> float:
        for key, value in self.params:
            if key == name:
                return float(value)
        raise KeyError(name)

    @property
    def values(self) -> Dict[str, float]:
        return {k: float(v) for k, v in self.params}

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for _, v in self.params)

    @property
    def scale(self) -> float:
        return max((abs(float(v)) for k, v in self.params if k != "eta"), default=0.0)

    def to_dict(self) -> dict:
        return {
            "family": self.tag.value,
            "params": {k: (int(v) if k == "eta" else float(v)) for k, v in self.params},
        }


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """c[i, j, k] with [e_i, e_j] = Σ_k c[i, j, k] e_k (0-based indices)."""

    components: np.ndarray

    def bracket(self, u: Iterable[float], v: Iterable[float]) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(u, float), np.asarray(v, float), self.components)

    def ad(self, i: int) -> np.ndarray:
        """Matrix of ad(e_i): column j holds [e_i, e_j]."""
        return self.components[i].T


class SegreType(str, Enum):
    DIAGONAL = "DIAGONAL"
    DIAGONAL_11_1 = "{11,1}"
    COMPLEX_1ZZ = "{1zz}"
    DOUBLE_21 = "{21}"
    TRIPLE_3 = "{3}"


@dataclass(frozen=True, eq=False)
class LEndomorphism:
    matrix: np.ndarray
    segre: SegreType


class GroupName(str, Enum):
    SU2 = "SU(2)"
    SL2R = "~SL(2,R)"
    E2 = "~E(2)"
    E11 = "E(1,1)"
    H3 = "H3"
    R3 = "R3"
    UNCLASSIFIED_NONUNIMODULAR = "UNCLASSIFIED_NONUNIMODULAR"


# ------------------------------------------------------------------
# Parameters and constraints
# ------------------------------------------------------------------

def _is_exact(value: Number) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _coerce(name: str, value: object) -> Number:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise SchemaError(f"Parameter {name} must be a real number, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return value
    value = float(value)
    if not np.isfinite(value):
        raise SchemaError(f"Parameter {name} must be finite, got {value!r}")
    return value


def _constraints(tag: FamilyTag, p: Mapping[str, float]) -> List[Tuple[str, str, float]]:
    """(kind, label, quantity): kind 'nonzero' or 'zero'."""
    if tag in (FamilyTag.RIEM_NONUNIMODULAR, FamilyTag.G5):
        return [
            ("nonzero", "A+D != 0", p["A"] + p["D"]),
            ("zero", "AC+BD = 0", p["A"] * p["C"] + p["B"] * p["D"]),
        ]
    if tag is FamilyTag.G6:
        return [
            ("nonzero", "A+D != 0", p["A"] + p["D"]),
            ("zero", "AC-BD = 0", p["A"] * p["C"] - p["B"] * p["D"]),
        ]
    if tag is FamilyTag.G7:
        return [
            ("nonzero", "A+D != 0", p["A"] + p["D"]),
            ("zero", "AC = 0", p["A"] * p["C"]),
        ]
    if tag is FamilyTag.G1:
        return [("nonzero", "A != 0", p["A"])]
    if tag is FamilyTag.G2:
        return [("nonzero", "C != 0", p["C"])]
    return []


def make_instance(tag: "FamilyTag | str", params: Mapping[str, object]) -> FamilyInstance:
    """Validate *params* against the family's schema and constraints.

    Raises:
        SchemaError: missing or unexpected parameter names.
        ValidationError: a family constraint is violated.
    """
    tag = FamilyTag.parse(tag)
    required = FAMILY_PARAMS[tag]
    missing = [k for k in required if k not in params]
    extra = [k for k in params if k not in required]
    if missing or extra:
        raise SchemaError(
            f"Family {tag.value} requires {', '.join(required)}"
            + (f"; missing {', '.join(missing)}" if missing else "")
            + (f"; unexpected {', '.join(extra)}" if extra else "")
        )

    values: Dict[str, Number] = {}
    for name in required:
        values[name] = _coerce(name, params[name])
    if "eta" in values:
        eta = values["eta"]
        if float(eta) not in (1.0, -1.0):
            raise ValidationError(f"eta = ±1 violated (got {eta})")
        values["eta"] = int(float(eta))

    exact = all(_is_exact(v) for v in values.values())
    scale = max((abs(float(v)) for k, v in values.items() if k != "eta"), default=0.0)
    tol = 0.0 if exact else CONSTRAINT_TOL * max(1.0, scale) ** 2

    if exact:
        checked: Mapping[str, Number] = values
    else:
        checked = {k: float(v) for k, v in values.items()}
    for kind, label, quantity in _constraints(tag, checked):
        violated = abs(quantity) <= tol if kind == "nonzero" else abs(quantity) > tol
        if violated:
            raise ValidationError(f"{tag.value}: constraint {label} violated")

    signature = MetricSignature.riemannian() if tag.riemannian else MetricSignature.lorentzian()
    inst = FamilyInstance(tag, tuple((k, values[k]) for k in required), signature)

    defect = jacobi_defect(structure_tensor(inst))
    if defect > CONSTRAINT_TOL * max(1.0, scale) ** 2:
        raise ValidationError(f"{tag.value}: Jacobi identity fails (defect {defect:.3e})")
    return inst


def instance_from_dict(data: Mapping[str, object]) -> FamilyInstance:
    """Inverse of FamilyInstance.to_dict; also accepts a describe report."""
    if "instance" in data and isinstance(data["instance"], Mapping):
        data = data["instance"]
    try:
        family = data["family"]
        params = data["params"]
    except (KeyError, TypeError) as e:
        raise SchemaError(f"Instance JSON needs 'family' and 'params': {e}") from e
    if not isinstance(params, Mapping):
        raise SchemaError("'params' must be an object")
    return make_instance(str(family), dict(params))


def sample_instance(
    tag: "FamilyTag | str", rng: np.random.Generator, bound: float = 5.0, margin: float = 0.1
) -> FamilyInstance:
    """Random constraint-satisfying instance with parameters in [-bound, bound]."""
    tag = FamilyTag.parse(tag)

    def u() -> float:
        return float(rng.uniform(-bound, bound))

    for _ in range(1000):
        p: Dict[str, Number] = {k: u() for k in FAMILY_PARAMS[tag] if k != "eta"}
        if tag is FamilyTag.G4:
            p["eta"] = int(rng.choice([-1, 1]))
        if tag in (FamilyTag.RIEM_NONUNIMODULAR, FamilyTag.G5, FamilyTag.G6):
            if abs(p["A"]) < margin:
                continue
            sign = -1.0 if tag is FamilyTag.G6 else 1.0
            p["C"] = -sign * p["B"] * p["D"] / p["A"]
            if abs(p["C"]) > bound:
                continue
        if tag is FamilyTag.G7:
            if rng.random() < 0.5:
                p["A"] = 0.0
            else:
                p["C"] = 0.0
        if "D" in p and abs(p["A"] + p["D"]) < margin:
            continue
        if tag is FamilyTag.G1 and abs(p["A"]) < margin:
            continue
        if tag is FamilyTag.G2 and abs(p["C"]) < margin:
            continue
        try:
            return make_instance(tag, p)
        except ValidationError:
            continue
    raise ValidationError(f"Could not sample a valid {tag.value} instance")


# ------------------------------------------------------------------
# Brackets
# ------------------------------------------------------------------

def _bracket_table(inst: FamilyInstance) -> Dict[Tuple[int, int], Tuple[float, float, float]]:
    v = inst.values
    A, B = v.get("A", 0.0), v.get("B", 0.0)
    C, D = v.get("C", 0.0), v.get("D", 0.0)
    tag = inst.tag
    if tag is FamilyTag.RIEM_UNIMODULAR:
        return {(0, 1): (0, 0, C), (0, 2): (0, -B, 0), (1, 2): (A, 0, 0)}
    if tag in (FamilyTag.RIEM_NONUNIMODULAR, FamilyTag.G6):
        return {(0, 1): (0, A, B), (0, 2): (0, C, D), (1, 2): (0, 0, 0)}
    if tag is FamilyTag.G1:
        return {(0, 1): (A, 0, -B), (0, 2): (-A, -B, 0), (1, 2): (B, A, A)}
    if tag is FamilyTag.G2:
        return {(0, 1): (0, -C, -B), (0, 2): (0, -B, C), (1, 2): (A, 0, 0)}
    if tag is FamilyTag.G3:
        return {(0, 1): (0, 0, -C), (0, 2): (0, -B, 0), (1, 2): (A, 0, 0)}
    if tag is FamilyTag.G4:
        eta = v["eta"]
        return {(0, 1): (0, -1, 2 * eta - B), (0, 2): (0, -B, 1), (1, 2): (A, 0, 0)}
    if tag is FamilyTag.G5:
        return {(0, 1): (0, 0, 0), (0, 2): (A, B, 0), (1, 2): (C, D, 0)}
    if tag is FamilyTag.G7:
        return {(0, 1): (-A, -B, -B), (0, 2): (A, B, B), (1, 2): (C, D, D)}
    # special-riem / special-lor: [x, y] = l(x) y - l(y) x with l(e_i) = A, B, C
    return {(0, 1): (B, -A, 0), (0, 2): (C, 0, -A), (1, 2): (0, C, -B)}


def structure_tensor(inst: FamilyInstance) -> StructureTensor:
    c = np.zeros((3, 3, 3))
    for (i, j), row in _bracket_table(inst).items():
        c[i, j] = row
        c[j, i] = -np.asarray(row, dtype=float)
    return StructureTensor(c)


def jacobi_defect(st: StructureTensor) -> float:
    """Max |[[e_i,e_j],e_k] + cyclic| over all basis triples."""
    c = st.components
    # [[e_i,e_j],e_k] = Σ_m c[i,j,m] c[m,k,:]
    term = np.einsum("ijm,mkn->ijkn", c, c)
    cyclic = term + np.transpose(term, (1, 2, 0, 3)) + np.transpose(term, (2, 0, 1, 3))
    return float(np.max(np.abs(cyclic)))


def is_unimodular(inst: FamilyInstance, tol: float = CONSTRAINT_TOL) -> bool:
    c = structure_tensor(inst).components
    traces = np.einsum("ijj->i", c)
    return bool(np.all(np.abs(traces) <= tol * max(1.0, inst.scale)))


# ------------------------------------------------------------------
# Cross product and the endomorphism L
# ------------------------------------------------------------------

def cross_product(u: Iterable[float], v: Iterable[float], sig: MetricSignature) -> np.ndarray:
    """Riemannian: right-handed cross product. Lorentzian: e1×e2 = -e3,
    e2×e3 = e1, e3×e1 = e2."""
    w = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    if sig.is_lorentzian:
        w[2] = -w[2]
    return w


def l_endomorphism(inst: FamilyInstance, tol: float = SEGRE_TOL) -> LEndomorphism:
    """Matrix of L with [Z, Y] = L(Z × Y), and its Segre label.

    Raises:
        DomainError: the instance is not unimodular.
    """
    if not is_unimodular(inst):
        raise DomainError(f"{inst.tag.value}: L is only defined for unimodular algebras")
    st = structure_tensor(inst)
    basis = np.eye(3)
    L = np.zeros((3, 3))
    for i, j in ((1, 2), (2, 0), (0, 1)):
        image = cross_product(basis[i], basis[j], inst.signature)
        k = int(np.argmax(np.abs(image)))
        L[:, k] = st.bracket(basis[i], basis[j]) / image[k]
    if not inst.signature.is_lorentzian:
        return LEndomorphism(L, SegreType.DIAGONAL)
    return LEndomorphism(L, segre_label(L, tol))


def segre_label(L: np.ndarray, tol: float = SEGRE_TOL) -> SegreType:
    """Jordan class of a real 3×3 matrix, read off the characteristic
    polynomial and the rank of L - μI at a repeated root."""
    scale = float(np.max(np.abs(L)))
    if scale == 0.0:
        return SegreType.DIAGONAL_11_1
    M = L / scale
    tr = float(np.trace(M))
    c1 = 0.5 * (tr ** 2 - float(np.trace(M @ M)))
    det = float(np.linalg.det(M))
    # t^3 + b t^2 + c t + d
    b, c, d = -tr, c1, -det
    disc = 18 * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2 - 4 * c ** 3 - 27 * d ** 2
    if disc < -tol:
        return SegreType.COMPLEX_1ZZ
    if disc > tol:
        return SegreType.DIAGONAL_11_1

    delta0 = b * b - 3 * c
    triple = abs(delta0) <= tol ** 0.5
    mu = -b / 3 if triple else (9 * d - b * c) / (2 * delta0)
    rank = int(np.linalg.matrix_rank(M - mu * np.eye(3), tol=tol ** 0.5))
    if triple:
        return {0: SegreType.DIAGONAL_11_1, 1: SegreType.DOUBLE_21}.get(rank, SegreType.TRIPLE_3)
    return SegreType.DIAGONAL_11_1 if rank <= 1 else SegreType.DOUBLE_21


# ------------------------------------------------------------------
# Group identification
# ------------------------------------------------------------------

def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


_TABLE_RIEMANNIAN: Dict[Tuple[int, int, int], GroupName] = {
    (1, 1, 1): GroupName.SU2,
    (1, 1, -1): GroupName.SL2R,
    (1, 1, 0): GroupName.E2,
    (1, 0, -1): GroupName.E11,
    (1, 0, 0): GroupName.H3,
    (0, 0, 0): GroupName.R3,
}

_TABLE_G3: Dict[Tuple[int, int, int], GroupName] = {
    (1, 1, 1): GroupName.SL2R,
    (1, -1, -1): GroupName.SL2R,
    (1, 1, -1): GroupName.SU2,
    (1, 1, 0): GroupName.E2,
    (1, 0, -1): GroupName.E2,
    (1, -1, 0): GroupName.E11,
    (1, 0, 1): GroupName.E11,
    (1, 0, 0): GroupName.H3,
    (0, 0, -1): GroupName.H3,
    (0, 0, 0): GroupName.R3,
}


def _lookup_riemannian(signs: Tuple[int, int, int]) -> Optional[GroupName]:
    pos, neg = signs.count(1), signs.count(-1)
    if neg > pos:
        signs = tuple(-s for s in signs)
    return _TABLE_RIEMANNIAN.get(tuple(sorted(signs, reverse=True)))


def _lookup_g3(signs: Tuple[int, int, int]) -> Optional[GroupName]:
    a, b, c = signs
    for key in ((a, b, c), (b, a, c), (-a, -b, -c), (-b, -a, -c)):
        if key in _TABLE_G3:
            return _TABLE_G3[key]
    return None


def identify_group(inst: FamilyInstance) -> GroupName:
    """Sign-pattern lookup of the simply connected group for the families
    with a published identification."""
    v = inst.values
    tag = inst.tag
    group: Optional[GroupName] = None
    if tag is FamilyTag.RIEM_UNIMODULAR:
        group = _lookup_riemannian((_sign(v["A"]), _sign(v["B"]), _sign(v["C"])))
    elif tag is FamilyTag.G3:
        group = _lookup_g3((_sign(v["A"]), _sign(v["B"]), _sign(v["C"])))
    elif tag is FamilyTag.G1:
        group = GroupName.SL2R if v["B"] != 0 else GroupName.E11
    elif tag is FamilyTag.G2:
        group = GroupName.SL2R if v["A"] != 0 else GroupName.E11
    elif tag is FamilyTag.G4:
        eta_a = v["eta"] * v["A"]
        if v["B"] != v["eta"]:
            group = GroupName.SL2R if eta_a != 0 else GroupName.E11
        elif eta_a < 0:
            group = GroupName.E11
        elif eta_a > 0:
            group = GroupName.E2
        else:
            group = GroupName.H3
    if group is None:
        if tag in (FamilyTag.RIEM_UNIMODULAR, FamilyTag.G3):
            logger.warning("No table entry for %s %s", tag.value, inst.values)
        return GroupName.UNCLASSIFIED_NONUNIMODULAR
    return group
