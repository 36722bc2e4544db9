"""
Tests for the metric Lie algebra catalog.
Covers:
1. Instance validation and the JSON schema.
2. Structure constants, Jacobi identity and unimodularity.
3. The cross product, the endomorphism L and Segre labels.
4. Group identification tables.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.grs3d.algebra_catalog import (
    FamilyTag,
    GroupName,
    MetricSignature,
    SegreType,
    cross_product,
    identify_group,
    instance_from_dict,
    is_unimodular,
    jacobi_defect,
    l_endomorphism,
    make_instance,
    segre_label,
    structure_tensor,
)
from src.grs3d.errors import DomainError, SchemaError, ValidationError

finite = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)


# --- Validation Tests ---

def test_make_instance_accepts_exact_and_float():
    inst = make_instance("riem-unimodular", {"A": 1, "B": Fraction(1, 2), "C": 0.25})
    assert inst.tag is FamilyTag.RIEM_UNIMODULAR
    assert inst["B"] == 0.5
    assert not inst.exact
    assert make_instance("g3", {"A": 1, "B": 2, "C": Fraction(3, 4)}).exact


def test_make_instance_rejects_g7_constraint():
    with pytest.raises(ValidationError, match="AC = 0"):
        make_instance("g7", {"A": 1, "B": 2, "C": 1, "D": 1})


@pytest.mark.parametrize(
    "family, params, label",
    [
        ("riem-nonunimodular", {"A": 1, "B": 0, "C": 0, "D": -1}, "A\\+D != 0"),
        ("riem-nonunimodular", {"A": 1, "B": 1, "C": 1, "D": 1}, "AC\\+BD = 0"),
        ("g5", {"A": 2, "B": 1, "C": 1, "D": 1}, "AC\\+BD = 0"),
        ("g6", {"A": 1, "B": 1, "C": -1, "D": 1}, "AC-BD = 0"),
        ("g1", {"A": 0, "B": 1}, "A != 0"),
        ("g2", {"A": 1, "B": 1, "C": 0}, "C != 0"),
        ("g4", {"A": 1, "B": 1, "eta": 2}, "eta"),
    ],
)
def test_make_instance_names_violated_constraint(family, params, label):
    with pytest.raises(ValidationError, match=label):
        make_instance(family, params)


def test_make_instance_schema_errors():
    with pytest.raises(SchemaError, match="missing C"):
        make_instance("g3", {"A": 1, "B": 1})
    with pytest.raises(SchemaError, match="unexpected D"):
        make_instance("g3", {"A": 1, "B": 1, "C": 1, "D": 1})
    with pytest.raises(SchemaError, match="Unknown family"):
        make_instance("g9", {"A": 1})
    with pytest.raises(SchemaError, match="finite"):
        make_instance("g3", {"A": float("nan"), "B": 1, "C": 1})


def test_float_constraint_tolerance():
    # AC + BD = 1e-14 is accepted for floats, rejected when exact
    make_instance("g5", {"A": 1.0, "B": 1.0, "C": -1.0 + 1e-14, "D": 1.0})
    with pytest.raises(ValidationError):
        make_instance("g5", {"A": 1, "B": 1, "C": Fraction(-10**14 + 1, 10**14), "D": 1})


def test_instance_dict_round_trip():
    inst = make_instance("g4", {"A": 1.5, "B": -2, "eta": -1})
    back = instance_from_dict(inst.to_dict())
    assert back.tag is inst.tag
    assert back.values == inst.values
    assert instance_from_dict({"instance": inst.to_dict()}).values == inst.values
    with pytest.raises(SchemaError):
        instance_from_dict({"params": {}})


def test_signature_rejects_other_patterns():
    with pytest.raises(ValidationError):
        MetricSignature((1, -1, 1))


# --- Structure Constant Tests ---

def test_riem_unimodular_brackets():
    c = structure_tensor(make_instance("riem-unimodular", {"A": 1, "B": 2, "C": 3})).components
    assert c[0, 1, 2] == 3  # [e1,e2] = C e3
    assert c[1, 2, 0] == 1  # [e2,e3] = A e1
    assert c[2, 0, 1] == 2  # [e3,e1] = B e2
    assert np.allclose(c, -np.transpose(c, (1, 0, 2)))


def test_g4_brackets_depend_on_eta():
    c = structure_tensor(make_instance("g4", {"A": 1, "B": 3, "eta": -1})).components
    assert np.allclose(c[0, 1], [0, -1, -5])
    assert np.allclose(c[0, 2], [0, -3, 1])
    assert np.allclose(c[1, 2], [1, 0, 0])


def test_jacobi_holds_for_random_draws(random_instances):
    for tag, draws in random_instances.items():
        for inst in draws:
            assert jacobi_defect(structure_tensor(inst)) < 1e-10, tag


@settings(max_examples=50, deadline=None)
@given(a=finite, b=finite, c=finite)
def test_jacobi_property_unimodular(a, b, c):
    for family in ("riem-unimodular", "g3", "special-riem", "special-lor"):
        inst = make_instance(family, {"A": a, "B": b, "C": c})
        assert jacobi_defect(structure_tensor(inst)) < 1e-9


@pytest.mark.parametrize(
    "family, params, expected",
    [
        ("riem-unimodular", {"A": 1, "B": 2, "C": 3}, True),
        ("g1", {"A": 1, "B": 2}, True),
        ("g2", {"A": 1, "B": 2, "C": 1}, True),
        ("g4", {"A": 1, "B": 2, "eta": 1}, True),
        ("g5", {"A": 1, "B": 0, "C": 0, "D": 1}, False),
        ("g7", {"A": 1, "B": 1, "C": 0, "D": 2}, False),
        ("special-riem", {"A": 1, "B": 0, "C": 0}, False),
        ("special-riem", {"A": 0, "B": 0, "C": 0}, True),
    ],
)
def test_is_unimodular(family, params, expected):
    assert is_unimodular(make_instance(family, params)) is expected


# --- Cross Product and L Tests ---

def test_lorentzian_cross_product_table():
    e1, e2, e3 = np.eye(3)
    lor = MetricSignature.lorentzian()
    assert np.allclose(cross_product(e1, e2, lor), -e3)
    assert np.allclose(cross_product(e2, e3, lor), e1)
    assert np.allclose(cross_product(e3, e1, lor), e2)
    assert np.allclose(cross_product(e1, e2, MetricSignature.riemannian()), e3)


def test_l_endomorphism_reproduces_brackets(random_instances):
    for tag in (FamilyTag.G1, FamilyTag.G2, FamilyTag.G3, FamilyTag.G4, FamilyTag.RIEM_UNIMODULAR):
        for inst in random_instances[tag][:5]:
            L = l_endomorphism(inst).matrix
            st_ = structure_tensor(inst)
            for i, j in ((0, 1), (0, 2), (1, 2)):
                u, v = np.eye(3)[i], np.eye(3)[j]
                assert np.allclose(st_.bracket(u, v), L @ cross_product(u, v, inst.signature))


def test_l_endomorphism_g1_matrix():
    L = l_endomorphism(make_instance("g1", {"A": 2, "B": 3})).matrix
    assert np.allclose(L, [[3, 2, -2], [2, 3, 0], [2, 0, 3]])


@pytest.mark.parametrize(
    "family, params, segre",
    [
        ("g1", {"A": 1, "B": 0}, SegreType.TRIPLE_3),
        ("g2", {"A": 1, "B": 2, "C": 1}, SegreType.COMPLEX_1ZZ),
        ("g3", {"A": 1, "B": 2, "C": 3}, SegreType.DIAGONAL_11_1),
        ("g4", {"A": 3, "B": 2, "eta": 1}, SegreType.DOUBLE_21),
        ("riem-unimodular", {"A": 1, "B": 1, "C": 1}, SegreType.DIAGONAL),
    ],
)
def test_segre_labels(family, params, segre):
    assert l_endomorphism(make_instance(family, params)).segre is segre


def test_segre_label_of_defective_matrices():
    assert segre_label(np.array([[2.0, 1, 0], [0, 2, 0], [0, 0, 5]])) is SegreType.DOUBLE_21
    assert segre_label(np.array([[2.0, 1, 0], [0, 2, 1], [0, 0, 2]])) is SegreType.TRIPLE_3
    assert segre_label(np.diag([2.0, 2, 5])) is SegreType.DIAGONAL_11_1


def test_l_endomorphism_requires_unimodular():
    with pytest.raises(DomainError):
        l_endomorphism(make_instance("g5", {"A": 1, "B": 0, "C": 0, "D": 1}))


# --- Group Identification Tests ---

@pytest.mark.parametrize(
    "abc, group",
    [
        ((1, 1, 1), GroupName.SU2),
        ((-1, -2, -3), GroupName.SU2),
        ((1, 1, -1), GroupName.SL2R),
        ((-1, 2, -3), GroupName.SL2R),
        ((0, 1, 1), GroupName.E2),
        ((1, -1, 0), GroupName.E11),
        ((0, 0, -2), GroupName.H3),
        ((0, 0, 0), GroupName.R3),
    ],
)
def test_identify_group_riemannian(abc, group):
    inst = make_instance("riem-unimodular", dict(zip("ABC", abc)))
    assert identify_group(inst) is group


@pytest.mark.parametrize(
    "abc, group",
    [
        ((1, 1, 1), GroupName.SL2R),
        ((1, -1, -1), GroupName.SL2R),
        ((1, 1, -1), GroupName.SU2),
        ((-1, -1, 1), GroupName.SU2),
        ((1, 1, 0), GroupName.E2),
        ((1, 0, -1), GroupName.E2),
        ((0, 1, -1), GroupName.E2),
        ((1, -1, 0), GroupName.E11),
        ((1, 0, 1), GroupName.E11),
        ((1, 0, 0), GroupName.H3),
        ((0, 0, -1), GroupName.H3),
        ((0, 0, 0), GroupName.R3),
    ],
)
def test_identify_group_g3(abc, group):
    inst = make_instance("g3", dict(zip("ABC", abc)))
    assert identify_group(inst) is group


@pytest.mark.parametrize(
    "params, group",
    [
        ({"A": 1, "B": 3, "eta": 1}, GroupName.SL2R),
        ({"A": 0, "B": 3, "eta": 1}, GroupName.E11),
        ({"A": -1, "B": 1, "eta": 1}, GroupName.E11),
        ({"A": 1, "B": 1, "eta": 1}, GroupName.E2),
        ({"A": 0, "B": -1, "eta": -1}, GroupName.H3),
    ],
)
def test_identify_group_g4(params, group):
    assert identify_group(make_instance("g4", params)) is group


def test_identify_group_g1_g2_and_nonunimodular():
    assert identify_group(make_instance("g1", {"A": 1, "B": 2})) is GroupName.SL2R
    assert identify_group(make_instance("g1", {"A": 1, "B": 0})) is GroupName.E11
    assert identify_group(make_instance("g2", {"A": 0, "B": 2, "C": 1})) is GroupName.E11
    assert identify_group(make_instance("g2", {"A": 1, "B": 2, "C": 1})) is GroupName.SL2R
    assert (
        identify_group(make_instance("g5", {"A": 1, "B": 0, "C": 0, "D": 1}))
        is GroupName.UNCLASSIFIED_NONUNIMODULAR
    )
