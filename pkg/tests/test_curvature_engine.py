"""
Tests for the curvature engine.
Covers:
1. Connection identities (torsion-free, metric) and the Bianchi identity.
2. Ricci tensors against the published closed forms.
3. Curvature reports on known examples, including the naturally reductive loci.
4. Null recurrence checks.
"""

import numpy as np
import pytest

from src.grs3d.algebra_catalog import make_instance, sample_instance, structure_tensor
from src.grs3d.curvature_engine import (
    bianchi_defect,
    connection,
    curvature_report,
    null_recurrence_check,
    ricci,
    scalar_curvature,
    sectional_curvature,
)
from src.grs3d.errors import DomainError
from src.grs3d.theorem_atlas import instantiate
from tests.closed_forms import ORACLE_FAMILIES, ricci_closed_form


# --- Connection Tests ---

def test_connection_is_torsion_free_and_metric(random_instances):
    for tag, draws in random_instances.items():
        for inst in draws:
            gamma = connection(inst).gamma
            c = structure_tensor(inst).components
            eps = inst.signature.eps
            assert np.allclose(gamma - np.transpose(gamma, (1, 0, 2)), c, atol=1e-10), tag
            lowered = gamma * eps[None, None, :]
            assert np.allclose(lowered + np.transpose(lowered, (0, 2, 1)), 0.0, atol=1e-10), tag


def test_first_bianchi_identity(random_instances):
    for tag, draws in random_instances.items():
        for inst in draws:
            assert bianchi_defect(inst) < 1e-9, tag


# --- Ricci Oracle Tests ---

@pytest.mark.parametrize("family", ORACLE_FAMILIES)
def test_ricci_matches_closed_form(family, rng):
    for _ in range(100):
        inst = sample_instance(family, rng, bound=5.0)
        expected = ricci_closed_form(family, inst.values)
        assert np.allclose(ricci(inst).components, expected, atol=1e-9), inst.values


def test_ricci_is_symmetric(random_instances):
    for draws in random_instances.values():
        for inst in draws:
            ric = ricci(inst).components
            assert np.allclose(ric, ric.T)


def test_g1_ricci_example():
    inst = make_instance("g1", {"A": 1, "B": 2})
    expected = np.array([[-2.0, -2.0, 2.0], [-2.0, -4.0, 2.0], [2.0, 2.0, 0.0]])
    assert np.allclose(ricci(inst).components, expected)
    assert ricci(inst)[0, 1] == pytest.approx(-2.0)


# --- Curvature Report Tests ---

def test_round_su2_has_constant_curvature():
    inst = make_instance("riem-unimodular", {"A": 1, "B": 1, "C": 1})
    report = curvature_report(inst)
    assert np.allclose(report.ricci.components, 0.5 * np.eye(3))
    assert report.scalar_curvature == pytest.approx(1.5)
    assert report.sectional == pytest.approx((0.25, 0.25, 0.25))
    assert report.sectional_is_constant
    assert report.is_einstein
    assert not report.is_flat
    assert report.sectional_constant == pytest.approx(0.25)


def test_special_riemannian_is_hyperbolic():
    inst = make_instance("special-riem", {"A": 1, "B": 0, "C": 0})
    report = curvature_report(inst)
    assert report.sectional_is_constant
    assert report.sectional_constant == pytest.approx(-1.0)
    assert scalar_curvature(inst) == pytest.approx(-6.0)


def test_g7_flat_example():
    inst = make_instance("g7", {"A": 1, "B": 5, "C": 0, "D": 1})
    report = curvature_report(inst)
    assert report.is_flat
    assert report.sectional_constant == 0.0
    assert np.allclose(report.ricci.components, 0.0)


def test_non_einstein_example_reports_no_constant():
    report = curvature_report(make_instance("riem-unimodular", {"A": 1, "B": 2, "C": 3}))
    assert not report.is_einstein
    assert not report.sectional_is_constant
    assert report.sectional_constant is None
    assert set(report.to_dict()) >= {"ricci", "scalar_curvature", "sectional", "is_flat"}


def test_einstein_iff_constant_curvature(random_instances):
    assert sum(len(draws) for draws in random_instances.values()) >= 500
    for draws in random_instances.values():
        for inst in draws:
            report = curvature_report(inst)
            assert report.is_einstein == report.sectional_is_constant


@pytest.mark.parametrize(
    "family, params, reductive, proper",
    [
        ("riem-unimodular", {"A": 2, "B": 2, "C": 1}, True, True),
        ("riem-unimodular", {"A": 1, "B": 2, "C": 2}, True, True),
        ("riem-unimodular", {"A": 0, "B": 0, "C": 1}, True, True),
        ("riem-unimodular", {"A": 1, "B": 1, "C": 0}, True, False),
        ("riem-unimodular", {"A": 1, "B": 1, "C": 1}, True, False),
        ("riem-unimodular", {"A": 1, "B": 2, "C": 3}, False, False),
        ("g3", {"A": 2, "B": 2, "C": 1}, True, True),
        ("g3", {"A": 1, "B": 1, "C": 0}, True, False),
        ("g3", {"A": 1, "B": 2, "C": 3}, False, False),
        ("g4", {"A": 1, "B": 2, "eta": 1}, True, True),
        ("g4", {"A": 1, "B": 0, "eta": -1}, True, True),
        ("g4", {"A": 0, "B": 1, "eta": 1}, True, False),
        ("g4", {"A": 1, "B": 1, "eta": 1}, False, False),
        ("g5", {"A": 1, "B": 0, "C": 0, "D": 1}, None, False),
    ],
)
def test_naturally_reductive_loci(family, params, reductive, proper):
    report = curvature_report(make_instance(family, params))
    assert report.naturally_reductive is reductive
    assert report.proper_naturally_reductive is proper
    if reductive and not proper:
        assert report.sectional_is_constant


def test_soliton_families_sit_on_naturally_reductive_loci():
    for case_id, free in (
        ("riem-unimodular-4", {"A": 2, "C": 1, "alpha": 1, "beta": 1}),
        ("g4-1", {"A": 1, "eta": 1, "alpha": 1, "beta": -1}),
    ):
        for ci in instantiate(case_id, free):
            report = curvature_report(ci.instance)
            assert report.naturally_reductive
            assert report.proper_naturally_reductive
    assert curvature_report(make_instance("riem-unimodular", {"A": 1, "B": 0, "C": 0})).to_dict()[
        "proper_naturally_reductive"
    ] is True


def test_sectional_curvature_degenerate_plane_is_none():
    inst = make_instance("g3", {"A": 1, "B": 2, "C": 3})
    assert sectional_curvature(inst, [1, 0, 0], [0, 1, 1]) is None
    assert sectional_curvature(inst, [1, 0, 0], [2, 0, 0]) is None


# --- Null Recurrence Tests ---

def test_g1_null_vector_is_recurrent():
    inst = make_instance("g1", {"A": 2, "B": 0})
    report = null_recurrence_check(inst, [0, 1, 1])
    assert report.light_like
    assert report.recurrent
    assert report.omega == pytest.approx((0.0, 2.0, -2.0))


def test_g7_null_vector_is_recurrent():
    inst = make_instance("g7", {"A": 1, "B": 3, "C": 0, "D": 2})
    report = null_recurrence_check(inst, [0, 1, 1])
    assert report.light_like
    assert report.recurrent
    assert report.omega == pytest.approx((0.0, 2.0, -2.0))


def test_perturbed_vector_is_not_recurrent():
    inst = make_instance("g1", {"A": 2, "B": 0})
    report = null_recurrence_check(inst, [0.1, 1, 1])
    assert not report.light_like
    assert not report.recurrent
    assert report.omega is None


def test_g1_perturbed_structure_constant_breaks_recurrence():
    inst = make_instance("g1", {"A": 1, "B": 0.1})
    report = null_recurrence_check(inst, [0, 1, 1])
    assert report.light_like
    assert not report.recurrent
    assert report.omega is None


def test_g7_perturbed_structure_constant_breaks_recurrence():
    # AC = 0 forces A = 0 once C moves off zero
    base = null_recurrence_check(make_instance("g7", {"A": 0, "B": 3, "C": 0, "D": 2}), [0, 1, 1])
    assert base.recurrent
    report = null_recurrence_check(make_instance("g7", {"A": 0, "B": 3, "C": 0.1, "D": 2}), [0, 1, 1])
    assert report.light_like
    assert not report.recurrent


def test_recurrence_rejects_zero_vector():
    inst = make_instance("g1", {"A": 1, "B": 0})
    with pytest.raises(DomainError, match="non-zero"):
        null_recurrence_check(inst, [0, 0, 0])


def test_recurrence_report_serializes():
    inst = make_instance("g7", {"A": 0, "B": 1, "C": 1, "D": 1})
    data = null_recurrence_check(inst, [0, 1, 1]).to_dict()
    assert set(data) == {"norm", "light_like", "recurrent", "omega"}
