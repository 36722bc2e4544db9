"""
Tests for the multistart solver and parameter sweeps.
Covers:
1. Solver configuration validation.
2. Solutions of known instances, with λ given and free.
3. Manifold detection and determinism across worker counts.
4. Sweeps, skipped grid points and the CSV layout.
5. Recovery of closed-form branches and the Riemannian Ricci-soliton sweep (slow).
"""

import io
import math

import numpy as np
import pytest

from src.grs3d.algebra_catalog import make_instance
from src.grs3d.errors import ValidationError
from src.grs3d.soliton_solver import (
    SWEEP_HEADER,
    SolveConfig,
    Unknowns,
    solve,
    sweep,
    write_sweep_csv,
)
from src.grs3d.theorem_atlas import get_case, instantiate, sample


@pytest.fixture
def fast_cfg():
    return SolveConfig(starts=60, seed=7, box=5.0)


def _vectors(result):
    return [np.asarray(s.candidate.X) for s in result.solutions]


# --- Config Tests ---

@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"starts": 0}, "starts >= 1"),
        ({"tol": 0.0}, "tol > 0"),
        ({"dedup_radius": -1.0}, "dedup_radius > 0"),
        ({"box": 0.0}, "box > 0"),
        ({"max_iters": 0}, "max_iters >= 1"),
        ({"workers": 0}, "workers >= 1"),
    ],
)
def test_solve_config_rejects_invalid_values(kwargs, message):
    with pytest.raises(ValidationError, match=message):
        SolveConfig(**kwargs)


def test_unknowns_must_agree_with_lambda():
    inst = make_instance("g3", {"A": 1, "B": 1, "C": 1})
    cfg = SolveConfig(unknowns=Unknowns.X_ONLY, starts=2)
    with pytest.raises(ValidationError, match="conflicts"):
        solve(inst, 1, 1, None, cfg)


# --- Solve Tests ---

def test_riem_unimodular_free_lambda(fast_cfg):
    inst = make_instance("riem-unimodular", {"A": 2, "B": 1, "C": 1})
    result = solve(inst, 1, 1, None, fast_cfg)
    assert len(result.solutions) == 2
    firsts = sorted(s.candidate.X[0] for s in result.solutions)
    assert firsts == pytest.approx([-math.sqrt(2), math.sqrt(2)], abs=1e-6)
    for s in result.solutions:
        assert s.candidate.params.lam == pytest.approx(0.0, abs=1e-8)
        assert s.inf_norm < fast_cfg.tol
    assert not result.manifold_flag


def test_g5_solution_with_beta_zero(fast_cfg):
    inst = make_instance("g5", {"A": 1, "B": 0, "C": 0, "D": 1})
    result = solve(inst, 1, 0, None, fast_cfg)
    nontrivial = result.nontrivial(fast_cfg.dedup_radius)
    assert len(nontrivial) == 1
    found = nontrivial[0].candidate
    assert np.allclose(found.X, (0, 0, -1), atol=1e-6)
    assert found.params.lam == pytest.approx(-1.0, abs=1e-6)


def test_bi_invariant_metric_flags_manifold():
    inst = make_instance("riem-unimodular", {"A": 1, "B": 1, "C": 1})
    result = solve(inst, 0, 1, -0.5, SolveConfig(starts=200, seed=1))
    assert result.manifold_flag
    assert len(result.solutions) >= 80


def test_solution_set_serializes(fast_cfg):
    inst = make_instance("g5", {"A": 1, "B": 0, "C": 0, "D": 1})
    result = solve(inst, 1, 0, None, fast_cfg)
    data = result.to_dict(with_diagnostics=True)
    assert len(data["diagnostics"]) == fast_cfg.starts
    assert data["min_residual"] == result.min_residual
    assert "diagnostics" not in result.to_dict(with_diagnostics=False)


def test_workers_do_not_change_results():
    inst = make_instance("riem-unimodular", {"A": 2, "B": 1, "C": 1})
    serial = solve(inst, 1, 1, None, SolveConfig(starts=40, seed=3, workers=1))
    threaded = solve(inst, 1, 1, None, SolveConfig(starts=40, seed=3, workers=4))
    assert [r.final for r in serial.diagnostics] == [r.final for r in threaded.diagnostics]
    assert len(serial.solutions) == len(threaded.solutions)


def test_solve_logs_summary(fast_cfg, mocker):
    info = mocker.patch("src.grs3d.soliton_solver.logger.info")
    inst = make_instance("g5", {"A": 1, "B": 0, "C": 0, "D": 1})
    solve(inst, 1, 0, None, fast_cfg)
    info.assert_called_once()
    assert "Solved" in info.call_args.args[0]


# --- Sweep Tests ---

def test_sweep_skips_constraint_violators():
    cfg = SolveConfig(starts=10, seed=0, box=3.0)
    grid = {"A": [0, 1], "B": [1], "C": [0, 1], "D": [1]}
    rows = sweep("g7", grid, 1, -1, cfg, lam=0)
    assert len(rows) == 3
    assert all(r.params["A"] * r.params["C"] == 0 for r in rows)
    assert all(r.ew_compat and r.ps_compat and not r.vnh_compat for r in rows)


def test_sweep_rejects_empty_and_incomplete_grids():
    with pytest.raises(ValidationError, match="empty"):
        sweep("g3", {"A": [], "B": [1], "C": [1]}, 1, 1)
    with pytest.raises(ValidationError, match="missing C"):
        sweep("g3", {"A": [1], "B": [1]}, 1, 1)


def test_sweep_csv_layout():
    cfg = SolveConfig(starts=10, seed=0, box=3.0)
    rows = sweep("g4", {"A": [1], "B": [2], "eta": [1]}, 1, 0.5, cfg, lam=0)
    buf = io.StringIO()
    write_sweep_csv(rows, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[0] == "g4"
    assert fields[5] == "1"
    assert fields[-3:] == ["false", "false", "true"]


# --- Recovery and Negative-Result Tests ---

@pytest.mark.slow
@pytest.mark.parametrize("case_id", ["riem-unimodular-4", "g4-1", "g5-5", "g6-4", "g7-7"])
def test_solver_recovers_closed_form_branches(case_id):
    case = get_case(case_id)
    rng = np.random.default_rng(0)
    cfg = SolveConfig(starts=200, seed=0)
    draws = 50
    recovered = 0
    for _ in range(draws):
        branches = instantiate(case_id, sample(case, rng))
        params = branches[0].candidate.params
        result = solve(branches[0].instance, params.alpha, params.beta, params.lam, cfg)
        found = _vectors(result)
        if all(
            any(np.max(np.abs(x - np.asarray(ci.candidate.X))) < 1e-6 for x in found)
            for ci in branches
        ):
            recovered += 1
    assert recovered >= 0.95 * draws


@pytest.mark.slow
@pytest.mark.parametrize(
    "family, names, axis",
    [
        ("riem-unimodular", ("A", "B", "C"), np.linspace(-2.0, 2.0, 9)),
        ("riem-nonunimodular", ("A", "B", "C", "D"), np.linspace(-1.5, 1.5, 7)),
    ],
)
def test_riemannian_ricci_solitons_are_einstein(family, names, axis):
    grid = {name: axis.tolist() for name in names}
    rows = sweep(family, grid, 0, 1, SolveConfig(starts=50, seed=0))
    if family == "riem-unimodular":
        assert len(rows) == 9 ** 3
    non_einstein = [r for r in rows if not r.einstein]
    assert non_einstein
    assert [r.params for r in non_einstein if r.n_solutions] == []
