"""Acceptance suite: one test per criterion, tolerances as pinned.

Run directly with ``python tests/test_acceptance.py`` or through pytest; either
way the terminal summary prints a PASS/FAIL line per criterion.
"""

import json
import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from chshgeom import (
    CHSH_FACETS,
    HADAMARD,
    HADAMARD_EXACT,
    LOCAL_BOXES,
    PR_BOXES,
    SOURCES,
    Direction,
    TsirelsonQuadruple,
    boundary_point,
    boundary_point_raw,
    chsh_values,
    correlation,
    decompose,
    gram_feasible,
    hadamard_transform,
    half_sum_frame,
    iterated_chsh_values,
    local_rate_check,
    maximize_chsh,
    pr_rate,
    quadric_form,
    quantum_margin,
    quantum_membership_analytic,
    sample_correlations,
    select_facet,
    singlet_state,
    tsirelson_correlation,
)

from oracles import SQRT2, boundary_quadric_closed_form, hadamard_fractions, local_vertices, matmul_fractions

N4 = PR_BOXES[3]
TSIRELSON = N4 / SQRT2


@pytest.mark.criterion(1, "Tsirelson bound: max CHSH over the angle grid is sqrt(2) at pi/4, singlet reaches it")
def test_criterion_1_tsirelson_bound():
    g = np.arange(200) * math.pi / 396
    a, b = np.meshgrid(g, g, indexing="ij")
    vals = maximize_chsh(a, b)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    assert abs(vals.max() - SQRT2) <= 1e-9
    assert abs(g[i] - math.pi / 4) <= 1e-12 and abs(g[j] - math.pi / 4) <= 1e-12

    alice = [Direction.in_plane(t) for t in (0.0, math.pi / 2)]
    bob = [Direction.in_plane(t) for t in (math.pi / 4, 3 * math.pi / 4)]
    q = correlation(singlet_state(), *alice, *bob)
    assert abs(chsh_values(q).max() - SQRT2) <= 1e-9


@pytest.mark.criterion(2, "quadric form of sampled quantum correlations stays in [-1, 1]")
def test_criterion_2_quadric_bounds(quantum_samples):
    assert quantum_samples.shape == (3 * 100_000, 4)
    v = quadric_form(quantum_samples)
    assert np.count_nonzero(np.abs(v) > 1 + 1e-9) == 0


@pytest.mark.criterion(3, "boundary family sits on the quadric qHq = 1; local boxes give exactly 1")
def test_criterion_3_equality_manifold():
    g = np.linspace(0.01, math.pi / 2 - 0.01, 200)
    a, b = np.meshgrid(g, g, indexing="ij")
    q = boundary_point(a, b)
    keep = chsh_values(q)[..., 3] >= 1
    assert np.count_nonzero(keep) > 0
    assert np.abs(quadric_form(q[keep]) - 1).max() <= 1e-9
    for box in local_vertices():
        assert quadric_form(box) == 1.0
    assert np.array_equal(quadric_form(LOCAL_BOXES), np.ones(8))


@pytest.mark.criterion(4, "iterated CHSH expressions bounded on samples; PR box reaches 2")
def test_criterion_4_iterated_chsh(quantum_samples):
    v = iterated_chsh_values(quantum_samples)
    assert np.count_nonzero(np.abs(v) > 1 + 1e-9) == 0
    pr = iterated_chsh_values(np.array([1.0, 1.0, 1.0, -1.0]))
    assert np.max(np.abs(pr)) == 2.0


def _above_facet(n):
    """First n seeded quantum correlations with some CHSH value >= 1."""
    found, total, seed = [], 0, 0
    while total < n:
        for source in SOURCES:
            q = sample_correlations(200_000, 1000 + seed, source)
            q = q[chsh_values(q).max(axis=1) >= 1]
            found.append(q)
            total += len(q)
            seed += 1
    return np.vstack(found)[:n]


@pytest.fixture(scope="module")
def above_facet():
    return _above_facet(100_000)


@pytest.mark.criterion(5, "PR rate of quantum correlations is at most sqrt(2) - 1")
def test_criterion_5_pr_rate(above_facet):
    assert len(above_facet) == 100_000
    rates = np.column_stack([pr_rate(above_facet, f) for f in CHSH_FACETS])
    assert rates.max() <= SQRT2 - 1 + 1e-9
    # the rate on the selected facet is the one reported by decompose
    for q, row in zip(above_facet[:1000], rates):
        facet, _ = select_facet(q)
        assert abs(pr_rate(q, facet) - row.max()) <= 1e-15
    assert abs(pr_rate(TSIRELSON, CHSH_FACETS[3]) - (SQRT2 - 1)) <= 1e-12


@pytest.mark.criterion(6, "local-rate inequality holds on samples, is tight on the boundary; symmetric weights")
def test_criterion_6_local_rate(quantum_samples, above_facet):
    decomposable = quantum_samples[chsh_values(quantum_samples).max(axis=1) >= 1]
    pts = np.vstack([decomposable, above_facet])
    residual = np.array([local_rate_check(decompose(q)) for q in pts])
    assert residual.min() >= -1e-9

    g = np.linspace(0.01, math.pi / 2 - 0.01, 100)
    edge = np.array([local_rate_check(decompose(boundary_point(a, b))) for a in g for b in g])
    assert edge.size == 10_000
    assert np.abs(edge).max() <= 1e-9

    d = decompose(TSIRELSON)
    assert np.abs(np.array(d.eta_local) - (2 - SQRT2) / 4).max() <= 1e-10


@pytest.mark.criterion(7, "analytic membership and Gram feasibility agree on uniform points")
def test_criterion_7_oracle_agreement():
    rng = np.random.default_rng(7)
    q = rng.uniform(-1, 1, (12_000, 4))
    q = q[np.abs(quantum_margin(q)) > 1e-6][:10_000]
    assert len(q) == 10_000
    analytic = quantum_membership_analytic(q)
    gram = np.array([gram_feasible(x, 100) for x in q])
    assert np.count_nonzero(analytic != gram) == 0


@pytest.mark.criterion(8, "Hadamard identities, half-sum frame identity, boundary quadric identity")
def test_criterion_8_structural_identities():
    h = hadamard_fractions()
    assert [list(r) for r in HADAMARD_EXACT] == h
    quarter_identity = [[Fraction(int(i == j), 4) for j in range(4)] for i in range(4)]
    assert matmul_fractions(h, h) == quarter_identity
    assert matmul_fractions(HADAMARD_EXACT, HADAMARD_EXACT) == quarter_identity
    assert np.abs(HADAMARD @ HADAMARD - np.eye(4) / 4).max() <= 1e-15
    for k in range(4):
        assert np.array_equal(HADAMARD @ LOCAL_BOXES[k], np.eye(4)[k])
    for k, sign in enumerate((-1, 1, 1, 1)):
        assert np.array_equal(2 * HADAMARD @ PR_BOXES[k], sign * PR_BOXES[k])

    rng = np.random.default_rng(8)
    v = rng.standard_normal((10_000, 4, 4))
    v /= np.linalg.norm(v, axis=2, keepdims=True)
    worst = 0.0
    for row in v:
        quad = TsirelsonQuadruple(*row)
        gap = hadamard_transform(tsirelson_correlation(quad)) - half_sum_frame(quad).inner_products()
        worst = max(worst, np.abs(gap).max())
    assert worst <= 1e-12

    g = np.linspace(0, math.pi / 2, 100)
    t = np.linspace(-math.pi, math.pi, 100)
    a, b, th = np.meshgrid(g, g, t, indexing="ij")
    assert a.size == 1_000_000
    diff = quadric_form(boundary_point_raw(a, b, th)) - boundary_quadric_closed_form(a, b, th)
    assert np.abs(diff).max() <= 1e-12


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "chshgeom", *map(str, args)], capture_output=True, text=True)


@pytest.mark.criterion(9, "CLI sample -> verify round trip; an injected PR box row is flagged")
@pytest.mark.parametrize("source", SOURCES)
def test_criterion_9_cli_round_trip(tmp_path, source):
    path = tmp_path / f"{source}.csv"
    assert _cli("sample", "--count", 500, "--seed", 9, "--source", source, "--out", path).returncode == 0
    proc = _cli("verify", path)
    assert proc.returncode == 0, proc.stderr
    lines = [json.loads(s) for s in proc.stdout.splitlines()]
    assert lines[-1]["summary"]["failures"] == 0 and lines[-1]["summary"]["rows"] == 500

    with path.open("a") as fh:
        fh.write("1,1,1,-1\n")
    proc = _cli("verify", path)
    assert proc.returncode == 1
    lines = [json.loads(s) for s in proc.stdout.splitlines()]
    assert lines[-1]["summary"]["failed_rows"] == [501]
    assert lines[500]["row"] == 501 and lines[500]["failed"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
