import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from segprop.images import (
    PhaseRule,
    bounce_counts,
    classical_path,
    image_path,
    image_point,
    phase,
    shell_order,
)


def unfold_crossings(r, L=1.0, x=0.5, y=0.25):
    """Walls hit by the straight line from x to the image y_r: every line
    jL strictly between them, odd j is the right wall."""
    yr = image_point(r, y, L)
    lo, hi = sorted((x, yr))
    js = [j for j in range(math.floor(lo / L) - 1, math.ceil(hi / L) + 2) if lo < j * L < hi]
    if yr < x:
        js.reverse()
    return ["R" if j % 2 else "L" for j in js]


def fold(s, L):
    s = s % (2 * L)
    return s if s <= L else 2 * L - s


def test_image_point_examples():
    assert image_point(0, 0.3, 1) == 0.3
    assert image_point(1, 0.3, 1) == pytest.approx(1.7)
    assert image_point(-2, 0.3, 1) == pytest.approx(-1.7)


@given(st.integers(-50, 50), st.floats(0, 3), st.floats(0.1, 3))
def test_image_lies_in_its_cell(r, y, L):
    y = min(y, L)
    yr = image_point(r, y, L)
    assert r * L - 1e-9 <= yr <= (r + 1) * L + 1e-9
    assert fold(yr, L) == pytest.approx(y, abs=1e-9)


def test_bounce_count_examples():
    assert bounce_counts(0) == (0, 0)
    assert bounce_counts(3) == (1, 2)
    assert bounce_counts(-3) == (2, 1)


@pytest.mark.parametrize("r", range(-21, 22))
def test_bounce_counts_match_unfolding(r):
    walls = unfold_crossings(r)
    assert bounce_counts(r) == (walls.count("L"), walls.count("R"))
    if walls:
        assert walls[0] == ("R" if r > 0 else "L")
        assert all(a != b for a, b in zip(walls, walls[1:]))


def test_phase_examples():
    assert phase(PhaseRule.from_bc("DD"), 5) == -1
    assert all(phase(PhaseRule.from_bc("NN"), r) == 1 for r in range(-9, 10))
    nd = PhaseRule.from_bc("ND")
    assert phase(nd, 2) == -1
    assert phase(nd, 3) == 1
    assert phase(nd, -1) == 1


@pytest.mark.parametrize("r", range(-20, 21))
def test_phase_tables(r):
    assert phase(PhaseRule.from_bc("DD"), r) == (-1) ** abs(r)
    assert phase(PhaseRule.from_bc("NN"), r) == 1
    nd = 1 if r % 4 in (0, 3) else -1
    assert phase(PhaseRule.from_bc("ND"), r) == nd
    assert phase(PhaseRule.from_bc("DN"), -r) == nd


@given(st.integers(-40, 40), st.floats(0, math.pi))
def test_uniform_phase_rule(r, theta):
    got = phase(PhaseRule.uniform_angle(theta), r)
    assert abs(got - cmath.exp(-1j * abs(r) * theta)) < 1e-12
    assert abs(abs(got) - 1) < 1e-12


def test_phase_rule_must_be_unimodular():
    with pytest.raises(ValueError):
        PhaseRule(0.5, 1)


@given(st.integers(-30, 30), st.floats(0, 1))
def test_image_path_record(r, y):
    p = image_path(PhaseRule.from_bc("DN"), r, y, 1.0)
    assert p.bounces_left + p.bounces_right == abs(r)
    assert abs(p.epsilon) == 1
    assert p.y_r == image_point(r, y, 1.0)


def test_shell_order():
    assert list(shell_order(2)) == [0, 1, -1, 2, -2]


@given(st.floats(0, 1), st.floats(0, 1))
def test_path_length_monotone(x, y):
    pos = [abs(image_point(r, y, 1.0) - x) for r in range(0, 30)]
    neg = [abs(image_point(-r, y, 1.0) - x) for r in range(0, 30)]
    assert all(b >= a for a, b in zip(pos[1:], pos[2:]))
    assert all(b >= a for a, b in zip(neg[1:], neg[2:]))


def test_classical_path_examples():
    assert classical_path(0, 0.2, 0.6, 0, 1, 1) == [(0, 0.2), (1, 0.6)]
    verts = classical_path(1, 0.2, 0.6, 0, 1, 1)
    assert len(verts) == 3
    # straight line from 0.2 to y_1 = 1.4 meets x = 1 at t = 0.8 / 1.2
    assert verts[1][0] == pytest.approx(2 / 3, abs=1e-15)
    assert verts[1][1] == 1
    left = classical_path(-1, 0.2, 0.6, 0, 1, 1)
    assert [v[1] for v in left[1:-1]] == [0.0]
    assert [v[1] for v in classical_path(-2, 0.2, 0.6, 0, 1, 1)[1:-1]] == [0.0, 1.0]


def test_classical_path_rejects_degenerate_time():
    with pytest.raises(ValueError):
        classical_path(1, 0.2, 0.6, 1.0, 1.0, 1.0)


@given(st.integers(-12, 12), st.floats(0.01, 0.99), st.floats(0.01, 0.99), st.floats(0.5, 2))
def test_classical_path_is_folded_straight_line(r, x, y, L):
    x, y = x * L, y * L
    t0, t1 = 0.0, 1.0
    yr = image_point(r, y, L)
    verts = classical_path(r, x, y, t0, t1, L)
    assert len(verts) == abs(r) + 2
    assert verts[0] == (t0, x) and verts[-1] == (t1, y)
    # each interior vertex is where the straight line meets a fold line jL
    walls = unfold_crossings(r, L, x, y)
    lo, hi = sorted((x, yr))
    js = sorted((j for j in range(-20, 20) if lo < j * L < hi), reverse=yr < x)
    for (t, pos), j, w in zip(verts[1:-1], js, walls):
        t_cross = t0 + (j * L - x) / (yr - x) * (t1 - t0)
        assert abs(t - t_cross) < 1e-12
        assert pos == (L if w == "R" else 0.0)
    # and the polyline agrees with the folded straight line in between
    ts = np.array([v[0] for v in verts])
    ps = np.array([v[1] for v in verts])
    for t in np.linspace(t0, t1, 23):
        straight = x + (yr - x) * (t - t0) / (t1 - t0)
        assert abs(np.interp(t, ts, ps) - fold(straight, L)) < 1e-9
