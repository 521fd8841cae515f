from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from riordan_chordal.errors import NonRegularLeft, VertexMismatch
from riordan_chordal.gcheck import Failure, JoinData, Success, apply_reparam, match_curves, solve_join
from riordan_chordal.series import series

from conftest import nonzero_fraction, small_fraction

PARABOLA = ([0, 1, 0, 0, 0], [0, 0, 1, 0, 0])
PARABOLA_2T = ([0, 2, 1, 0, 0], [0, 0, 4, 4, 1])


def join(left, right, order=None):
    return JoinData.from_lists(*left, *right, order=order)


def test_identity_join():
    rep = solve_join(join(PARABOLA, PARABOLA))
    assert isinstance(rep, Success)
    assert list(rep.u) == [0, 1, 0, 0, 0]


def test_constructed_reparametrization():
    rep = solve_join(join(PARABOLA, PARABOLA_2T))
    assert rep.ok and list(rep.u) == [0, 2, 1, 0, 0]
    assert not rep.orientation_reversing
    xs, ys = apply_reparam(series(PARABOLA[0]), series(PARABOLA[1]), rep.u)
    assert (list(xs), list(ys)) == PARABOLA_2T


def test_failure_at_first_distinguishing_order():
    rep = solve_join(join(([0, 1, 0, 0], [0, 0, 1, 0]), ([0, 1, 0, 0], [0, 0, 1, 1])))
    assert isinstance(rep, Failure)
    assert (rep.order, rep.coordinate, rep.residual, rep.verified_order) == (3, "y", 1, 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_single_perturbation(m):
    y = list(PARABOLA_2T[1])
    y[m] += 1
    rep = solve_join(join(PARABOLA, (PARABOLA_2T[0], y)))
    assert isinstance(rep, Failure) and rep.order == m


def test_apply_reparam_examples():
    xs, ys = series([0, 1, 0]), series([0, 0, 1])
    u = series([0, 1, 0])
    assert apply_reparam(xs, ys, u) == (xs, ys)
    c = series([3, 0, 0])
    assert apply_reparam(c, c, series([0, 2, 1])) == (c, c)


def test_orientation_reversal_is_flagged():
    right = ([0, -1, 0, 0, 0], [0, 0, 1, 0, 0])
    rep = solve_join(join(PARABOLA, right))
    assert rep.ok and rep.orientation_reversing and rep.u[1] == -1


def test_vertex_mismatch_and_singular_left():
    with pytest.raises(VertexMismatch):
        solve_join(join(PARABOLA, ([1, 1, 0, 0, 0], [0, 0, 1, 0, 0])))
    with pytest.raises(NonRegularLeft):
        solve_join(join(([0, 0, 1, 0, 0], [0, 0, 0, 1, 0]), PARABOLA))


def test_match_curves_on_identical_pair():
    p = (series([1, 2, 3, 4]), series([0, 1, -1, 2]))
    assert list(match_curves(p, p, 3).u) == [0, 1, 0, 0]


@st.composite
def curve_and_reparam(draw, order=5):
    x = [Fr(0)] + draw(st.lists(small_fraction, min_size=order, max_size=order))
    y = [Fr(0)] + draw(st.lists(small_fraction, min_size=order, max_size=order))
    if x[1] == 0 and y[1] == 0:
        x[1] = Fr(1)
    u = [Fr(0), draw(nonzero_fraction)] + draw(st.lists(small_fraction, min_size=order - 1, max_size=order - 1))
    return x, y, u


@settings(max_examples=80, deadline=None)
@given(curve_and_reparam())
def test_round_trip_and_inheritance(data):
    x, y, u = data
    xs, ys = apply_reparam(series(x), series(y), series(u))
    rep = solve_join(join((x, y), (list(xs), list(ys))))
    assert rep.ok and list(rep.u) == u
    assert apply_reparam(series(x), series(y), rep.u) == (xs, ys)
    for m in range(1, len(x) - 1):
        sub = solve_join(join((x, y), (list(xs), list(ys)), order=m))
        assert sub.ok and list(sub.u) == u[: m + 1]


def no_reparam_exists(x, y, rx, ry, m):
    """Brute force: no u with u_1 != 0 maps (x, y) onto (rx, ry) through order m."""
    t = sympy.Symbol("t")
    us = sympy.symbols(f"u1:{m + 1}")
    u = sum(c * t**i for i, c in enumerate(us, start=1))
    eqs = []
    for left, right in ((x, rx), (y, ry)):
        comp = sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * u**i for i, c in enumerate(left[: m + 1])))
        for i in range(1, m + 1):
            eqs.append(comp.coeff(t, i) - sympy.Rational(right[i].numerator, right[i].denominator))
    sols = sympy.solve(eqs, us, dict=True)
    return all(s.get(us[0], us[0]) == 0 for s in sols)


@settings(max_examples=15, deadline=None)
@given(curve_and_reparam(order=3), st.integers(1, 3), nonzero_fraction, st.sampled_from("xy"))
def test_failure_is_sound(data, m, bump, which):
    x, y, u = data
    xs, ys = apply_reparam(series(x), series(y), series(u))
    rx, ry = list(xs), list(ys)
    (rx if which == "x" else ry)[m] += bump
    rep = solve_join(join((x, y), (rx, ry)))
    if rep.ok:
        return
    k = rep.order
    assert no_reparam_exists(x, y, rx, ry, k)
    if k > 1:
        assert not no_reparam_exists(x, y, rx, ry, k - 1)
