from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riordan_chordal.errors import OracleDomainError
from riordan_chordal.fchordal import LocalSolution
from riordan_chordal.oracles import chord_residual_numeric, circle_series, ellipse_series
from riordan_chordal.series import TruncatedSeries

positive = st.builds(Fr, st.integers(1, 20), st.integers(1, 5))


def test_circle_examples():
    assert list(circle_series(Fr(-1, 2), Fr(5, 2), 4)) == [2, 0, Fr(-1, 5), 0, Fr(-1, 125)]
    assert list(circle_series(0, 1, 2)) == [1, 0, Fr(-1, 2)]
    with pytest.raises(OracleDomainError):
        circle_series(0, 0, 4)


def test_ellipse_examples():
    assert list(ellipse_series(2, 4)) == [2, 0, Fr(-1, 3), 0, Fr(-1, 36)]
    assert list(ellipse_series(2, 0)) == [2]
    with pytest.raises(OracleDomainError):
        ellipse_series(1, 4)


@settings(max_examples=40, deadline=None)
@given(st.builds(Fr, st.integers(-5, 5), st.integers(1, 4)), positive, st.integers(0, 12))
def test_circle_invariant(cx, r, n):
    x = circle_series(cx, r, n)
    t2 = TruncatedSeries.monomial(2, n) if n >= 2 else TruncatedSeries.constant(0, n)
    assert (x - cx) * (x - cx) + t2 == TruncatedSeries.constant(r * r, n)


@settings(max_examples=40, deadline=None)
@given(positive.map(lambda q: q + 1), st.integers(0, 12))
def test_ellipse_invariant(a, n):
    x = ellipse_series(a, n)
    t2 = TruncatedSeries.monomial(2, n) if n >= 2 else TruncatedSeries.constant(0, n)
    lhs = x * x * (1 / (a * a)) + t2 * (1 / (a * a - 1))
    assert lhs == TruncatedSeries.constant(1, n)


def test_chord_residual_numeric(circle_run):
    np, sol = circle_run
    for point in "PQ":
        assert chord_residual_numeric(sol, np, point, 0) == 0
        assert abs(chord_residual_numeric(sol, np, point, 0.1)) <= 1e-9


def test_chord_residual_grows_when_tampered(circle_run):
    np, sol = circle_run
    xs = list(sol.x)
    xs[2] += Fr(1, 2)
    bad = LocalSolution(TruncatedSeries(xs), sol.y, sol.u, sol.mode)
    small, large = (abs(chord_residual_numeric(bad, np, "P", t)) for t in (0.01, 0.02))
    assert small > 1e-6
    # leading broken order is t^2: doubling t quadruples the residual
    assert 3.5 < large / small < 4.5
