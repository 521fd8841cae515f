from fractions import Fraction

import pytest
from hypothesis import strategies as st

from riordan_chordal.fchordal import FChordalProblem, normalize, solve
from riordan_chordal.implicit import ChordFunction

small_fraction = st.builds(
    Fraction,
    st.integers(min_value=-10, max_value=10),
    st.integers(min_value=1, max_value=10),
)
nonzero_fraction = small_fraction.filter(lambda q: q != 0)


def coeff_lists(min_size=1, max_size=9, first=None):
    rest = st.lists(small_fraction, min_size=min_size - 1, max_size=max_size - 1)
    head = small_fraction if first is None else first
    return st.tuples(head, rest).map(lambda p: [p[0], *p[1]])


def axis_problem(kind, v2, order=12, **kw):
    """Normalized-frame problem V1=(2,0), P=(1,0), Q=(-1,0), V2=(v2,0)."""
    return FChordalProblem((2, 0), (1, 0), (-1, 0), (Fraction(v2), 0), ChordFunction(kind), order=order, **kw)


def run(kind, v2, order=12, **kw):
    p = axis_problem(kind, v2, order, **kw)
    np = normalize(p)
    return np, solve(np, p.mode, p.gauge, p.overrides, p.order, p.tangent)


@pytest.fixture(scope="session")
def circle_run():
    return run("equiproduct", -3, 12)


@pytest.fixture(scope="session")
def equichordal_run():
    return run("equichordal", -2, 16)
