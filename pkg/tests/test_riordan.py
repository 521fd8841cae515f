import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riordan_chordal.errors import NonZeroH0, SizeMismatch
from riordan_chordal.riordan import apply, build, extend, matmul_dense, mul
from riordan_chordal.series import series

from conftest import coeff_lists, small_fraction

PASCAL = ([1, 1, 1], [0, 1, 1])


def R(d, h, n):
    return build(series(d), series(h), n)


def test_build_examples():
    assert R([1, 0, 0], [0, 1, 0], 2).dense() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert R(*PASCAL, 2).rows == ((1,), (1, 1), (1, 2, 1))
    assert R([0, 3, -4, 4], [0, 0, 1, 0], 3).rows[1] == (3, 0)


def test_build_rejects_bad_input():
    with pytest.raises(NonZeroH0):
        R([1, 0], [1, 1], 1)
    with pytest.raises(SizeMismatch):
        R([1, 0], [0, 1], 3)


def test_apply_examples():
    assert apply(R([1, 0, 0, 0], [0, 2, 0, 0], 3), [1, 1, 1, 1]) == [1, 2, 4, 8]
    assert apply(R(*PASCAL, 2), [1, -1, 1]) == [1, 0, 0]


def test_mul_examples():
    P = R(*PASCAL, 2)
    assert mul(P, P).rows == ((1,), (2, 1), (4, 4, 1))
    assert mul(R([1, 0, 0], [0, 1, 0], 2), P) == P
    assert mul(R([1, 0, 0], [0, 2, 0], 2), R([1, 0, 0], [0, 3, 0], 2)) == R([1, 0, 0], [0, 6, 0], 2)


def test_extend_examples():
    assert extend(R([1, 0], [0, 1], 1), 0, 0) == R([1, 0, 0], [0, 1, 0], 2)
    assert extend(R([1, 1], [0, 1], 1), 1, 1) == R(*PASCAL, 2)


def _naive_mul(a, b, n):
    out = [Fr(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def brute_apply(d, h, v, n):
    """Coefficients of d * sum_j v_j h^j using plain lists only."""
    acc = [Fr(0)] * (n + 1)
    hp = [Fr(1)] + [Fr(0)] * n
    for vj in v:
        term = _naive_mul(d, hp, n)
        acc = [a + vj * t for a, t in zip(acc, term)]
        hp = _naive_mul(hp, h, n)
    return acc


@st.composite
def riordan_instance(draw):
    n = draw(st.integers(0, 8))
    d = draw(st.lists(small_fraction, min_size=n + 1, max_size=n + 1))
    h = [Fr(0)] + draw(st.lists(small_fraction, min_size=n, max_size=n))
    return n, d, h


@settings(max_examples=200, deadline=None)
@given(riordan_instance(), st.data())
def test_apply_matches_expansion(inst, data):
    n, d, h = inst
    v = data.draw(st.lists(small_fraction, min_size=n + 1, max_size=n + 1))
    M = R(d, h, n)
    assert apply(M, v) == brute_apply(d, h, v, n)
    assert all(len(row) == i + 1 for i, row in enumerate(M.rows))


@settings(max_examples=200, deadline=None)
@given(riordan_instance(), riordan_instance())
def test_product_rule(a, b):
    n = min(a[0], b[0])
    A = R(a[1][: n + 1], a[2][: n + 1], n)
    B = R(b[1][: n + 1], b[2][: n + 1], n)
    assert mul(A, B).dense() == matmul_dense(A.dense(), B.dense(), Fr(0))


@settings(max_examples=100, deadline=None)
@given(riordan_instance(), small_fraction, small_fraction)
def test_truncation_equivalence(inst, dn, hn):
    n, d, h = inst
    base = R(d, h, n)
    # extra coefficient beyond order n never changes R_n
    assert R(d + [dn], h + [hn], n + 1).submatrix(n) == base
    assert extend(base, dn, hn).submatrix(n) == base
    if n >= 1:
        bumped = list(d)
        bumped[n] += 1
        assert R(bumped, h, n) != base


def test_random_population_is_seeded():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(0, 6)
        d = [Fr(rng.randint(-10, 10), rng.randint(1, 10)) for _ in range(n + 1)]
        h = [Fr(0)] + [Fr(rng.randint(-10, 10), rng.randint(1, 10)) for _ in range(n)]
        v = [Fr(rng.randint(-5, 5)) for _ in range(n + 1)]
        assert apply(R(d, h, n), v) == brute_apply(d, h, v, n)
