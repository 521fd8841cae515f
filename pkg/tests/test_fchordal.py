from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as Fr

import pytest

from riordan_chordal import fchordal as fc
from riordan_chordal.errors import BadOrdering, DegenerateOrder, NoObliqueTangent, NonCollinear
from riordan_chordal.gcheck import match_curves
from riordan_chordal.implicit import ChordFunction
from riordan_chordal.oracles import circle_series
from riordan_chordal.series import TruncatedSeries, float_backend

from conftest import axis_problem, run

AXIS_CASES = [("equichordal", -2), ("equiproduct", -3), ("equireciprocal", -2)]


def test_normalize_shifted_problem():
    p = fc.FChordalProblem((4, 0), (2, 0), (0, 0), (-4, 0), ChordFunction("equichordal"), order=4)
    np = fc.normalize(p)
    assert np.x0 == 3
    assert (np.phi.phi_P[0], np.phi.phi_Q[0]) == (6, 4)
    assert np.phi.k_P == 8


def test_normalize_rotated_problem():
    p = fc.FChordalProblem((0, 2), (0, 1), (0, -1), (0, -2), ChordFunction("equichordal"), order=6)
    np = fc.normalize(p)
    assert np.x0 == 2 and np.v2 == -2
    sol = fc.solve(np, order=6)
    assert fc.denormalize(sol, np.transform, [0]) == [(0, 2)]
    # the vertex arc is traced perpendicular to the axis, so horizontally here
    (x, y), = fc.denormalize(sol, np.transform, [Fr(1, 10)])
    assert abs(x) == Fr(1, 10)


def test_scaled_problem_matches_normalized_coefficients():
    p = fc.FChordalProblem((4, 0), (2, 0), (-2, 0), (-4, 0), ChordFunction("equichordal"), order=8)
    np = fc.normalize(p)
    assert np.x0 == 2
    assert fc.solve(np).x == run("equichordal", -2, 8)[1].x


def test_bad_ordering_and_collinearity():
    with pytest.raises(BadOrdering):
        fc.normalize(fc.FChordalProblem((2, 0), (-1, 0), (1, 0), (-2, 0), ChordFunction("equichordal")))
    with pytest.raises(NonCollinear):
        fc.normalize(fc.FChordalProblem((2, 1), (1, 0), (-1, 0), (-2, 0), ChordFunction("equichordal")))


def _state(kind, v2):
    np = fc.normalize(axis_problem(kind, v2, 4))
    st = fc.LocalSolverState(np, fc.PERPENDICULAR, (), 4)
    st.push(np.conditions().C, 0, 1)
    return st


def test_order_two_residuals():
    assert fc.assemble_residual(_state("equichordal", -2), 2, 0, 0) == (Fr(-16, 81), 0)
    assert fc.assemble_residual(_state("equiproduct", -3), 2, 0, 0) == (Fr(-1, 9), 0)


def test_symmetric_equichordal(equichordal_run):
    np, sol = equichordal_run
    assert sol.u[1] == Fr(1, 9)
    assert sol.x[2] == Fr(-1, 5)
    assert sol.verified_order == 16
    assert sol.pivot_identities == {"u_pivot": True, "x_pivot": True}


def test_residual_invariant(equichordal_run):
    np, sol = equichordal_run
    st = fc.LocalSolverState(np, fc.PERPENDICULAR, (), 16)
    for k in range(1, 17):
        st.push(sol.u[k], sol.x[k], sol.y[k])
        assert fc.assemble_residual_at(st, k) == (0, 0)


def test_equiproduct_circle(circle_run):
    np, sol = circle_run
    assert sol.x == circle_series(Fr(-1, 2), Fr(5, 2), 12)


def test_equireciprocal_degenerate_then_override():
    with pytest.raises(DegenerateOrder) as info:
        run("equireciprocal", -2, 12)
    exc = info.value
    assert (exc.order, exc.pivot, exc.residual) == (2, 0, 0)
    assert exc.partial.order == 1
    assert exc.conditions.runtime_resonances == [2]
    np, sol = run("equireciprocal", -2, 12, overrides={2: Fr(-1, 3)})
    assert list(sol.x[:5]) == [2, 0, Fr(-1, 3), 0, Fr(-1, 36)]
    assert sol.overrides_consumed == [2]


@pytest.mark.parametrize("lam", [Fr(2), Fr(-3), Fr(1, 2)])
def test_gauge_covariance(lam):
    _, base = run("equichordal", -2, 10)
    _, scaled = run("equichordal", -2, 10, gauge=(lam,))
    assert all(scaled.x[k] == lam**k * base.x[k] for k in range(11))
    rep = match_curves((base.x, base.y), (scaled.x, scaled.y), 10)
    assert list(rep.u) == [0, lam] + [0] * 9


@pytest.mark.parametrize("kind,v2", AXIS_CASES)
def test_parallel_mode_stays_on_axis(kind, v2):
    _, sol = run(kind, v2, 16, mode=fc.PARALLEL)
    assert all(sol.y[k] == 0 for k in range(2, 17))
    assert sol.verified_order == 16


def test_oblique_equiproduct_is_a_circle():
    x1, y1 = Fr(1), Fr(2)
    _, sol = run("equiproduct", -3, 10, mode=fc.OBLIQUE, tangent=(x1, y1))
    cy = Fr(5, 2) * x1 / y1
    lhs = (sol.x + Fr(1, 2)) * (sol.x + Fr(1, 2)) + (sol.y - cy) * (sol.y - cy)
    assert lhs == TruncatedSeries.constant(Fr(25, 4) + cy * cy, 10)


def test_oblique_needs_matching_ratio():
    with pytest.raises(NoObliqueTangent):
        run("equichordal", -2, 6, mode=fc.OBLIQUE, tangent=(Fr(1), Fr(1)))


def test_tampered_solution_fails_at_order_two(circle_run):
    np, sol = circle_run
    xs = list(sol.x)
    xs[2] += 1
    bad = fc.LocalSolution(TruncatedSeries(xs), sol.y, sol.u, sol.mode)
    assert fc.verify_residual(bad, np, 12) == 1
    exact = fc.LocalSolution(circle_series(Fr(-1, 2), Fr(5, 2), 12), sol.y, sol.u, sol.mode)
    assert fc.verify_residual(exact, np, 12) == 12


def test_induced_parametrizations(circle_run):
    np, sol = circle_run
    for point in "PQ":
        gx, gy = fc.induced_parametrization(sol.x, sol.y, point, np.phi)
        assert (gx[0], gy[0]) == (-3, 0)
        on_circle = (gx + Fr(1, 2)) * (gx + Fr(1, 2)) + gy * gy
        assert on_circle == TruncatedSeries.constant(Fr(25, 4), gx.order)


def test_float_backend_tracks_rational(equichordal_run):
    _, exact = equichordal_run
    b = float_backend(256)
    p = fc.FChordalProblem((2, 0), (1, 0), (-1, 0), (-2, 0), ChordFunction("equichordal"), order=16, backend=b)
    _, sol = fc.problem_solve(p)
    assert sol.verified_order == 16
    tol = b.ctx.mpf(10) ** -50
    for approx, q in zip(sol.x, exact.x):
        assert abs(approx - b.coerce(q)) <= tol * max(1, abs(float(q)))


def test_threads_do_not_change_results():
    def once(_):
        return run("equichordal", -2, 10)[1].to_json()

    with ThreadPoolExecutor(4) as pool:
        outs = list(pool.map(once, range(8)))
    assert all(o == outs[0] for o in outs)
