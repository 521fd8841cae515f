"""Local analytic solutions of the two-point interior F-chordal problem.

In the normalized frame ``P = (1, 0)``, ``Q = (-1, 0)`` and ``V1 = (x0, 0)``.
A parametrization ``gamma = (x, y)`` near ``V1`` induces two parametrizations
near ``V2``, one per chordal point, and the curve is a local solution when
``gamma_P(u(t)) = gamma_Q(t)`` for a regular ``u``.  Written with partial
Riordan matrices this is the pair of matrix equations

    [2, 0, ...] + R(1,u) R(1-x, s_P-(x0-1)) A = R(-1-x, s_Q-(x0+1)) B
                  R(1,u) R(y,   s_P-(x0-1)) A = R(y,    s_Q-(x0+1)) B

with ``s_P = |P - gamma|``, ``s_Q = |Q - gamma|``, ``A`` the coefficients of
``phi_P((x0-1)+t)/((x0-1)+t)`` and ``B`` likewise for ``Q``.

The solver fixes one coordinate by a gauge (canonically ``y = t``) and then
determines ``u_k`` and the other coordinate's ``k``-th coefficient order by
order.  All entries come from the series and Riordan code; pivots are probed
numerically from the residual rather than taken from closed forms, because
the distance series ``s_P``, ``s_Q`` also depend on ``x_k``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import implicit
from .errors import (
    AnchorMismatch,
    BadOrdering,
    DegenerateOrder,
    DomainViolation,
    Inconsistent,
    NoObliqueTangent,
    NonCollinear,
    Order0Inconsistent,
    SolverStop,
)
from .implicit import ChordFunction, ConditionReport, PhiPair, condition_check, require_condition_iii
from .riordan import apply, build
from .series import RATIONAL, TruncatedSeries, compose, reciprocal, sqrt_series

log = logging.getLogger(__name__)

PERPENDICULAR = "perpendicular"
PARALLEL = "parallel"
OBLIQUE = "oblique"
MODES = (PERPENDICULAR, PARALLEL, OBLIQUE)

DEFAULT_ORDER = 16
MAX_ORDER = 64


@dataclass(frozen=True)
class SimilarityTransform:
    """Proper similarity sending ``P -> (1, 0)`` and ``Q -> (-1, 0)``.

    Stored as the midpoint of ``PQ`` and the half axis ``(P - Q)/2`` so that
    both directions stay rational: ``z = origin + x' w + y' J w``.
    """

    origin: tuple
    half_axis: tuple
    backend: object = RATIONAL

    @property
    def norm_sq(self):
        wx, wy = self.half_axis
        return wx * wx + wy * wy

    @property
    def scale(self):
        """``2 / |P - Q|``; may raise IrrationalRoot on the rational backend."""
        return self.backend.one / self.backend.sqrt(self.norm_sq)

    def to_normalized(self, z):
        b = self.backend
        zx, zy = (b.coerce(c) for c in z)
        dx, dy = zx - self.origin[0], zy - self.origin[1]
        wx, wy = self.half_axis
        n2 = self.norm_sq
        return ((dx * wx + dy * wy) / n2, (wx * dy - wy * dx) / n2)

    def from_normalized(self, z):
        b = self.backend
        xn, yn = (b.coerce(c) for c in z)
        wx, wy = self.half_axis
        return (self.origin[0] + xn * wx - yn * wy, self.origin[1] + xn * wy + yn * wx)

    def to_json(self) -> dict:
        fmt = self.backend.fmt
        return {"origin": [fmt(c) for c in self.origin], "half_axis": [fmt(c) for c in self.half_axis]}


@dataclass(frozen=True)
class FChordalProblem:
    """Four collinear points ``V1, P, Q, V2`` in this order, and a chord function.

    ``gauge`` lists the gauge coordinate's coefficients from ``t^1`` on (``y``
    in perpendicular and oblique modes, ``x`` in parallel mode); missing
    entries default to 1 at order 1 and 0 above.  ``tangent`` is ``(x1, y1)``
    for oblique mode.  ``overrides`` maps an order to the value injected for
    the free coefficient when that order is degenerate.
    """

    V1: tuple
    P: tuple
    Q: tuple
    V2: tuple
    chord: ChordFunction
    order: int = DEFAULT_ORDER
    mode: str = PERPENDICULAR
    gauge: tuple = ()
    tangent: tuple | None = None
    overrides: dict = field(default_factory=dict)
    backend: object = RATIONAL

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}")
        if self.mode == OBLIQUE and self.tangent is None:
            raise ValueError("oblique mode needs a tangent (x1, y1)")


@dataclass(frozen=True)
class NormalizedProblem:
    x0: object
    phi: PhiPair
    transform: SimilarityTransform
    order: int
    backend: object = RATIONAL
    warnings: tuple = ()
    chord: ChordFunction | None = None

    @property
    def v2(self):
        """Normalized abscissa of ``V2``."""
        return 1 - self.phi.phi_P[0]

    @property
    def A(self) -> TruncatedSeries:
        aP = self.x0 - 1
        return self.phi.phi_P * reciprocal(_shift(aP, self.phi.phi_P.order, self.backend))

    @property
    def B(self) -> TruncatedSeries:
        aQ = self.x0 + 1
        return self.phi.phi_Q * reciprocal(_shift(aQ, self.phi.phi_Q.order, self.backend))

    def conditions(self, order: int | None = None) -> ConditionReport:
        return condition_check(self.phi.phi_P, self.phi.phi_Q, self.x0, order or self.order)


def _shift(c, order, b) -> TruncatedSeries:
    return TruncatedSeries([c, 1] + [0] * (order - 1), b) if order >= 1 else TruncatedSeries([c], b)


def _points(p: FChordalProblem):
    b = p.backend
    return [tuple(b.coerce(c) for c in pt) for pt in (p.V1, p.P, p.Q, p.V2)]


def normalize(p: FChordalProblem) -> NormalizedProblem:
    b = p.backend
    V1, P, Q, V2 = _points(p)
    w = ((P[0] - Q[0]) / 2, (P[1] - Q[1]) / 2)
    if b.is_zero(w[0]) and b.is_zero(w[1]):
        raise BadOrdering("P and Q coincide")
    tr = SimilarityTransform(((P[0] + Q[0]) / 2, (P[1] + Q[1]) / 2), w, b)
    x0, yv1 = tr.to_normalized(V1)
    v2, yv2 = tr.to_normalized(V2)
    if not (b.is_zero(yv1) and b.is_zero(yv2)):
        raise NonCollinear("V1, P, Q, V2 are not collinear")
    if not (b.sign(x0 - 1) > 0 and b.sign(-1 - v2) > 0):
        raise BadOrdering("points must be ordered V1, P, Q, V2 along the axis")

    aP, aQ = x0 - 1, x0 + 1
    dP, dQ = 1 - v2, -1 - v2  # |V2 - P|, |V2 - Q|
    n = p.order
    chord = p.chord
    warnings = []

    if chord.kind in implicit.FAMILIES:
        alpha = chord.alpha
        kP = implicit.family_value(chord.kind, aP, dP, b, alpha)
        kQ = implicit.family_value(chord.kind, aQ, dQ, b, alpha)
        if chord.kind == implicit.DIFFERENCE:
            for name, a_, d_, k_ in (("P", aP, dP, kP), ("Q", aQ, dQ, kQ)):
                other = implicit.family_value(chord.kind, d_, a_, b)
                if not b.is_zero(other - k_):
                    msg = f"k_{name} depends on argument order for the antisymmetric difference family"
                    log.warning(msg)
                    warnings.append(msg)
        branch = "minus" if chord.kind == implicit.DIFFERENCE else None
        phiP = implicit.phi_from_family(chord, kP, aP, n, b, branch=branch)
        phiQ = implicit.phi_from_family(chord, kQ, aQ, n, b, branch=branch)
    elif chord.kind == implicit.CUSTOM_PHI:
        s = tr.scale
        phiP, phiQ = (_rescale_phi(ph, s, n, name) for ph, name in ((chord.phi_P, "phi_P"), (chord.phi_Q, "phi_Q")))
        kP = kQ = None
    else:
        s = tr.scale
        FP, FQ = chord.F_P.rescaled(s), chord.F_Q.rescaled(s)
        for name, F, a_, d_ in (("F_P", FP, aP, dP), ("F_Q", FQ, aQ, dQ)):
            if F.order < n:
                raise ValueError(f"{name} has Taylor order {F.order} < {n}")
            if not (b.is_zero(F.anchor[0] - a_) and b.is_zero(F.anchor[1] - d_)):
                raise Order0Inconsistent(f"{name} is not anchored at the vertex distances")
        kP, kQ = FP.value, FQ.value
        phiP = implicit.phi_implicit(FP, kP, n)
        phiQ = implicit.phi_implicit(FQ, kQ, n)

    if not b.is_zero(phiP[0] - dP):
        raise Order0Inconsistent("phi_P at |P - V1| is not |V2 - P|")
    if not b.is_zero(phiQ[0] - dQ):
        raise Order0Inconsistent("phi_Q at |Q - V1| is not |V2 - Q|")
    if not b.is_zero(2 - phiP[0] + phiQ[0]):
        raise Order0Inconsistent("2 - phi_P0 != -phi_Q0")
    phi = PhiPair(phiP, phiQ, aP, aQ, kP, kQ)
    return NormalizedProblem(x0, phi, tr, n, b, tuple(warnings), chord)


def _rescale_phi(phi: TruncatedSeries, s, order: int, name: str) -> TruncatedSeries:
    # phi'(a') = s * phi(a'/s): coefficient n picks up s**(1 - n)
    if phi.order < order:
        raise ValueError(f"{name} has order {phi.order} < {order}")
    b = phi.backend
    inv = b.one / s
    return TruncatedSeries([c * s * inv ** i for i, c in enumerate(phi.coeffs[: order + 1])], b)


# -- the matrix system ----------------------------------------------------

def equation_sides(x: TruncatedSeries, y: TruncatedSeries, u: TruncatedSeries, A, B, x0, n: int):
    """Both sides of both matrix equations at size ``n + 1``.

    Returns ``(lhs_x, rhs_x, lhs_y, rhs_y)`` as coefficient lists.
    """
    b = x.backend
    x, y, u = x.truncate(n), y.truncate(n), u.truncate(n)
    sP = sqrt_series((1 - x) * (1 - x) + y * y)
    sQ = sqrt_series((x + 1) * (x + 1) + y * y)
    hP = sP - (x0 - 1)
    hQ = sQ - (x0 + 1)
    Av, Bv = A.coeffs[: n + 1], B.coeffs[: n + 1]
    Ru = build(TruncatedSeries.constant(1, n, b), u, n)
    lhs_x = apply(Ru, apply(build(1 - x, hP, n), Av))
    lhs_x[0] += 2
    rhs_x = apply(build(-1 - x, hQ, n), Bv)
    lhs_y = apply(Ru, apply(build(y, hP, n), Av))
    rhs_y = apply(build(y, hQ, n), Bv)
    return lhs_x, rhs_x, lhs_y, rhs_y


class LocalSolverState:
    """Coefficients known so far; mutated in place by :func:`solve_order`."""

    def __init__(self, np: NormalizedProblem, mode: str = PERPENDICULAR, gauge: Sequence = (), order: int | None = None):
        self.np = np
        self.backend = b = np.backend
        self.mode = mode
        self.order = order or np.order
        self.gauge = [b.coerce(g) for g in gauge]
        self.A = np.A
        self.B = np.B
        self.x = [np.x0]
        self.y = [b.zero]
        self.u = [b.zero]

    @property
    def k(self) -> int:
        return len(self.u) - 1

    def gauge_value(self, k: int):
        if k - 1 < len(self.gauge):
            return self.gauge[k - 1]
        return self.backend.one if k == 1 else self.backend.zero

    def series(self):
        b = self.backend
        return TruncatedSeries(self.x, b), TruncatedSeries(self.y, b), TruncatedSeries(self.u, b)

    def push(self, u_k, x_k, y_k):
        self.u.append(u_k)
        self.x.append(x_k)
        self.y.append(y_k)


def assemble_residual(st: LocalSolverState, k: int, trial_u, trial_x=None, trial_y=None):
    """Last-entry residuals ``(r_x, r_y)`` (left minus right) of the order-``k`` system.

    The state must hold orders ``0..k-1``.  The coefficient not passed as a
    trial comes from the gauge.
    """
    if st.k != k - 1:
        raise ValueError(f"state holds order {st.k}, cannot probe order {k}")
    b = st.backend
    if trial_x is None:
        trial_x = st.gauge_value(k)
    if trial_y is None:
        trial_y = st.gauge_value(k)
    x = TruncatedSeries(st.x + [trial_x], b)
    y = TruncatedSeries(st.y + [trial_y], b)
    u = TruncatedSeries(st.u + [trial_u], b)
    lx, rx, ly, ry = equation_sides(x, y, u, st.A, st.B, st.np.x0, k)
    return lx[k] - rx[k], ly[k] - ry[k]


@dataclass
class OrderStep:
    order: int
    u_pivot: object
    free_pivot: object
    free: str
    degenerate: bool = False
    override: object = None

    def to_json(self, fmt) -> dict:
        d = {"order": self.order, "u_pivot": fmt(self.u_pivot), f"{self.free}_pivot": fmt(self.free_pivot)}
        if self.degenerate:
            d["degenerate"] = True
            d["override"] = fmt(self.override)
        return d


def solve_order(st: LocalSolverState, k: int, overrides: dict | None = None) -> OrderStep:
    """Determine ``u_k`` and the free coefficient at order ``k >= 2`` and push them.

    Perpendicular/oblique modes solve ``u_k`` from the y-equation and ``x_k``
    from the x-equation; parallel mode solves ``u_k`` from the x-equation and
    the forced ``y_k`` from the y-equation.  Both unknowns enter linearly, so
    three probes give the residual as an affine function.
    """
    b = st.backend
    overrides = overrides or {}
    if st.mode == PARALLEL:
        free = "y"
        res = lambda u_, v_: assemble_residual(st, k, u_, trial_y=v_)  # noqa: E731
        u_eq, free_eq = 0, 1
    else:
        free = "x"
        res = lambda u_, v_: assemble_residual(st, k, u_, trial_x=v_)  # noqa: E731
        u_eq, free_eq = 1, 0

    r00 = res(b.zero, b.zero)
    r10 = res(b.one, b.zero)
    u_pivot = r10[u_eq] - r00[u_eq]
    if b.is_zero(u_pivot):
        if b.is_zero(r00[u_eq]):
            raise DegenerateOrder(f"u_{k} is undetermined", order=k, pivot=u_pivot, residual=r00[u_eq])
        raise Inconsistent(f"no u_{k} solves order {k}", order=k, pivot=u_pivot, residual=r00[u_eq])
    u_k = -r00[u_eq] / u_pivot

    r_u0 = res(u_k, b.zero)
    r_u1 = res(u_k, b.one)
    free_pivot = r_u1[free_eq] - r_u0[free_eq]
    rest = r_u0[free_eq]
    step = OrderStep(k, u_pivot, free_pivot, free)
    if b.is_zero(free_pivot):
        if not b.is_zero(rest):
            raise Inconsistent(
                f"{free}-pivot vanishes with residual {b.fmt(rest)} at order {k}",
                order=k, pivot=free_pivot, residual=rest,
            )
        if k not in overrides:
            raise DegenerateOrder(
                f"{free}_{k} is undetermined (zero pivot, zero residual)",
                order=k, pivot=free_pivot, residual=rest,
            )
        v_k = b.coerce(overrides[k])
        step.degenerate = True
        step.override = v_k
    else:
        v_k = -rest / free_pivot

    if free == "x":
        st.push(u_k, v_k, st.gauge_value(k))
    else:
        st.push(u_k, st.gauge_value(k), v_k)
    return step


@dataclass
class LocalSolution:
    x: TruncatedSeries
    y: TruncatedSeries
    u: TruncatedSeries
    mode: str
    steps: list = field(default_factory=list)
    conditions: ConditionReport | None = None
    degenerate_orders: list = field(default_factory=list)
    overrides_consumed: list = field(default_factory=list)
    verified_order: int | None = None
    pivot_identities: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.x.order

    @property
    def backend(self):
        return self.x.backend

    def to_json(self) -> dict:
        fmt = self.backend.fmt
        cond = self.conditions.to_json() if self.conditions else {}
        return {
            "mode": self.mode,
            "order": self.order,
            "x": [fmt(c) for c in self.x],
            "y": [fmt(c) for c in self.y],
            "u": [fmt(c) for c in self.u],
            "pivots": [s.to_json(fmt) for s in self.steps],
            "paper_resonances": cond.get("paper_resonances", []),
            "runtime_resonances": cond.get("runtime_resonances", []),
            "conditions": cond,
            "degenerate_orders": list(self.degenerate_orders),
            "overrides_consumed": list(self.overrides_consumed),
            "pivot_identities": dict(self.pivot_identities),
            "verified_order": self.verified_order,
        }


def _initial_state(np: NormalizedProblem, mode: str, gauge, tangent, order: int) -> LocalSolverState:
    b = np.backend
    phi = np.phi
    require_condition_iii(phi)
    x0 = np.x0
    pP0, pQ0, pP1, pQ1 = phi.phi_P[0], phi.phi_Q[0], phi.phi_P[1], phi.phi_Q[1]
    C = (pQ0 / pP0) * (x0 - 1) / (x0 + 1)
    ratio = pQ1 / pP1
    gauge = list(gauge)
    if mode == OBLIQUE:
        x1, y1 = (b.coerce(c) for c in tangent)
        if b.is_zero(x1) or b.is_zero(y1):
            raise NoObliqueTangent("oblique tangent needs x1 * y1 != 0")
        if not b.is_zero(ratio - C):
            raise NoObliqueTangent(
                f"order-1 equations force x1 * y1 = 0 unless phi_Q1/phi_P1 = C "
                f"({b.fmt(ratio)} vs {b.fmt(C)})"
            )
        if gauge and not b.is_zero(b.coerce(gauge[0]) - y1):
            raise ValueError("gauge y1 disagrees with the oblique tangent")
        gauge = [y1] + gauge[1:]
    st = LocalSolverState(np, mode, gauge, order)
    g1 = st.gauge_value(1)
    if b.is_zero(g1):
        raise ValueError("gauge coefficient at order 1 must be nonzero")
    if mode == PERPENDICULAR:
        st.push(C, b.zero, g1)
    elif mode == PARALLEL:
        st.push(ratio, g1, b.zero)
    else:
        st.push(C, x1, g1)
    return st


def solve(np: NormalizedProblem, mode: str = PERPENDICULAR, gauge: Sequence = (), overrides: dict | None = None,
          order: int | None = None, tangent=None, verify: bool = True) -> LocalSolution:
    """Order-by-order local solution through ``order``.

    Raises :class:`DegenerateOrder` or :class:`Inconsistent` at the first
    zero pivot that an override cannot resolve; the exception carries the
    partial solution as ``exc.partial``.
    """
    b = np.backend
    N = order or np.order
    if N > np.phi.phi_P.order:
        raise ValueError(f"branch series only reach order {np.phi.phi_P.order}")
    overrides = {int(k): v for k, v in (overrides or {}).items()}
    conditions = np.conditions(N)
    st = _initial_state(np, mode, gauge, tangent, N)
    r1 = assemble_residual_at(st, 1)
    if not (b.is_zero(r1[0]) and b.is_zero(r1[1])):
        raise Inconsistent("order-1 equations fail", order=1, residual=r1)

    steps: list[OrderStep] = []
    phi = np.phi
    u_formula = st.gauge_value(1) * phi.phi_P[0] / (np.x0 - 1)
    u_ok = x_ok = True
    try:
        for k in range(2, N + 1):
            step = solve_order(st, k, overrides)
            steps.append(step)
            if mode != PARALLEL:
                u_ok &= b.is_zero(step.u_pivot - u_formula)
                x_ok &= b.is_zero(step.free_pivot - (phi.phi_Q[1] - st.u[1] ** k * phi.phi_P[1]))
    except SolverStop as exc:
        exc.partial = _finish(st, steps, conditions, None, {})
        exc.conditions = conditions
        raise
    idents = {}
    if mode != PARALLEL:
        idents = {"u_pivot": u_ok, "x_pivot": x_ok}
        if not (u_ok and x_ok):
            log.warning("probed pivots disagree with the closed forms: %s", idents)
    sol = _finish(st, steps, conditions, None, idents)
    unused = sorted(set(overrides) - set(sol.overrides_consumed))
    if unused:
        log.warning("overrides for non-degenerate orders ignored: %s", unused)
    if verify:
        sol.verified_order = verify_residual(sol, np, N)
    return sol


def assemble_residual_at(st: LocalSolverState, k: int):
    """Residual of the already-stored order ``k`` (all last entries)."""
    x, y, u = st.series()
    lx, rx, ly, ry = equation_sides(x, y, u, st.A, st.B, st.np.x0, k)
    return lx[k] - rx[k], ly[k] - ry[k]


def _finish(st, steps, conditions, verified, idents) -> LocalSolution:
    x, y, u = st.series()
    return LocalSolution(
        x, y, u, st.mode, steps, conditions,
        degenerate_orders=[s.order for s in steps if s.degenerate],
        overrides_consumed=[s.order for s in steps if s.degenerate],
        verified_order=verified,
        pivot_identities=idents,
    )


def problem_solve(p: FChordalProblem, verify: bool = True) -> tuple[NormalizedProblem, LocalSolution]:
    np = normalize(p)
    sol = solve(np, p.mode, p.gauge, p.overrides, p.order, p.tangent, verify=verify)
    return np, sol


# -- induced parametrizations and verification ----------------------------

def induced_parametrization(x: TruncatedSeries, y: TruncatedSeries, point: str, phi: PhiPair):
    """Series of ``point + phi(|point - gamma|) (point - gamma) / |point - gamma|``.

    This is the parametrization near ``V2`` that the chordal point induces.
    """
    b = x.backend
    if point == "P":
        px, branch, anchor = b.one, phi.phi_P, phi.anchor_P
    elif point == "Q":
        px, branch, anchor = -b.one, phi.phi_Q, phi.anchor_Q
    else:
        raise ValueError("point must be 'P' or 'Q'")
    n = min(x.order, y.order, branch.order)
    x, y = x.truncate(n), y.truncate(n)
    dx = px - x
    s = sqrt_series(dx * dx + y * y)
    if not b.is_zero(s[0] - anchor):
        raise AnchorMismatch(f"|{point} - gamma(0)| = {b.fmt(s[0])} but the branch is anchored at {b.fmt(anchor)}")
    factor = compose(branch.truncate(n), s - s[0]) * reciprocal(s)
    return px + factor * dx, factor * (-y)


def _first_bad(values: Sequence, b) -> int | None:
    for i, v in enumerate(values):
        if not b.is_zero(v):
            return i
    return None


def verify_residual(sol: LocalSolution, np: NormalizedProblem, order: int | None = None) -> int:
    """Largest ``m <= order`` through which every coefficient of both checks vanishes.

    The checks are all entries of both matrix equations, and the coordinates
    of ``gamma_P(u(t)) - gamma_Q(t)``.  Returns 0 on an order-0 mismatch.
    """
    b = np.backend
    N = min(order or sol.order, sol.order)
    x, y, u = sol.x.truncate(N), sol.y.truncate(N), sol.u.truncate(N)
    lx, rx, ly, ry = equation_sides(x, y, u, np.A, np.B, np.x0, N)
    bad = [
        _first_bad([l - r for l, r in zip(lx, rx)], b),
        _first_bad([l - r for l, r in zip(ly, ry)], b),
    ]
    try:
        gPx, gPy = induced_parametrization(x, y, "P", np.phi)
        gQx, gQy = induced_parametrization(x, y, "Q", np.phi)
        if not b.is_zero(u[0]):
            return 0
        bad.append(_first_bad((compose(gPx, u) - gQx).coeffs, b))
        bad.append(_first_bad((compose(gPy, u) - gQy).coeffs, b))
    except (AnchorMismatch, DomainViolation):
        return 0
    bad = [i for i in bad if i is not None]
    if not bad:
        return N
    return max(min(bad) - 1, 0)


def denormalize(sol: LocalSolution, transform: SimilarityTransform, samples: Sequence) -> list[tuple]:
    """Evaluate the truncated series at each ``t`` and map back to the input frame.

    Only meaningful for small ``|t|``; nothing is known about convergence.
    """
    b = sol.backend
    out = []
    for t in samples:
        t = b.coerce(t)
        out.append(transform.from_normalized((sol.x.evaluate(t), sol.y.evaluate(t))))
    return out


def denormalize_pair(xs: TruncatedSeries, ys: TruncatedSeries, transform: SimilarityTransform, samples) -> list[tuple]:
    b = xs.backend
    return [transform.from_normalized((xs.evaluate(b.coerce(t)), ys.evaluate(b.coerce(t)))) for t in samples]
