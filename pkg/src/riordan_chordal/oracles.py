"""Closed-form reference series and a floating-point chord check.

These depend only on the base series module, never on the solver's code
path, so they can adjudicate solver output.
"""

from __future__ import annotations

import math

import mpmath

from . import implicit
from .errors import OracleDomainError
from .fchordal import LocalSolution, NormalizedProblem, induced_parametrization
from .series import RATIONAL, TruncatedSeries, sqrt_series

DEFAULT_WINDOW = 0.1


def circle_series(center_x, radius, order: int, backend=RATIONAL) -> TruncatedSeries:
    """``x(t) = center_x + sqrt(radius^2 - t^2)``: the circle in graph form ``x(y)``, gauge ``y = t``."""
    cx, r = backend.coerce(center_x), backend.coerce(radius)
    if backend.sign(r) <= 0:
        raise OracleDomainError("circle radius must be positive")
    inside = TruncatedSeries([r * r, 0, -1] + [0] * max(order - 2, 0), backend).truncate(order)
    return sqrt_series(inside) + cx


def ellipse_series(a, order: int, backend=RATIONAL) -> TruncatedSeries:
    """Ellipse with foci ``(+-1, 0)`` and semi-major axis ``a``: ``x(t) = a sqrt(1 - t^2/(a^2 - 1))``."""
    a = backend.coerce(a)
    if backend.sign(a - 1) <= 0:
        raise OracleDomainError("semi-major axis must exceed the focal half-distance 1")
    b2 = a * a - 1
    inside = TruncatedSeries([1, 0, -backend.one / b2] + [0] * max(order - 2, 0), backend).truncate(order)
    return sqrt_series(inside) * a


def circle_through_vertices(x0, v2, order: int, backend=RATIONAL) -> TruncatedSeries:
    """The circle through ``(x0, 0)`` and ``(v2, 0)`` with a vertical tangent at ``(x0, 0)``."""
    x0, v2 = backend.coerce(x0), backend.coerce(v2)
    return circle_series((x0 + v2) / 2, (x0 - v2) / 2, order, backend)


def _eval(s: TruncatedSeries, t: float) -> float:
    acc = 0.0
    for c in reversed(s.coeffs):
        acc = acc * t + float(c)
    return acc


def _F(np: NormalizedProblem, kind: str, a: float, b: float, point: str) -> float:
    chord = np.chord
    if kind in (implicit.EQUICHORDAL, implicit.EQUIPRODUCT, implicit.EQUIRECIPROCAL, implicit.DIFFERENCE):
        return {
            implicit.EQUICHORDAL: lambda: a + b,
            implicit.EQUIPRODUCT: lambda: a * b,
            implicit.EQUIRECIPROCAL: lambda: 1 / a + 1 / b,
            implicit.DIFFERENCE: lambda: a - b,
        }[kind]()
    if kind == implicit.POWER_SUM:
        alpha = float(chord.alpha)
        return a ** alpha + b ** alpha
    if kind == implicit.CUSTOM_F:
        F = chord.F_P if point == "P" else chord.F_Q
        F = F.rescaled(np.transform.scale)
        da, db = a - float(F.anchor[0]), b - float(F.anchor[1])
        return sum(float(c) * da ** i * db ** j for (i, j), c in F.coeffs.items())
    raise ValueError(kind)


def _far_point(sol: LocalSolution, np: NormalizedProblem, point: str, ax: float, ay: float, guess: float):
    """Where the line through ``A`` and ``point`` meets the arc near ``V2`` traced via the other point.

    Using the other point's induced arc keeps the check honest: the arc
    induced by ``point`` itself satisfies the chord relation by construction.
    """
    other = "Q" if point == "P" else "P"
    X, Y = induced_parametrization(sol.x, sol.y, other, np.phi)
    px = 1.0 if point == "P" else -1.0

    def cross(s):
        s = float(s)
        return (_eval(X, s) - px) * ay - _eval(Y, s) * (ax - px)

    try:
        s = float(mpmath.findroot(cross, guess, solver="secant", tol=1e-28))
    except (ValueError, ZeroDivisionError):
        s = guess
    return _eval(X, s), _eval(Y, s)


def chord_residual_numeric(sol: LocalSolution, np: NormalizedProblem, point: str, t) -> float:
    """``F(|A - point|, |B - point|) - k`` in double precision at parameter ``t``.

    ``A`` comes from the truncated series near ``V1``; ``B`` is the second
    intersection of the chord through ``point`` with the arc near ``V2``.
    For ``P``, ``A = gamma(t)`` and ``B`` sits near parameter ``u(t)``; for
    ``Q``, ``A = gamma(u(t))`` and ``B`` sits near ``t``, so every series is
    evaluated at ``|s| <= |t|`` when ``|u_1| <= 1``.  For custom branch data (no F available) the branch residual
    ``phi(|A - point|) - |B - point|`` is returned instead.  Intended for
    ``|t| <= 0.1``.
    """
    t = float(t)
    px = 1.0 if point == "P" else -1.0
    ut = _eval(sol.u, t)
    ta, guess = (t, ut) if point == "P" else (ut, t)
    ax, ay = _eval(sol.x, ta), _eval(sol.y, ta)
    bx, by = _far_point(sol, np, point, ax, ay, guess)
    a = math.hypot(ax - px, ay)
    b = math.hypot(bx - px, by)
    kind = np.chord.kind if np.chord is not None else implicit.CUSTOM_PHI
    if kind == implicit.CUSTOM_PHI:
        branch = np.phi.phi_P if point == "P" else np.phi.phi_Q
        anchor = float(np.phi.anchor_P if point == "P" else np.phi.anchor_Q)
        return _eval(branch, a - anchor) - b
    k = float(np.phi.k_P if point == "P" else np.phi.k_Q)
    return _F(np, kind, a, b, point) - k
