"""Geometric continuity of a join through partial Riordan matrices.

A left branch ``(x_l, y_l)`` and a right branch ``(x_r, y_r)`` meeting at a
vertex form a G^k join when some ``u = u_1 t + ... + u_k t^k`` with
``u_1 != 0`` satisfies ``R_k(1, u) a = c`` and ``R_k(1, u) b = d`` on the
Taylor data.  The solve walks the orders upward; at order ``m`` only the
last row of ``R_m(1, u)`` is new and ``u_m`` enters it linearly with
coefficient ``a_1`` (or ``b_1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NonRegularLeft, VertexMismatch, ZeroU1
from .riordan import apply, build
from .series import RATIONAL, TruncatedSeries, compose


@dataclass(frozen=True)
class JoinData:
    order: int
    left_x: TruncatedSeries
    left_y: TruncatedSeries
    right_x: TruncatedSeries
    right_y: TruncatedSeries

    @classmethod
    def from_lists(cls, left_x, left_y, right_x, right_y, order: int | None = None, backend=RATIONAL):
        if order is None:
            order = min(len(left_x), len(left_y), len(right_x), len(right_y)) - 1
        series = [TruncatedSeries(s, backend).truncate(order) for s in (left_x, left_y, right_x, right_y)]
        return cls(order, *series)

    @property
    def backend(self):
        return self.left_x.backend


@dataclass(frozen=True)
class Success:
    u: TruncatedSeries
    orientation_reversing: bool = False

    ok = True

    def to_json(self) -> dict:
        fmt = self.u.backend.fmt
        return {
            "outcome": "success",
            "u": [fmt(c) for c in self.u],
            "orientation_reversing": self.orientation_reversing,
            "verified_order": self.u.order,
        }


@dataclass(frozen=True)
class Failure:
    order: int
    coordinate: str
    residual: object
    verified_order: int
    backend: object = RATIONAL

    ok = False

    def to_json(self) -> dict:
        return {
            "outcome": "failure",
            "order": self.order,
            "coordinate": self.coordinate,
            "residual": self.backend.fmt(self.residual),
            "verified_order": self.verified_order,
        }


def _last_entry(u_coeffs: list, target: TruncatedSeries, m: int, backend):
    R = build(TruncatedSeries.constant(1, m, backend), TruncatedSeries(u_coeffs[: m + 1], backend), m)
    return apply(R, target.coeffs[: m + 1])[m]


def solve_join(j: JoinData) -> Success | Failure:
    """Recover the reparametrization ``u`` or report the first failing order.

    The residual in a :class:`Failure` is ``right - (left o u)`` at that order.
    """
    b = j.backend
    a, bb, c, d = j.left_x, j.left_y, j.right_x, j.right_y
    if not b.is_zero(a[0] - c[0]):
        raise VertexMismatch("x coordinates of the vertex differ", coordinate="x", residual=c[0] - a[0])
    if not b.is_zero(bb[0] - d[0]):
        raise VertexMismatch("y coordinates of the vertex differ", coordinate="y", residual=d[0] - bb[0])
    if j.order == 0:
        return Success(TruncatedSeries([0], b))
    if b.is_zero(a[1]) and b.is_zero(bb[1]):
        raise NonRegularLeft("left branch has zero velocity at the vertex")

    # pivot on x when possible, cross-check the other coordinate
    if not b.is_zero(a[1]):
        piv_name, piv_left, piv_right = "x", a, c
        chk_name, chk_left, chk_right = "y", bb, d
    else:
        piv_name, piv_left, piv_right = "y", bb, d
        chk_name, chk_left, chk_right = "x", a, c
    pivot = piv_left[1]

    u = [b.zero, piv_right[1] / pivot]
    if b.is_zero(u[1]):
        raise ZeroU1("the solved u_1 vanishes; the join is not regular")
    r = chk_right[1] - chk_left[1] * u[1]
    if not b.is_zero(r):
        return Failure(1, chk_name, r, 0, b)

    for m in range(2, j.order + 1):
        u.append(b.zero)
        got = _last_entry(u, piv_left, m, b)
        u[m] = (piv_right[m] - got) / pivot
        r = chk_right[m] - _last_entry(u, chk_left, m, b)
        if not b.is_zero(r):
            return Failure(m, chk_name, r, m - 1, b)
    return Success(TruncatedSeries(u, b), orientation_reversing=b.sign(u[1]) < 0)


def apply_reparam(xs: TruncatedSeries, ys: TruncatedSeries, u: TruncatedSeries):
    return compose(xs, u), compose(ys, u)


def match_curves(p1: Sequence[TruncatedSeries], p2: Sequence[TruncatedSeries], order: int) -> Success | Failure:
    """Is ``p2`` a reparametrization ``p1 o u`` through ``order``?"""
    x1, y1 = p1
    x2, y2 = p2
    return solve_join(JoinData(order, x1.truncate(order), y1.truncate(order), x2.truncate(order), y2.truncate(order)))
