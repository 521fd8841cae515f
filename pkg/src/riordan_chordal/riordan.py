"""Partial generalized Riordan matrices ``R_n(d, h)``.

Entry ``a_ij`` is the coefficient of ``t^i`` in ``d * h^j``; the matrix is the
``(n+1) x (n+1)`` lower-triangular principal block and depends only on the
order-``n`` truncations of ``d`` and ``h``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import BackendMismatch, NonZeroH0, SizeMismatch
from .series import TruncatedSeries, compose


class PartialRiordanMatrix:
    __slots__ = ("d", "h", "rows")

    def __init__(self, d: TruncatedSeries, h: TruncatedSeries, rows: tuple):
        self.d = d
        self.h = h
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def backend(self):
        return self.d.backend

    @property
    def ordinary(self) -> bool:
        b = self.backend
        return not b.is_zero(self.d[0]) and self.n >= 1 and not b.is_zero(self.h[1])

    def __getitem__(self, ij):
        i, j = ij
        if j > i:
            return self.backend.zero
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PartialRiordanMatrix):
            return NotImplemented
        return self.backend == other.backend and self.rows == other.rows

    def __repr__(self):
        fmt = self.backend.fmt
        return "PartialRiordanMatrix(" + "; ".join(" ".join(fmt(c) for c in r) for r in self.rows) + ")"

    def dense(self) -> list[list]:
        z = self.backend.zero
        return [[self[i, j] if j <= i else z for j in range(self.size)] for i in range(self.size)]

    def submatrix(self, m: int) -> "PartialRiordanMatrix":
        """Principal block of size ``m + 1``."""
        return PartialRiordanMatrix(self.d.truncate(m), self.h.truncate(m), self.rows[: m + 1])


def build(d: TruncatedSeries, h: TruncatedSeries, n: int) -> PartialRiordanMatrix:
    if d.backend != h.backend:
        raise BackendMismatch("d and h live on different backends")
    if not h.backend.is_zero(h[0]):
        raise NonZeroH0(f"h must start at t, got h_0 = {h.backend.fmt(h[0])}")
    if d.order < n or h.order < n:
        raise SizeMismatch(f"need d, h of order >= {n}")
    d, h = d.truncate(n), h.truncate(n)
    cols = []
    col = d
    for j in range(n + 1):
        cols.append(col)
        col = col * h
    rows = tuple(tuple(cols[j][i] for j in range(i + 1)) for i in range(n + 1))
    return PartialRiordanMatrix(d, h, rows)


def apply(R: PartialRiordanMatrix, v: Sequence) -> list:
    if len(v) != R.size:
        raise SizeMismatch(f"vector of length {len(v)} for a matrix of size {R.size}")
    b = R.backend
    v = [b.coerce(c) for c in v]
    out = []
    for row in R.rows:
        acc = b.zero
        for a, c in zip(row, v):
            acc += a * c
        out.append(acc)
    return out


def mul(R1: PartialRiordanMatrix, R2: PartialRiordanMatrix) -> PartialRiordanMatrix:
    """``R_n(d, h) R_n(f, g) = R_n(d (f o h), g o h)``."""
    if R1.size != R2.size:
        raise SizeMismatch(f"sizes {R1.size} and {R2.size}")
    d, h, f, g = R1.d, R1.h, R2.d, R2.h
    return build(d * compose(f, h), compose(g, h), R1.n)


def extend(R: PartialRiordanMatrix, d_next, h_next) -> PartialRiordanMatrix:
    """Grow ``R_n`` to ``R_{n+1}`` by fixing the next Taylor coefficients of d and h.

    Only the new last row is computed; the old rows are reused verbatim.
    """
    b = R.backend
    n1 = R.n + 1
    d = TruncatedSeries(R.d.coeffs + (b.coerce(d_next),), b)
    h = TruncatedSeries(R.h.coeffs + (b.coerce(h_next),), b)
    last = []
    col = d
    for j in range(n1 + 1):
        last.append(col[n1])
        col = col * h
    return PartialRiordanMatrix(d, h, R.rows + (tuple(last),))


def matmul_dense(A: Sequence[Sequence], B: Sequence[Sequence], zero=0) -> list[list]:
    """Plain square matrix product; used to cross-check :func:`mul`."""
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                acc += A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out
