"""Coefficient backends and truncated formal power series.

Two coefficient backends exist: exact rationals (``fractions.Fraction``) and
binary floats of configurable precision (``mpmath``).  A coefficient value is
a bare ``Fraction`` or ``mpf``; the backend travels with the series that holds
it, and binary operations refuse to mix series from different backends.

A :class:`TruncatedSeries` stores ``c_0 .. c_N`` and nothing beyond ``N``.
Binary operations truncate to the smaller order.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .errors import (
    BackendMismatch,
    ChordalError,
    IrrationalRoot,
    NonPositiveConstant,
    NonZeroConstant,
    ZeroConstantTerm,
)

log = logging.getLogger(__name__)

MIN_FLOAT_PRECISION = 128


def _iroot(n: int, q: int) -> int | None:
    """Exact integer q-th root of n >= 0, or None."""
    if n < 2:
        return n
    r = int(round(n ** (1.0 / q))) if n.bit_length() < 1000 else 1 << (n.bit_length() // q)
    # Newton from above
    r = max(r, 1)
    while True:
        s = ((q - 1) * r + n // r ** (q - 1)) // q
        if s >= r:
            break
        r = s
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** q == n:
            return cand
    return None


class RationalBackend:
    name = "rational"
    precision = None
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "RationalBackend()"

    def __eq__(self, other):
        return isinstance(other, RationalBackend)

    def __hash__(self):
        return hash("rational")

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not coefficients")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise BackendMismatch(f"cannot use {type(value).__name__} on the rational backend")

    def parse(self, text: str) -> Fraction:
        if not isinstance(text, str):
            raise ValueError(f"numeric values must be strings, got {text!r}")
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {text!r}") from exc

    def fmt(self, value) -> str:
        return str(value)

    def is_zero(self, value) -> bool:
        return value == 0

    def sign(self, value) -> int:
        return (value > 0) - (value < 0)

    def to_float(self, value) -> float:
        return float(value)

    def sqrt(self, value) -> Fraction:
        if value <= 0:
            raise NonPositiveConstant(f"square root of non-positive {value}")
        return self.root(value, 2)

    def root(self, value, q: int) -> Fraction:
        if value < 0:
            raise NonPositiveConstant(f"root of negative {value}")
        num = _iroot(value.numerator, q)
        den = _iroot(value.denominator, q)
        if num is None or den is None:
            raise IrrationalRoot(f"{value} has no rational {q}-th root; use the float backend")
        return Fraction(num, den)

    def pow(self, value, exponent) -> Fraction:
        exponent = self.coerce(exponent)
        base = self.root(value, exponent.denominator) if exponent.denominator != 1 else value
        return base ** exponent.numerator


class FloatBackend:
    """Binary floating point through an ``mpmath`` context of fixed precision.

    Values whose magnitude falls below ``2**(-precision/2)`` are treated as
    zero by :meth:`is_zero`; each such collapse of a nonzero value is logged.
    """

    name = "float"

    def __init__(self, precision: int = 256):
        if precision < MIN_FLOAT_PRECISION:
            raise ValueError(f"float backend needs >= {MIN_FLOAT_PRECISION} bits, got {precision}")
        self.precision = precision
        self.ctx = mpmath.MPContext()
        self.ctx.prec = precision
        self.zero = self.ctx.mpf(0)
        self.one = self.ctx.mpf(1)
        self.tolerance = self.ctx.ldexp(self.one, -(precision // 2))
        self.digits = int(precision * math.log10(2)) + 1

    def __repr__(self):
        return f"FloatBackend({self.precision})"

    def __eq__(self, other):
        return isinstance(other, FloatBackend) and other.precision == self.precision

    def __hash__(self):
        return hash(("float", self.precision))

    def coerce(self, value):
        ctx = self.ctx
        if isinstance(value, bool):
            raise TypeError("booleans are not coefficients")
        if isinstance(value, ctx.mpf):
            return value
        if isinstance(value, int):
            return ctx.mpf(value)
        if isinstance(value, Fraction):
            return ctx.mpf(value.numerator) / value.denominator
        if isinstance(value, str):
            return self.parse(value)
        if hasattr(value, "_mpf_"):
            raise BackendMismatch("mpf value from a different precision context")
        raise BackendMismatch(f"cannot use {type(value).__name__} on the float backend")

    def parse(self, text: str):
        if not isinstance(text, str):
            raise ValueError(f"numeric values must be strings, got {text!r}")
        text = text.strip()
        if "/" in text:
            try:
                return self.coerce(Fraction(text))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed number {text!r}") from exc
        try:
            value = self.ctx.mpf(text)
        except (ValueError, TypeError) as exc:
            raise ValueError(f"malformed number {text!r}") from exc
        if not self.ctx.isfinite(value):
            raise ValueError(f"non-finite number {text!r}")
        return value

    def fmt(self, value) -> str:
        text = mpmath.libmp.to_str(value._mpf_, self.digits, min_fixed=1, max_fixed=0)
        if "e" not in text:
            text += "e+0"
        return text

    def is_zero(self, value) -> bool:
        if value == 0:
            return True
        if abs(value) < self.tolerance:
            log.info("float zero test collapsed %s to zero", self.ctx.nstr(value, 8))
            return True
        return False

    def sign(self, value) -> int:
        if self.is_zero(value):
            return 0
        return 1 if value > 0 else -1

    def to_float(self, value) -> float:
        return float(value)

    def sqrt(self, value):
        if value <= self.tolerance:
            raise NonPositiveConstant(f"square root of non-positive {self.ctx.nstr(value, 8)}")
        return self.ctx.sqrt(value)

    def root(self, value, q: int):
        if value < 0:
            raise NonPositiveConstant("root of negative value")
        return self.ctx.root(value, q)

    def pow(self, value, exponent):
        exponent = self.coerce(exponent)
        if value <= 0:
            raise NonPositiveConstant("non-integer power of non-positive value")
        return self.ctx.power(value, exponent)


RATIONAL = RationalBackend()


@lru_cache(maxsize=None)
def float_backend(precision: int = 256) -> FloatBackend:
    return FloatBackend(precision)


def get_backend(name: str = "rational", precision: int | None = None):
    if name == "rational":
        return RATIONAL
    if name == "float":
        return float_backend(precision or 256)
    raise ValueError(f"unknown backend {name!r}")


def _check(f: "TruncatedSeries", g: "TruncatedSeries"):
    if f.backend != g.backend:
        raise BackendMismatch(f"{f.backend!r} vs {g.backend!r}")


class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a formal power series in ``t``."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable, backend=RATIONAL):
        coeffs = tuple(backend.coerce(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        self.coeffs = coeffs
        self.backend = backend

    @classmethod
    def _raw(cls, coeffs: tuple, backend) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.backend = backend
        return obj

    @classmethod
    def constant(cls, value, order: int, backend=RATIONAL) -> "TruncatedSeries":
        return cls([value] + [0] * order, backend)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1, backend=RATIONAL) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if k <= order:
            cs[k] = coeff
        return cls(cs, backend)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(self.backend.fmt(c) for c in self.coeffs)}])"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.backend == other.backend and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.backend))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries._raw(self.coeffs[: order + 1], self.backend)

    def is_zero(self) -> bool:
        return all(self.backend.is_zero(c) for c in self.coeffs)

    def first_nonzero(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not self.backend.is_zero(c):
                return i
        return None

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order, self.backend)
        return arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order, self.backend)
        return arith(self, other, "sub")

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncatedSeries._raw(tuple(-c for c in self.coeffs), self.backend)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return arith(self, other, "mul")
        c = self.backend.coerce(other)
        return TruncatedSeries._raw(tuple(c * a for a in self.coeffs), self.backend)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = TruncatedSeries.constant(1, self.order, self.backend)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, g: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, g)

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries._raw((self.backend.zero,), self.backend)
        return TruncatedSeries._raw(
            tuple(i * c for i, c in enumerate(self.coeffs) if i), self.backend
        )

    def evaluate(self, t):
        acc = self.backend.zero
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


def series(coeffs: Sequence, backend=RATIONAL) -> TruncatedSeries:
    return TruncatedSeries(coeffs, backend)


def arith(f: TruncatedSeries, g: TruncatedSeries, op: str) -> TruncatedSeries:
    """Ring operation ``op`` in {add, sub, mul}, truncated at the smaller order."""
    _check(f, g)
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    if op == "add":
        cs = tuple(a[i] + b[i] for i in range(n + 1))
    elif op == "sub":
        cs = tuple(a[i] - b[i] for i in range(n + 1))
    elif op == "mul":
        zero = f.backend.zero
        cs = []
        for k in range(n + 1):
            acc = zero
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc += a[i] * b[k - i]
            cs.append(acc)
        cs = tuple(cs)
    else:
        raise ValueError(f"unknown op {op!r}")
    return TruncatedSeries._raw(cs, f.backend)


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(t))`` through the common order; requires ``g_0 = 0``."""
    _check(f, g)
    if not g.backend.is_zero(g[0]):
        raise NonZeroConstant(f"inner series has constant term {g.backend.fmt(g[0])}")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = TruncatedSeries.constant(f[n], n, f.backend)
    for i in range(n - 1, -1, -1):
        acc = acc * g + f[i]
    return acc


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    b = f.backend
    if b.is_zero(f[0]):
        raise ZeroConstantTerm("reciprocal of a series with zero constant term")
    inv0 = b.one / f[0]
    out = [inv0]
    for n in range(1, f.order + 1):
        acc = b.zero
        for j in range(1, n + 1):
            acc += f[j] * out[n - j]
        out.append(-acc * inv0)
    return TruncatedSeries._raw(tuple(out), b)


def sqrt_series(f: TruncatedSeries) -> TruncatedSeries:
    """Positive-branch square root; exact constant term required on the rational backend."""
    b = f.backend
    if b.sign(f[0]) <= 0:
        raise NonPositiveConstant(f"square root needs a positive constant term, got {b.fmt(f[0])}")
    g0 = b.sqrt(f[0])
    two_g0 = 2 * g0
    out = [g0]
    for n in range(1, f.order + 1):
        acc = f[n]
        for j in range(1, n):
            acc -= out[j] * out[n - j]
        out.append(acc / two_g0)
    return TruncatedSeries._raw(tuple(out), b)


def pow_series(f: TruncatedSeries, exponent, constant=None) -> TruncatedSeries:
    """``f**exponent`` for a real exponent, ``f_0 > 0``.

    ``constant`` may supply ``f_0**exponent`` when the caller already knows it.
    Uses the recurrence obtained from ``f g' = exponent f' g``.
    """
    b = f.backend
    beta = b.coerce(exponent)
    if b.sign(f[0]) <= 0:
        raise NonPositiveConstant("power series needs a positive constant term")
    g0 = b.coerce(constant) if constant is not None else b.pow(f[0], beta)
    out = [g0]
    for n in range(1, f.order + 1):
        acc = b.zero
        for j in range(1, n + 1):
            acc += ((beta + 1) * j - n) * f[j] * out[n - j]
        out.append(acc / (n * f[0]))
    return TruncatedSeries._raw(tuple(out), b)


class BivariateTaylor:
    """Taylor data ``sum c_ij (a - a*)^i (b - b*)^j`` for ``i + j <= N``."""

    __slots__ = ("anchor", "order", "coeffs", "backend")

    def __init__(self, anchor, coeffs: dict, order: int, backend=RATIONAL):
        self.backend = backend
        self.anchor = (backend.coerce(anchor[0]), backend.coerce(anchor[1]))
        self.order = order
        cs = {}
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0 or i + j > order:
                raise ValueError(f"index ({i},{j}) outside total degree {order}")
            cs[(i, j)] = backend.coerce(c)
        self.coeffs = cs

    @classmethod
    def from_rows(cls, anchor, rows: Sequence[Sequence], backend=RATIONAL) -> "BivariateTaylor":
        """``rows[i][j]`` is ``c_ij``; the triangle may be ragged."""
        order = max(i + len(r) - 1 for i, r in enumerate(rows))
        return cls(anchor, {(i, j): c for i, r in enumerate(rows) for j, c in enumerate(r)}, order, backend)

    def __getitem__(self, ij):
        return self.coeffs.get(ij, self.backend.zero)

    @property
    def value(self):
        return self[0, 0]

    def rows(self) -> list[list]:
        return [[self[i, j] for j in range(self.order + 1 - i)] for i in range(self.order + 1)]

    def rescaled(self, scale) -> "BivariateTaylor":
        """Taylor data of ``G(a, b) = F(a/scale, b/scale)`` at the scaled anchor."""
        s = self.backend.coerce(scale)
        inv = self.backend.one / s
        cs = {(i, j): c * inv ** (i + j) for (i, j), c in self.coeffs.items()}
        return BivariateTaylor((self.anchor[0] * s, self.anchor[1] * s), cs, self.order, self.backend)


def bi_eval_compose(F: BivariateTaylor, f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Series of ``F(a* + f(t), b* + g(t))`` where ``f_0 = g_0 = 0``."""
    _check(f, g)
    if F.backend != f.backend:
        raise BackendMismatch(f"{F.backend!r} vs {f.backend!r}")
    b = f.backend
    if not (b.is_zero(f[0]) and b.is_zero(g[0])):
        raise NonZeroConstant("offsets from the anchor must vanish at t = 0")
    n = min(F.order, f.order, g.order)
    f, g = f.truncate(n), g.truncate(n)
    fp = [TruncatedSeries.constant(1, n, b)]
    gp = [TruncatedSeries.constant(1, n, b)]
    for _ in range(n):
        fp.append(fp[-1] * f)
        gp.append(gp[-1] * g)
    acc = TruncatedSeries.constant(0, n, b)
    for (i, j), c in sorted(F.coeffs.items()):
        if i + j <= n and not b.is_zero(c):
            acc = acc + (fp[i] * gp[j]) * c
    return acc


def to_backend(f: TruncatedSeries, backend) -> TruncatedSeries:
    """Re-express ``f`` on another backend (rational -> float only)."""
    if f.backend == backend:
        return f
    if f.backend != RATIONAL:
        raise ChordalError("only rational series can be converted")
    return TruncatedSeries(f.coeffs, backend)
