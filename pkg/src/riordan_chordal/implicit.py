"""Chord functions and the branch series ``phi`` with ``F(a, phi(a)) = k``.

Built-in families have explicit branches; any other ``F`` enters as bivariate
Taylor data and its branch is found by undetermined coefficients.  The module
also computes the resonance diagnostics used by the local solver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import AnchorMismatch, DegenerateFb, DomainViolation, ZeroPhi1
from .series import (
    RATIONAL,
    BivariateTaylor,
    TruncatedSeries,
    bi_eval_compose,
    compose,
    pow_series,
    reciprocal,
)

log = logging.getLogger(__name__)

EQUICHORDAL = "equichordal"
EQUIPRODUCT = "equiproduct"
EQUIRECIPROCAL = "equireciprocal"
POWER_SUM = "power_sum"
DIFFERENCE = "difference"
CUSTOM_PHI = "custom_phi"
CUSTOM_F = "custom_f"

FAMILIES = (EQUICHORDAL, EQUIPRODUCT, EQUIRECIPROCAL, POWER_SUM, DIFFERENCE)
KINDS = FAMILIES + (CUSTOM_PHI, CUSTOM_F)


@dataclass(frozen=True)
class ChordFunction:
    """Which ``F`` the chords obey.

    ``phi_P``/``phi_Q`` (custom_phi) are branch series in the caller's units,
    anchored at ``|P - V1|`` and ``|Q - V1|``.  ``F_P``/``F_Q`` (custom_f) are
    Taylor data of ``F`` at ``(|P - V1|, |P - V2|)`` and ``(|Q - V1|, |Q - V2|)``.
    """

    kind: str
    alpha: object = None
    phi_P: TruncatedSeries | None = None
    phi_Q: TruncatedSeries | None = None
    F_P: BivariateTaylor | None = None
    F_Q: BivariateTaylor | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown chord function kind {self.kind!r}")
        if self.kind == POWER_SUM and self.alpha is None:
            raise ValueError("power_sum needs alpha")
        if self.kind == CUSTOM_PHI and (self.phi_P is None or self.phi_Q is None):
            raise ValueError("custom_phi needs phi_P and phi_Q")
        if self.kind == CUSTOM_F and (self.F_P is None or self.F_Q is None):
            raise ValueError("custom_f needs F_P and F_Q")


@dataclass(frozen=True)
class PhiPair:
    phi_P: TruncatedSeries
    phi_Q: TruncatedSeries
    anchor_P: object
    anchor_Q: object
    k_P: object = None
    k_Q: object = None

    @property
    def backend(self):
        return self.phi_P.backend


def family_value(kind: str, a, b, backend=RATIONAL, alpha=None):
    """``F(a, b)`` for a built-in family."""
    a, b = backend.coerce(a), backend.coerce(b)
    if kind == EQUICHORDAL:
        return a + b
    if kind == EQUIPRODUCT:
        return a * b
    if kind == EQUIRECIPROCAL:
        return backend.one / a + backend.one / b
    if kind == POWER_SUM:
        return backend.pow(a, alpha) + backend.pow(b, alpha)
    if kind == DIFFERENCE:
        return a - b
    raise ValueError(f"{kind!r} is not a built-in family")


def family_bivariate(kind: str, anchor_a, anchor_b, order: int, backend=RATIONAL, alpha=None) -> BivariateTaylor:
    """Taylor data of a built-in ``F`` around ``(anchor_a, anchor_b)``."""
    a0, b0 = backend.coerce(anchor_a), backend.coerce(anchor_b)
    cs = {}
    if kind == EQUICHORDAL:
        cs = {(0, 0): a0 + b0, (1, 0): 1, (0, 1): 1}
    elif kind == EQUIPRODUCT:
        cs = {(0, 0): a0 * b0, (1, 0): b0, (0, 1): a0, (1, 1): 1}
    elif kind == DIFFERENCE:
        cs = {(0, 0): a0 - b0, (1, 0): 1, (0, 1): -1}
    elif kind == EQUIRECIPROCAL:
        # 1/(a0 + x) = sum (-1)^i x^i / a0^(i+1)
        for i in range(order + 1):
            sign = -1 if i % 2 else 1
            ca = sign * backend.one / a0 ** (i + 1)
            cb = sign * backend.one / b0 ** (i + 1)
            cs[(i, 0)] = cs.get((i, 0), 0) + ca
            cs[(0, i)] = cs.get((0, i), 0) + cb
    elif kind == POWER_SUM:
        pa = pow_series(TruncatedSeries([a0, 1] + [0] * (order - 1), backend), alpha)
        pb = pow_series(TruncatedSeries([b0, 1] + [0] * (order - 1), backend), alpha)
        for i in range(order + 1):
            cs[(i, 0)] = cs.get((i, 0), 0) + pa[i]
            cs[(0, i)] = cs.get((0, i), 0) + pb[i]
    else:
        raise ValueError(f"{kind!r} is not a built-in family")
    cs = {ij: c for ij, c in cs.items() if sum(ij) <= order}
    return BivariateTaylor((a0, b0), cs, order, backend)


def _shift(anchor, order, backend) -> TruncatedSeries:
    """The series ``anchor + h``."""
    return TruncatedSeries([anchor, 1] + [0] * (order - 1), backend)


def phi_from_family(family, k, anchor, order: int, backend=RATIONAL, branch: str | None = None) -> TruncatedSeries:
    """Explicit branch of ``F(a, b) = k`` as a series in ``h = a - anchor``.

    ``family`` is a :class:`ChordFunction` or a family name.  For the
    difference family ``branch`` picks ``a - k`` ("minus") or ``a + k``
    ("plus"); by default "minus" unless that leaves the branch non-positive.
    """
    alpha = None
    if isinstance(family, ChordFunction):
        alpha = family.alpha
        family = family.kind
    k, anchor = backend.coerce(k), backend.coerce(anchor)
    if backend.sign(anchor) <= 0:
        raise DomainViolation("anchor distance must be positive")
    a = _shift(anchor, max(order, 1), backend)
    if family == EQUICHORDAL:
        out = k - a
    elif family == EQUIPRODUCT:
        if backend.is_zero(k):
            raise DomainViolation("equiproduct constant must be nonzero")
        out = reciprocal(a) * k
    elif family == EQUIRECIPROCAL:
        if backend.is_zero(k * anchor - 1):
            raise DomainViolation("equireciprocal needs k * anchor != 1")
        out = a * reciprocal(a * k - 1)
    elif family == POWER_SUM:
        alpha = backend.coerce(alpha)
        if backend.is_zero(alpha):
            raise DomainViolation("power_sum needs alpha != 0")
        inner = k - pow_series(a, alpha)
        if backend.sign(inner[0]) <= 0:
            raise DomainViolation("power_sum needs k - anchor**alpha > 0")
        out = pow_series(inner, backend.one / alpha)
    elif family == DIFFERENCE:
        if branch is None:
            branch = "minus" if backend.sign(anchor - k) > 0 else "plus"
        out = a - k if branch == "minus" else a + k
        if backend.sign(out[0]) <= 0:
            raise DomainViolation("difference branch is non-positive at the anchor")
    else:
        raise ValueError(f"{family!r} has no explicit branch")
    return out.truncate(order)


def phi_implicit(F: BivariateTaylor, k, order: int) -> TruncatedSeries:
    """Branch through ``(a*, b*)`` solving ``F(a, phi(a)) = k`` order by order."""
    b = F.backend
    k = b.coerce(k)
    fb = F[0, 1]
    if b.is_zero(fb):
        raise DegenerateFb("dF/db vanishes at the anchor")
    if not b.is_zero(F.value - k):
        raise DomainViolation(f"F at the anchor is {b.fmt(F.value)}, not k = {b.fmt(k)}")
    n = min(order, F.order)
    h = TruncatedSeries.monomial(1, n, backend=b)
    psi = [b.zero] * (n + 1)
    for m in range(1, n + 1):
        trial = TruncatedSeries(psi[: m + 1], b)
        r = bi_eval_compose(F, h.truncate(m), trial)[m]
        psi[m] = -r / fb
    psi[0] = F.anchor[1]
    return TruncatedSeries(psi, b)


def phi_involution_check(phi_a: TruncatedSeries, anchor_a, phi_b: TruncatedSeries, anchor_b, order: int) -> TruncatedSeries:
    """``phi_b(phi_a(a* + h)) - (a* + h)``; zero when both come from one symmetric F."""
    bk = phi_a.backend
    anchor_a, anchor_b = bk.coerce(anchor_a), bk.coerce(anchor_b)
    if not bk.is_zero(phi_a[0] - anchor_b):
        raise AnchorMismatch(
            f"phi_b is anchored at {bk.fmt(anchor_b)} but phi_a starts at {bk.fmt(phi_a[0])}"
        )
    n = min(order, phi_a.order, phi_b.order)
    inner = phi_a.truncate(n) - anchor_b
    return compose(phi_b.truncate(n), inner) - _shift(anchor_a, n, bk).truncate(n)


@dataclass
class ConditionReport:
    condition_iii: bool
    C: object
    ratio: object
    paper_resonances: list[int] = field(default_factory=list)
    runtime_resonances: list[int] = field(default_factory=list)
    backend: object = RATIONAL

    def to_json(self) -> dict:
        fmt = self.backend.fmt
        return {
            "condition_iii": self.condition_iii,
            "paper_resonances": list(self.paper_resonances),
            "runtime_resonances": list(self.runtime_resonances),
            "C": fmt(self.C),
            "ratio": None if self.ratio is None else fmt(self.ratio),
        }


def condition_check(phi_P: TruncatedSeries, phi_Q: TruncatedSeries, x0, order: int) -> ConditionReport:
    """Resonance diagnostics for the normalized problem with vertex ``(x0, 0)``.

    ``C = (phi_Q0 / phi_P0) (x0 - 1) / (x0 + 1)`` and ``ratio = phi_Q1 / phi_P1``.
    The ``paper_resonances`` list holds ``n`` in ``1..order`` with ``ratio**n == C``;
    the runtime list holds ``k`` in ``2..order`` with ``C**k == ratio``, which
    is where the solver's x-pivot vanishes.
    """
    b = phi_P.backend
    x0 = b.coerce(x0)
    C = (phi_Q[0] / phi_P[0]) * (x0 - 1) / (x0 + 1)
    if b.is_zero(phi_P[1]) or b.is_zero(phi_Q[1]):
        ratio = None if b.is_zero(phi_P[1]) else phi_Q[1] / phi_P[1]
        return ConditionReport(False, C, ratio, backend=b)
    ratio = phi_Q[1] / phi_P[1]
    classic, runtime = [], []
    rn, cn = b.one, C
    for n in range(1, order + 1):
        rn = rn * ratio
        if b.is_zero(rn - C):
            classic.append(n)
        if n >= 2:
            cn = cn * C
            if b.is_zero(cn - ratio):
                runtime.append(n)
    return ConditionReport(True, C, ratio, classic, runtime, backend=b)


def require_condition_iii(phi: PhiPair):
    b = phi.backend
    for name, s in (("phi_P", phi.phi_P), ("phi_Q", phi.phi_Q)):
        if s.order < 1 or b.is_zero(s[1]):
            raise ZeroPhi1(f"{name} has vanishing first coefficient")
