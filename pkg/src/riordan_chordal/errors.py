"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` that the command line
layer copies into its ``{"error": {...}}`` payload.
"""

from __future__ import annotations


class ChordalError(Exception):
    code = "error"

    def __init__(self, message: str = "", *, location: str | None = None):
        super().__init__(message or self.code)
        self.location = location


# series

class BackendMismatch(ChordalError):
    code = "backend_mismatch"


class NonZeroConstant(ChordalError):
    code = "non_zero_constant"


class ZeroConstantTerm(ChordalError):
    code = "zero_constant_term"


class NonPositiveConstant(ChordalError):
    code = "non_positive_constant"


class IrrationalRoot(ChordalError):
    code = "irrational_root"


# riordan

class NonZeroH0(ChordalError):
    code = "non_zero_h0"


class SizeMismatch(ChordalError):
    code = "size_mismatch"


# implicit

class DomainViolation(ChordalError):
    code = "domain_violation"


class DegenerateFb(ChordalError):
    code = "degenerate_fb"


class ZeroPhi1(ChordalError):
    code = "zero_phi1"


class AnchorMismatch(ChordalError):
    code = "anchor_mismatch"


# gcheck

class NonRegularLeft(ChordalError):
    code = "non_regular_left"


class VertexMismatch(ChordalError):
    code = "vertex_mismatch"

    def __init__(self, message: str = "", *, coordinate: str = "x", residual=None):
        super().__init__(message, location="order 0")
        self.coordinate = coordinate
        self.residual = residual


class ZeroU1(ChordalError):
    code = "zero_u1"


# fchordal

class NonCollinear(ChordalError):
    code = "non_collinear"


class BadOrdering(ChordalError):
    code = "bad_ordering"


class Order0Inconsistent(ChordalError):
    code = "order0_inconsistent"


class NoObliqueTangent(ChordalError):
    code = "no_oblique_tangent"


class SolverStop(ChordalError):
    """The order-by-order solve stopped at a zero pivot."""

    def __init__(self, message: str = "", *, order: int, pivot=None, residual=None):
        super().__init__(message, location=f"order {order}")
        self.order = order
        self.pivot = pivot
        self.residual = residual


class Inconsistent(SolverStop):
    code = "inconsistent"


class DegenerateOrder(SolverStop):
    code = "degenerate_order"


# oracles

class OracleDomainError(ChordalError):
    code = "oracle_domain"
