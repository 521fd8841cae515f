"""JSON documents read and written by the command line.

Parsing is strict: unknown keys are rejected and every coefficient must be a
string (``"p/q"`` or a decimal), so nothing is silently coerced.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fchordal, implicit
from .fchordal import FChordalProblem, LocalSolution, NormalizedProblem
from .gcheck import JoinData
from .implicit import ChordFunction
from .series import RATIONAL, BivariateTaylor, TruncatedSeries, get_backend


class DocumentError(ValueError):
    code = "invalid_document"

    def __init__(self, message: str, location: str = "$"):
        super().__init__(message)
        self.location = location


def _keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", where)
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(unknown)}", where)
    missing = [k for k in required if k not in obj]
    if missing:
        raise DocumentError(f"missing field(s): {', '.join(missing)}", where)


def _num(backend, value, where):
    if not isinstance(value, str):
        raise DocumentError(f"numeric values must be strings, got {value!r}", where)
    try:
        return backend.parse(value)
    except ValueError as exc:
        raise DocumentError(str(exc), where) from exc


def _nums(backend, values, where):
    if not isinstance(values, list) or not values:
        raise DocumentError("expected a non-empty list of numeric strings", where)
    return [_num(backend, v, f"{where}[{i}]") for i, v in enumerate(values)]


def _int(value, where, lo=None, hi=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"expected an integer, got {value!r}", where)
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        raise DocumentError(f"integer {value} outside {lo}..{hi}", where)
    return value


PROBLEM_KEYS = ("points", "chord_function", "order", "mode", "gauge", "overrides", "backend", "precision", "tangent")
CHORD_KEYS = ("kind", "alpha", "phi_P", "phi_Q", "F_P", "F_Q")


@dataclass
class ProblemDocument:
    problem: FChordalProblem
    backend_name: str
    precision: int | None


def backend_from(doc_backend, doc_precision, cli_backend=None, cli_precision=None):
    name = cli_backend or doc_backend or "rational"
    if name not in ("rational", "float"):
        raise DocumentError(f"unknown backend {name!r}", "$.backend")
    precision = cli_precision or doc_precision
    if name == "float":
        try:
            return get_backend("float", precision or 256), name, precision or 256
        except ValueError as exc:
            raise DocumentError(str(exc), "$.precision") from exc
    return get_backend("rational"), name, None


def parse_problem(doc: dict, *, order=None, mode=None, backend=None, precision=None, gauge=None,
                  overrides=None) -> ProblemDocument:
    """Build an :class:`FChordalProblem`; keyword arguments override document fields."""
    _keys(doc, PROBLEM_KEYS, ("points", "chord_function"), "$")
    prec = doc.get("precision")
    if prec is not None:
        _int(prec, "$.precision", 1)
    b, bname, prec = backend_from(doc.get("backend"), prec, backend, precision)

    pts = doc["points"]
    _keys(pts, ("V1", "P", "Q", "V2"), ("V1", "P", "Q", "V2"), "$.points")
    points = {}
    for name in ("V1", "P", "Q", "V2"):
        where = f"$.points.{name}"
        xy = _nums(b, pts[name], where)
        if len(xy) != 2:
            raise DocumentError("a point has two coordinates", where)
        points[name] = tuple(xy)

    N = order if order is not None else doc.get("order", fchordal.DEFAULT_ORDER)
    _int(N, "$.order", 1, fchordal.MAX_ORDER)
    chord = parse_chord(doc["chord_function"], b, N)

    m = mode or doc.get("mode", fchordal.PERPENDICULAR)
    if m not in fchordal.MODES:
        raise DocumentError(f"unknown mode {m!r}", "$.mode")

    g = gauge if gauge is not None else doc.get("gauge", [])
    g = _nums(b, g, "$.gauge") if g else []

    ov = {}
    raw = doc.get("overrides", {})
    if not isinstance(raw, dict):
        raise DocumentError("overrides must map order strings to numeric strings", "$.overrides")
    for k, v in raw.items():
        if not k.isdigit():
            raise DocumentError(f"override key {k!r} is not an order", "$.overrides")
        ov[int(k)] = _num(b, v, f"$.overrides.{k}")
    for k, v in (overrides or {}).items():
        ov[int(k)] = _num(b, v, "--override")

    tangent = None
    if "tangent" in doc:
        tangent = tuple(_nums(b, doc["tangent"], "$.tangent"))
        if len(tangent) != 2:
            raise DocumentError("tangent is [x1, y1]", "$.tangent")

    try:
        problem = FChordalProblem(points["V1"], points["P"], points["Q"], points["V2"], chord, N, m,
                                  tuple(g), tangent, ov, b)
    except ValueError as exc:
        raise DocumentError(str(exc), "$") from exc
    return ProblemDocument(problem, bname, prec)


def parse_chord(obj, b, order) -> ChordFunction:
    where = "$.chord_function"
    _keys(obj, CHORD_KEYS, ("kind",), where)
    kind = obj["kind"]
    if kind not in implicit.KINDS:
        raise DocumentError(f"unknown kind {kind!r}", f"{where}.kind")
    kw = {}
    if "alpha" in obj:
        kw["alpha"] = _num(b, obj["alpha"], f"{where}.alpha")
    for name in ("phi_P", "phi_Q"):
        if name in obj:
            kw[name] = TruncatedSeries(_nums(b, obj[name], f"{where}.{name}"), b)
    for name in ("F_P", "F_Q"):
        if name in obj:
            kw[name] = parse_bivariate(obj[name], b, f"{where}.{name}")
    try:
        return ChordFunction(kind, **kw)
    except ValueError as exc:
        raise DocumentError(str(exc), where) from exc


def parse_bivariate(obj, b, where) -> BivariateTaylor:
    _keys(obj, ("anchor", "coeffs"), ("anchor", "coeffs"), where)
    anchor = _nums(b, obj["anchor"], f"{where}.anchor")
    if len(anchor) != 2:
        raise DocumentError("anchor is [a, b]", f"{where}.anchor")
    rows = obj["coeffs"]
    if not isinstance(rows, list) or not rows:
        raise DocumentError("coeffs is a list of rows c[i][j]", f"{where}.coeffs")
    parsed = [_nums(b, r, f"{where}.coeffs[{i}]") for i, r in enumerate(rows)]
    try:
        return BivariateTaylor.from_rows(anchor, parsed, b)
    except ValueError as exc:
        raise DocumentError(str(exc), where) from exc


def solution_document(sol: LocalSolution, np: NormalizedProblem, backend_name: str, precision) -> dict:
    fmt = np.backend.fmt
    doc = sol.to_json()
    doc["backend"] = backend_name
    if precision:
        doc["precision"] = precision
    doc["normalized"] = {
        "x0": fmt(np.x0),
        "v2": fmt(np.v2),
        "phi_P": [fmt(c) for c in np.phi.phi_P],
        "phi_Q": [fmt(c) for c in np.phi.phi_Q],
        "transform": np.transform.to_json(),
    }
    if np.warnings:
        doc["warnings"] = list(np.warnings)
    return doc


SOLUTION_KEYS = (
    "mode", "order", "x", "y", "u", "pivots", "paper_resonances", "runtime_resonances", "conditions",
    "degenerate_orders", "overrides_consumed", "pivot_identities", "verified_order", "backend", "precision",
    "normalized", "warnings",
)


@dataclass
class SolutionDocument:
    solution: LocalSolution
    backend: object
    normalized: dict


def parse_solution(doc: dict) -> SolutionDocument:
    _keys(doc, SOLUTION_KEYS, ("x", "y", "u", "backend"), "$")
    prec = doc.get("precision")
    if prec is not None:
        _int(prec, "$.precision", 1)
    b, _, _ = backend_from(doc["backend"], prec)
    x, y, u = (TruncatedSeries(_nums(b, doc[k], f"$.{k}"), b) for k in ("x", "y", "u"))
    if not (x.order == y.order == u.order):
        raise DocumentError("x, y, u must have equal length", "$")
    sol = LocalSolution(x, y, u, doc.get("mode", fchordal.PERPENDICULAR))
    return SolutionDocument(sol, b, doc.get("normalized") or {})


def parse_join(doc: dict, backend=None) -> JoinData:
    b = backend or RATIONAL
    _keys(doc, ("order", "left", "right"), ("left", "right"), "$")
    sides = {}
    for side in ("left", "right"):
        _keys(doc[side], ("x", "y"), ("x", "y"), f"$.{side}")
        sides[side] = [_nums(b, doc[side][c], f"$.{side}.{c}") for c in ("x", "y")]
    available = min(len(s) for pair in sides.values() for s in pair) - 1
    order = doc.get("order", available)
    _int(order, "$.order", 0)
    if order > available:
        raise DocumentError(f"order {order} needs {order + 1} coefficients per coordinate", "$.order")
    return JoinData.from_lists(*sides["left"], *sides["right"], order=order, backend=b)
