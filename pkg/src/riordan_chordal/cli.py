"""Command line entry point.

Exit codes: 0 success, 2 unresolved resonance or degenerate order,
3 invalid input, 4 verification or continuity failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import documents, fchordal, oracles, riordan
from .documents import DocumentError
from .errors import ChordalError, NonRegularLeft, SolverStop, VertexMismatch, ZeroU1
from .gcheck import Failure, solve_join
from .report import sample_arcs, t_grid, to_csv, to_svg
from .series import TruncatedSeries, compose, get_backend

EXIT_OK, EXIT_RESONANCE, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3, 4

log = logging.getLogger("riordan_chordal")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _error(exc, code=None) -> dict:
    return {
        "error": {
            "code": code or getattr(exc, "code", type(exc).__name__),
            "message": str(exc),
            "location": getattr(exc, "location", None),
        }
    }


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}", path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from exc


def _parse_overrides(items) -> dict:
    out = {}
    for item in items or []:
        k, sep, v = item.partition("=")
        if not sep or not k.strip().isdigit():
            raise DocumentError(f"--override expects ORDER=VALUE, got {item!r}", "--override")
        out[int(k)] = v.strip()
    return out


def _parse_gauge(text):
    if text is None:
        return None
    try:
        g = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"--gauge is not JSON: {exc.msg}", "--gauge") from exc
    if not isinstance(g, list):
        raise DocumentError("--gauge must be a JSON list of numeric strings", "--gauge")
    return g


# -- solve ------------------------------------------------------------------

def solve_document(doc: dict, opts: dict | None = None) -> tuple[int, dict]:
    """Solve one problem document; returns ``(exit_code, payload)``."""
    opts = opts or {}
    try:
        pd = documents.parse_problem(doc, **opts)
        np = fchordal.normalize(pd.problem)
        p = pd.problem
        sol = fchordal.solve(np, p.mode, p.gauge, p.overrides, p.order, p.tangent)
    except SolverStop as exc:
        payload = _error(exc)
        payload["error"]["order"] = exc.order
        fmt = pd.problem.backend.fmt
        if exc.pivot is not None:
            payload["error"]["pivot"] = fmt(exc.pivot)
        if exc.residual is not None and not isinstance(exc.residual, tuple):
            payload["error"]["residual"] = fmt(exc.residual)
        partial = getattr(exc, "partial", None)
        if partial is not None:
            payload.update(documents.solution_document(partial, np, pd.backend_name, pd.precision))
        return EXIT_RESONANCE, payload
    except (DocumentError, ChordalError, ValueError) as exc:
        return EXIT_INVALID, _error(exc, getattr(exc, "code", "invalid_input"))
    payload = documents.solution_document(sol, np, pd.backend_name, pd.precision)
    code = EXIT_OK if sol.verified_order == sol.order else EXIT_VERIFY
    return code, payload


def cmd_solve(args) -> int:
    try:
        opts = {
            "order": args.order,
            "mode": args.mode,
            "backend": args.backend,
            "precision": args.precision,
            "gauge": _parse_gauge(args.gauge),
            "overrides": _parse_overrides(args.override),
        }
    except DocumentError as exc:
        _emit(_dump(_error(exc)), None)
        return EXIT_INVALID
    opts = {k: v for k, v in opts.items() if v not in (None, {})}
    if args.batch:
        return _solve_batch(Path(args.batch), args.output, opts, args.jobs)
    if not args.problem:
        _emit(_dump(_error(DocumentError("a problem file or --batch is required", "argv"))), None)
        return EXIT_INVALID
    try:
        doc = _load_json(args.problem)
    except DocumentError as exc:
        _emit(_dump(_error(exc)), args.output)
        return EXIT_INVALID
    code, payload = solve_document(doc, opts)
    if args.format != "json" and code in (EXIT_OK, EXIT_VERIFY):
        sdoc = documents.parse_solution(payload)
        b = sdoc.backend
        ts = t_grid(b.parse("-1/10"), b.parse("1/10"), 21, b)
        arcs = sample_arcs(sdoc.solution, sdoc.normalized, ts)
        _emit(to_svg(arcs) if args.format == "svg" else to_csv(arcs), args.output)
        return code
    _emit(_dump(payload), args.output)
    return code


def _solve_batch(folder: Path, output, opts, jobs) -> int:
    files = sorted(p for p in folder.glob("*.json") if not p.name.endswith(".solution.json"))
    out_dir = Path(output) if output else folder
    out_dir.mkdir(parents=True, exist_ok=True)

    def work(path: Path):
        try:
            doc = _load_json(str(path))
        except DocumentError as exc:
            code, payload = EXIT_INVALID, _error(exc)
        else:
            code, payload = solve_document(doc, opts)
        target = out_dir / f"{path.stem}.solution.json"
        target.write_text(_dump(payload), encoding="utf-8")
        return {"file": path.name, "exit": code, "output": str(target)}

    with ThreadPoolExecutor(max_workers=jobs or None) as pool:
        summary = list(pool.map(work, files))
    for row in summary:
        sys.stdout.write(json.dumps(row) + "\n")
    return max((row["exit"] for row in summary), default=EXIT_OK)


# -- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        sdoc = documents.parse_solution(_load_json(args.solution))
        sol = sdoc.solution
        pdoc = _load_json(args.problem)
        pd = documents.parse_problem(
            pdoc, order=sol.order, backend=sdoc.backend.name,
            precision=sdoc.backend.precision,
        )
        np = fchordal.normalize(pd.problem)
    except (DocumentError, ChordalError, ValueError) as exc:
        _emit(_dump(_error(exc, getattr(exc, "code", "invalid_input"))), args.output)
        return EXIT_INVALID

    verified = fchordal.verify_residual(sol, np, sol.order)
    report = {"order": sol.order, "verified_order": verified, "ok": verified == sol.order}
    if args.oracle:
        try:
            report["oracle"] = _oracle_report(args.oracle, sol, np)
        except ChordalError as exc:
            _emit(_dump(_error(exc)), args.output)
            return EXIT_INVALID
        report["ok"] = report["ok"] and report["oracle"]["matches_through"] == sol.order
    _emit(_dump(report), args.output)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def _oracle_report(kind: str, sol, np) -> dict:
    b = np.backend
    N = sol.order
    if kind == "circle":
        ref = oracles.circle_through_vertices(np.x0, np.v2, N, b)
    else:
        if not b.is_zero(np.v2 + np.x0):
            raise ChordalError("ellipse oracle needs |V1 - Q| = |V2 - P|", location="oracle")
        ref = oracles.ellipse_series(np.x0, N, b)
    # the oracle is a graph x(y); compare along the solution's own y(t)
    expected = compose(ref, sol.y)
    diff = (sol.x - expected).first_nonzero()
    return {"kind": kind, "matches_through": N if diff is None else max(diff - 1, 0)}


# -- gc-check ----------------------------------------------------------------

def cmd_gc_check(args) -> int:
    try:
        join = documents.parse_join(_load_json(args.join))
    except (DocumentError, ValueError) as exc:
        _emit(_dump(_error(exc, getattr(exc, "code", "invalid_input"))), args.output)
        return EXIT_INVALID
    try:
        report = solve_join(join)
    except VertexMismatch as exc:
        failure = Failure(0, exc.coordinate, exc.residual, 0, join.backend).to_json()
        failure["verified_order"] = None
        _emit(_dump(failure), args.output)
        return EXIT_VERIFY
    except ZeroU1 as exc:
        _emit(_dump(_error(exc)), args.output)
        return EXIT_VERIFY
    except NonRegularLeft as exc:
        _emit(_dump(_error(exc)), args.output)
        return EXIT_INVALID
    _emit(_dump(report.to_json()), args.output)
    return EXIT_OK if report.ok else EXIT_VERIFY


# -- riordan -----------------------------------------------------------------

def cmd_riordan(args) -> int:
    b = get_backend(args.backend or "rational", args.precision)
    try:
        d = [documents._num(b, c.strip(), "--d") for c in args.d.split(",")]
        h = [documents._num(b, c.strip(), "--h") for c in args.h.split(",")]
        n = args.n if args.n is not None else min(len(d), len(h)) - 1
        R = riordan.build(TruncatedSeries(d, b), TruncatedSeries(h, b), n)
    except (DocumentError, ChordalError, ValueError) as exc:
        _emit(_dump(_error(exc, getattr(exc, "code", "invalid_input"))), args.output)
        return EXIT_INVALID
    rows = [[b.fmt(c) for c in row] for row in R.rows]
    if args.format == "json":
        _emit(_dump({"n": R.n, "ordinary": R.ordinary, "rows": rows}), args.output)
    else:
        width = max(len(c) for row in rows for c in row)
        _emit("".join(" ".join(c.rjust(width) for c in row) + "\n" for row in rows), args.output)
    return EXIT_OK


# -- sample ------------------------------------------------------------------

def cmd_sample(args) -> int:
    try:
        sdoc = documents.parse_solution(_load_json(args.solution))
        b = sdoc.backend
        ts = t_grid(b.parse(args.t_min), b.parse(args.t_max), args.samples, b)
        arcs = sample_arcs(sdoc.solution, sdoc.normalized, ts)
    except (DocumentError, ChordalError, ValueError) as exc:
        _emit(_dump(_error(exc, getattr(exc, "code", "invalid_input"))), args.output)
        return EXIT_INVALID
    _emit(to_svg(arcs) if args.format == "svg" else to_csv(arcs), args.output)
    if args.figure:
        from .plotting import plot_local_solution

        plot_local_solution(arcs, sdoc.solution, args.figure)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riordan-chordal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def backend_flags(p):
        p.add_argument("--backend", choices=["rational", "float"])
        p.add_argument("--precision", type=int, help="float backend bits (>= 128)")

    p = sub.add_parser("solve", help="order-by-order local solution of a problem document")
    p.add_argument("problem", nargs="?", help="problem JSON ('-' for stdin)")
    p.add_argument("--batch", metavar="DIR", help="solve every *.json in DIR concurrently")
    p.add_argument("--jobs", type=int, help="worker threads for --batch")
    p.add_argument("--order", type=int)
    p.add_argument("--mode", choices=list(fchordal.MODES))
    backend_flags(p)
    p.add_argument("--gauge", help='JSON list, e.g. \'["2"]\' for y = 2t')
    p.add_argument("--override", action="append", metavar="K=VALUE")
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv", "svg"], default="json",
                   help="csv/svg sample the solved arcs on t in [-1/10, 1/10]")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="recheck a solution against its problem")
    p.add_argument("solution", help="solution JSON ('-' for stdin)")
    p.add_argument("problem")
    p.add_argument("--oracle", choices=["circle", "ellipse"])
    p.add_argument("--output")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gc-check", help="geometric continuity of a join")
    p.add_argument("join", help="join JSON ('-' for stdin)")
    p.add_argument("--output")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_gc_check)

    p = sub.add_parser("riordan", help="print a partial Riordan matrix")
    p.add_argument("--d", required=True, help="comma separated coefficients of d")
    p.add_argument("--h", required=True, help="comma separated coefficients of h (h_0 = 0)")
    p.add_argument("--n", type=int)
    backend_flags(p)
    p.add_argument("--output")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_riordan)

    p = sub.add_parser("sample", help="CSV or SVG samples of a solution's local arcs")
    p.add_argument("solution")
    p.add_argument("--t-min", default="-1/10")
    p.add_argument("--t-max", default="1/10")
    p.add_argument("--samples", type=int, default=21)
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--figure", help="also render a matplotlib figure (png/pdf/svg by extension)")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
