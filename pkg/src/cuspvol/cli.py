"""Command-line entry point: ``cuspvol <command> ...``."""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import Any, Sequence

from . import caser
from .coxeter import (
    CoxeterSymbolError,
    Verdict,
    arithmeticity,
    as_graph,
    classify_vertices,
    count_cusps,
    gram_matrix,
    inertia,
    print_coxeter_symbol,
)
from .horoball import CuspType, Placement
from .lobachevsky import DEFAULT_TOL, lob
from .render import MAX_DEPTH, RenderSpec, render_svg
from .volume import Orthoscheme, vol_named, vol_orthoscheme

EXIT_OK = 0
EXIT_CERT = 1
EXIT_USAGE = 2

_ANGLE = re.compile(
    r"^\s*(?P<sign>[-+]?)\s*(?:(?P<m>\d+)\s*\*\s*)?(?:pi|π)\s*(?:/\s*(?P<n>\d+))?\s*$"
)


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """``pi``, ``pi/N``, ``M*pi/N`` or a decimal."""
    m = _ANGLE.match(text)
    if m:
        num = int(m.group("m") or 1)
        den = int(m.group("n") or 1)
        if den == 0:
            raise UsageError(f"division by zero in angle {text!r}")
        val = num * math.pi / den
        return -val if m.group("sign") == "-" else val
    try:
        val = float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(val):
        raise UsageError(f"angle must be finite: {text!r}")
    return val


def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    out = json.dumps(payload, ensure_ascii=False, indent=2) + "\n" if args.json else text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------- commands


def cmd_lob(args: argparse.Namespace) -> int:
    x = parse_angle(args.x)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    res = lob(x, tol)
    payload = {"x": x, "value": res.value, "terms_used": res.terms_used, "est_error": res.est_error}
    _emit(args, payload, f"{res.value:.12f}\n")
    return EXIT_OK


def cmd_volume(args: argparse.Namespace) -> int:
    if args.ortho:
        a, b = (parse_angle(t) for t in args.ortho)
        try:
            R = Orthoscheme(a, b, truncated=True if args.truncated else None)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        v = vol_orthoscheme(R)
        payload = {"alpha": a, "beta": b, "truncated": R.truncated, "volume": v}
        kind = "R_t" if R.truncated else "R"
        _emit(args, payload, f"{kind}({args.ortho[0]}, {args.ortho[1]})  {v:.6f}\n")
        return EXIT_OK
    if not args.symbol:
        raise UsageError("volume needs a symbol or --ortho a b")
    try:
        entry = vol_named(args.symbol)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    payload = entry.to_json() | {"volume": entry.volume, "kind": entry.kind}
    _emit(args, payload, f"{entry.symbol}  {entry.closed_form}  {entry.volume:.6f}\n")
    return EXIT_OK


def _graph(symbol: str):
    try:
        return as_graph(symbol)
    except CoxeterSymbolError as exc:
        raise UsageError(str(exc)) from None


def cmd_gram(args: argparse.Namespace) -> int:
    g = _graph(args.symbol)
    G = gram_matrix(g)
    sig = inertia(G)
    rows = [[float(x) for x in row] for row in G.entries]
    payload = {"symbol": print_coxeter_symbol(g), "gram": rows, "inertia": list(sig)}
    text = "\n".join(" ".join(f"{x: .6f}" for x in row) for row in rows)
    _emit(args, payload, f"{text}\ninertia (pos, zero, neg) = {sig}\n")
    return EXIT_OK


def cmd_cusps(args: argparse.Namespace) -> int:
    g = _graph(args.symbol)
    try:
        kinds = classify_vertices(gram_matrix(g))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = count_cusps(g)
    payload = {"symbol": print_coxeter_symbol(g), "cusps": n, "vertices": [k.value for k in kinds]}
    _emit(args, payload, f"{n}\n")
    return EXIT_OK


def cmd_arithmetic(args: argparse.Namespace) -> int:
    g = _graph(args.symbol)
    try:
        res = arithmeticity(g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "symbol": print_coxeter_symbol(g),
        "verdict": res.verdict.value,
        "reason": res.reason,
        "offending_weights": [str(w) for w in res.offending_weights],
        "offending_cycle": None
        if res.offending_cycle is None
        else {"nodes": list(res.offending_cycle[0]), "product": str(res.offending_cycle[1])},
    }
    text = res.verdict.value
    if res.verdict is Verdict.NON_ARITHMETIC:
        text += f" ({res.reason})"
    _emit(args, payload, text + "\n")
    return EXIT_OK


def _scenario(sid: str) -> caser.Scenario:
    for s in caser.scenario_registry():
        if s.id == sid:
            return s
    raise UsageError(f"unknown scenario {sid!r}")


def cmd_scenario(args: argparse.Namespace) -> int:
    if args.list or not args.id:
        ids = [s.id for s in caser.scenario_registry()]
        _emit(args, {"scenarios": ids}, "\n".join(ids) + "\n")
        return EXIT_OK
    sol = caser.solve_scenario(_scenario(args.id))
    payload = sol.to_json()
    text = "\n".join(f"{k}: {v}" for k, v in payload.items()) + "\n"
    _emit(args, payload, text)
    return EXIT_OK


def _fmt(x: float | None) -> str:
    return "-" if x is None else f"{x:.6f}"


def cmd_certify(args: argparse.Namespace) -> int:
    if args.only is not None:
        try:
            CuspType.parse(args.only)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    report = caser.run_case_analysis(only=args.only)
    idents = caser.verify_appendix_identities()
    payload = report.to_json() | {"identities": [i.to_json() for i in idents]}
    lines = [f"{'row':>3}  {'id':<40} {'d':>9} {'vol(C)':>9} {'value':>9} {'margin':>9}  verdict"]
    for r in report.rows:
        verdict = r.verdict.value + (f"({r.realized_by})" if r.realized_by else "")
        lines.append(
            f"{r.row:>3}  {r.id:<40} {_fmt(r.d):>9} {_fmt(r.cusp_volume):>9} "
            f"{_fmt(r.compared_value):>9} {_fmt(r.margin):>9}  {verdict}"
        )
    lines.append(f"minimum {_fmt(report.minimum)} at {report.argmin}")
    for i in idents:
        lines.append(f"identity {i.name}: lhs {i.lhs:.6f} rhs {i.rhs:.6f} residual {i.residual:.3e}")
    for f in report.failures:
        lines.append(f"FAIL {f}")
    lines.append("certified" if report.ok else "certification failed")
    _emit(args, payload, "\n".join(lines) + "\n")
    if not report.ok:
        print("failing rows: " + ", ".join(f.split(":")[0] for f in report.failures), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CERT


def cmd_render(args: argparse.Namespace) -> int:
    if args.id:
        s = _scenario(args.id)
        sol = caser.solve_scenario(s)
        if sol.d is None or s.classes != 1:
            raise UsageError(f"scenario {args.id!r} has no single-class diagram")
        ct = CuspType.parse(s.cusp_type)
        w = None
        if s.tangency_pattern == "1W_COINCIDE_AT_A3":
            w = math.sqrt(3) / sol.d
        elif s.tangency_pattern == "1W_COINCIDE_AT_A4":
            w = math.sqrt(2) / sol.d
        depth = args.depth
        m = re.match(r"ALIGNED_CHEBYSHEV\((\d+),", s.tangency_pattern)
        if depth is None:
            depth = min(int(m.group(1)), MAX_DEPTH) if m else 1
        spec = RenderSpec(ct, sol.d, s.placement, depth=depth, theta=sol.theta or 0.0, w=w, title=s.id)
    else:
        if args.cusp_type is None or args.d is None:
            raise UsageError("render needs a scenario id or --cusp-type and --d")
        try:
            spec = RenderSpec(
                CuspType.parse(args.cusp_type), args.d, Placement(args.placement),
                depth=1 if args.depth is None else args.depth,
                theta=parse_angle(args.theta),
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    svg = render_svg(spec)
    if args.json:
        payload = {"title": spec.title, "width": spec.width, "height": spec.height, "svg": svg}
        _emit(args, payload, svg)
    else:
        _emit(args, None, svg)
    return EXIT_OK


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse already exits with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", help="write output to a file")
    p = _Parser(prog="cuspvol", description="Cusped hyperbolic orbifold volumes and the case analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lob", parents=[common], help="Lobachevsky function")
    s.add_argument("x", help="angle: pi, pi/N, M*pi/N or decimal")
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_lob)

    s = sub.add_parser("volume", parents=[common], help="catalog or orthoscheme volume")
    s.add_argument("symbol", nargs="?")
    s.add_argument("--ortho", nargs=2, metavar=("ALPHA", "BETA"))
    s.add_argument("--truncated", action="store_true")
    s.set_defaults(func=cmd_volume)

    for name, func, hlp in [
        ("gram", cmd_gram, "Gram matrix and inertia"),
        ("cusps", cmd_cusps, "number of ideal vertices"),
        ("arithmetic", cmd_arithmetic, "arithmeticity test"),
    ]:
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("symbol")
        s.set_defaults(func=func)

    s = sub.add_parser("scenario", parents=[common], help="solve one registry row")
    s.add_argument("id", nargs="?")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_scenario)

    s = sub.add_parser("certify", parents=[common], help="run the full case analysis")
    s.add_argument("--only", help="restrict to one cusp type, e.g. 2,4,4")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("render", parents=[common], help="SVG horoball diagram")
    s.add_argument("id", nargs="?")
    s.add_argument("--cusp-type")
    s.add_argument("--d", type=float)
    s.add_argument("--placement", default="a6")
    s.add_argument("--depth", type=int)
    s.add_argument("--theta", default="0")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cuspvol {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
