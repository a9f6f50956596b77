"""Command-line front end.

Subcommands: elevate, dual-basis, convergence, plot, operator.  Output is
deterministic: floats are printed with 17 significant digits, matrices as
exact rational strings, SVG plots are self-contained (fixed 800x600 viewBox,
no external assets) and always come with a CSV sidecar holding the sampled
values.  Exit codes: 0 success, 2 usage/precondition error, 3 singular
selection (reported as structured JSON).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from .bernstein import Interval, de_casteljau_eval, BPoly, elevation_matrix, xi_nodes
from .operators import (
    bernstein_like_report,
    quasi_interpolant_report,
)
from .ratmat import Mat, SingularMatrixError, mat_to_json_obj
from .subspace import (
    SelectionError,
    SelectionMap,
    bernstein_embedding,
    dual_basis,
    dual_basis_eval,
    make_selection,
    power_embedding,
    verify_duality,
)
from .symmetric import SymmetricConfig, convergence_csv, convergence_table, symmetric_dual_matrix

DEFAULT_GRID = 201
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
SVG_VERSION_COMMENT = "<!-- dualbern svg v1 -->"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# deterministic serialization


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _json_text(obj, indent: int = 0) -> str:
    """Tiny JSON writer so floats always carry 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_json_text(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_json_text(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# built-in function registry with analytic derivative bounds


def _has_point(a: float, b: float, offset: float, period: float) -> bool:
    """Is offset + q*period inside [a, b] for some integer q?"""
    return math.ceil((a - offset) / period) * period + offset <= b


def _sup_abs_sin(a: float, b: float) -> float:
    if _has_point(a, b, math.pi / 2, math.pi):
        return 1.0
    return max(abs(math.sin(a)), abs(math.sin(b)))


def _sup_abs_cos(a: float, b: float) -> float:
    if _has_point(a, b, 0.0, math.pi):
        return 1.0
    return max(abs(math.cos(a)), abs(math.cos(b)))


@dataclass(frozen=True)
class RegistryFn:
    name: str
    fn: Callable
    d1: Callable  # (a, b) -> sup|f'|
    d2: Optional[Callable]  # (a, b) -> sup|f''|, None when unbounded


FN_REGISTRY = {
    "sin": RegistryFn("sin", lambda t: math.sin(t), _sup_abs_cos, _sup_abs_sin),
    "exp": RegistryFn(
        "exp", lambda t: math.exp(t), lambda a, b: math.exp(b), lambda a, b: math.exp(b)
    ),
    "sq": RegistryFn(
        "sq", lambda t: t * t, lambda a, b: 2.0 * max(abs(a), abs(b)), lambda a, b: 2.0
    ),
    # |t - 1/2|^(3/2): C1 but not C2 when 1/2 is inside the interval
    "abs32": RegistryFn(
        "abs32",
        lambda t: abs(t - 0.5) ** 1.5,
        lambda a, b: 1.5 * max(abs(a - 0.5), abs(b - 0.5)) ** 0.5,
        None,
    ),
}


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit-code handling in run()
        raise UsageError(message)


def _number(text: str):
    """Parse a CLI number, preserving exactness for integer input."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}")


def _build_parser() -> _Parser:
    p = _Parser(prog="dualbern", description="Dual bases in Bernstein form")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, interval=True, grid=True, fmt=None, out=True):
        if interval:
            sp.add_argument("--a", default="0", help="interval left endpoint (default 0)")
            sp.add_argument("--b", default="1", help="interval right endpoint (default 1)")
        if grid:
            sp.add_argument("--grid", type=int, default=None, help="sample grid size")
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])
        if out:
            sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("elevate", help="degree elevation matrix (B^m = B^n E)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    common(sp, interval=False, grid=False, fmt=["json", "csv"])

    sp = sub.add_parser("dual-basis", help="dual-basis matrix A = E(s,:)^{-1} for a selection")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--selection", default=None, help="comma-separated indices, e.g. 0,2,4")
    sp.add_argument("--symmetric", action="store_true", help="use s(i) = i*k with n = m*k")
    sp.add_argument("--basis", choices=["bernstein", "power"], default="bernstein")
    common(sp, grid=False, fmt=["json"])

    sp = sub.add_parser("convergence", help="distance to the Lagrange basis for k = 1..kmax")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True, help="largest refinement k")
    common(sp, interval=False, fmt=["csv", "json"])

    sp = sub.add_parser("plot", help="SVG plot (with CSV sidecar) of basis curves or a control polygon")
    sp.add_argument("--kind", choices=["basis", "polygon"], required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--selection", default=None)
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--coeffs", default=None, help="comma-separated control ordinates (polygon)")
    common(sp, fmt=None)

    sp = sub.add_parser("operator", help="quasi-interpolant / Bernstein-like operator report")
    sp.add_argument("--which", choices=["quasi", "bernop"], required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--selection", default=None)
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--fn", required=True, help="|".join(FN_REGISTRY))
    sp.add_argument("--smoothness", choices=["c0", "c1", "c2"], default="c0")
    common(sp, fmt=["json"])
    return p


def _grid_size(args) -> int:
    if getattr(args, "grid", None) is not None:
        if args.grid < 2:
            raise UsageError("--grid must be >= 2")
        return args.grid
    env = os.environ.get("DUALBERN_GRID")
    if env is not None:
        try:
            val = int(env)
        except ValueError:
            raise UsageError(f"DUALBERN_GRID must be an integer, got {env!r}")
        if val < 2:
            raise UsageError("DUALBERN_GRID must be >= 2")
        return val
    return DEFAULT_GRID


def _interval(args) -> Interval:
    a, b = _number(args.a), _number(args.b)
    if not a < b:
        raise UsageError(f"need a < b, got a={args.a} b={args.b}")
    return Interval(a, b)


def _resolve_selection(args) -> tuple[int, SelectionMap]:
    """Shared --symmetric/--selection handling; returns (n, selection)."""
    m = args.m
    if m < 1:
        raise UsageError("--m must be >= 1")
    if args.symmetric and args.selection:
        raise UsageError("--symmetric and --selection are mutually exclusive")
    if args.symmetric:
        if args.k is None or args.k < 1:
            raise UsageError("--symmetric needs --k >= 1")
        cfg = SymmetricConfig(m, args.k)
        if args.n is not None and args.n != cfg.n:
            raise UsageError(f"--symmetric implies n = m*k = {cfg.n}, got --n {args.n}")
        return cfg.n, cfg.selection()
    if args.selection is None:
        raise UsageError("need --selection i0,i1,... or --symmetric --k K")
    if args.n is None:
        raise UsageError("--selection needs --n")
    try:
        indices = tuple(int(x) for x in args.selection.split(","))
    except ValueError:
        raise UsageError(f"bad --selection {args.selection!r}")
    return args.n, make_selection(m, args.n, indices)


# ---------------------------------------------------------------------------
# commands


def _cmd_elevate(args) -> int:
    if args.m < 0 or args.n < 0:
        raise UsageError("degrees must be nonnegative")
    E = elevation_matrix(args.m, args.n)  # raises ValueError when m > n
    if args.format == "json":
        _emit(_json_text(mat_to_json_obj(E)) + "\n", args.out)
    else:
        lines = [",".join(str(E[i, j]) for j in range(E.cols)) for i in range(E.rows)]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_dual_basis(args) -> int:
    n, sel = _resolve_selection(args)
    iv = _interval(args)
    emb = bernstein_embedding(args.m, n) if args.basis == "bernstein" else power_embedding(args.m, n)
    db = dual_basis(emb, sel, iv)
    payload = {
        "A": mat_to_json_obj(db.A),
        "s": list(sel.indices),
        "dual_check": verify_duality(db),
    }
    _emit(_json_text(payload) + "\n", args.out)
    return 0


def _cmd_convergence(args) -> int:
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    records = convergence_table(args.m, list(range(1, args.k + 1)), samples=_grid_size(args))
    if args.format == "csv":
        _emit(convergence_csv(records), args.out)
    else:
        _emit(
            _json_text(
                [
                    {"k": r.k, "sup_dist": r.sup_dist, "scaled_mat_dist": r.scaled_mat_dist}
                    for r in records
                ]
            )
            + "\n",
            args.out,
        )
    return 0


# -- SVG helpers -------------------------------------------------------------


def _svg_document(curves, points_groups, x_range, y_range) -> str:
    """Self-contained 800x600 SVG: framed plot area, polyline curves, and
    optional marker groups (list of (pts, dashed))."""
    width, height = 800, 600
    left, right, top, bottom = 60, 20, 20, 40
    x0, x1 = x_range
    y0, y1 = y_range
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return left + (x - x0) / (x1 - x0) * (width - left - right)

    def sy(y):
        return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom)

    def fmt(v):
        return format(v, ".3f")

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        SVG_VERSION_COMMENT,
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{width - left - right}" '
        f'height="{height - top - bottom}" fill="none" stroke="#333" stroke-width="1"/>',
    ]
    for label, val, anchor, xx, yy in (
        ("xmin", x0, "start", left, height - bottom + 16),
        ("xmax", x1, "end", width - right, height - bottom + 16),
        ("ymin", y0, "end", left - 6, height - bottom),
        ("ymax", y1, "end", left - 6, top + 10),
    ):
        parts.append(
            f'<text x="{xx}" y="{yy}" font-family="sans-serif" font-size="12" '
            f'text-anchor="{anchor}" fill="#333">{fmt(val)}</text>'
        )
    for idx, (pts, dashed) in enumerate(curves):
        coords = " ".join(f"{fmt(sx(x))},{fmt(sy(y))}" for x, y in pts)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        color = PALETTE[idx % len(PALETTE)]
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{coords}"/>'
        )
    for idx, (pts, dashed) in enumerate(points_groups):
        color = PALETTE[idx % len(PALETTE)]
        for x, y in pts:
            parts.append(
                f'<circle cx="{fmt(sx(x))}" cy="{fmt(sy(y))}" r="3.5" fill="{color}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _sidecar_path(out: str) -> str:
    root, ext = os.path.splitext(out)
    return (root if ext.lower() == ".svg" else out) + ".csv"


def _cmd_plot(args) -> int:
    if args.out is None:
        raise UsageError("plot needs --out (an SVG path; a CSV sidecar is written next to it)")
    n, sel = _resolve_selection(args)
    iv = _interval(args)
    samples = _grid_size(args)
    db = dual_basis(bernstein_embedding(args.m, n), sel, iv)
    a, w = float(iv.a), float(iv.width)
    ts = [a + w * q / (samples - 1) for q in range(samples)]

    if args.kind == "basis":
        values = [[dual_basis_eval(db, i, t) for i in range(args.m + 1)] for t in ts]
        curves = [
            ([(t, row[i]) for t, row in zip(ts, values)], False) for i in range(args.m + 1)
        ]
        ymin = min(min(row) for row in values)
        ymax = max(max(row) for row in values)
        svg = _svg_document(curves, [], (ts[0], ts[-1]), (ymin, ymax))
        header = "t," + ",".join(f"D{i}" for i in range(args.m + 1))
        rows = [
            ",".join([_fmt_float(t)] + [_fmt_float(v) for v in row])
            for t, row in zip(ts, values)
        ]
        sidecar = header + "\n" + "\n".join(rows) + "\n"
    else:
        if args.coeffs is None:
            raise UsageError("plot --kind polygon needs --coeffs c0,c1,...,cm")
        try:
            alpha = [float(x) for x in args.coeffs.split(",")]
        except ValueError:
            raise UsageError(f"bad --coeffs {args.coeffs!r}")
        if len(alpha) != args.m + 1:
            raise UsageError(f"--coeffs needs {args.m + 1} values for m={args.m}")
        transformed = [
            sum(float(db.A[r, i]) * alpha[i] for i in range(args.m + 1))
            for r in range(args.m + 1)
        ]
        xs = [a + w * i / args.m for i in range(args.m + 1)]
        curve_poly = BPoly(args.m, iv, tuple(transformed))
        curve_pts = [(t, de_casteljau_eval(curve_poly, t)) for t in ts]
        original = list(zip(xs, alpha))
        moved = list(zip(xs, transformed))
        ys = alpha + transformed + [y for _, y in curve_pts]
        svg = _svg_document(
            [(original, False), (moved, True), (curve_pts, False)],
            [(original, False), (moved, True)],
            (ts[0], ts[-1]),
            (min(ys), max(ys)),
        )
        lines = ["kind,x,y"]
        lines += [f"original,{_fmt_float(x)},{_fmt_float(y)}" for x, y in original]
        lines += [f"transformed,{_fmt_float(x)},{_fmt_float(y)}" for x, y in moved]
        lines += [f"curve,{_fmt_float(x)},{_fmt_float(y)}" for x, y in curve_pts]
        sidecar = "\n".join(lines) + "\n"

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    with open(_sidecar_path(args.out), "w", encoding="utf-8") as fh:
        fh.write(sidecar)
    return 0


def _cmd_operator(args) -> int:
    n, sel = _resolve_selection(args)
    iv = _interval(args)
    reg = FN_REGISTRY.get(args.fn)
    if reg is None:
        raise UsageError(f"unknown --fn {args.fn!r}; choose from {', '.join(FN_REGISTRY)}")
    samples = _grid_size(args)
    a, b = float(iv.a), float(iv.b)
    if args.which == "quasi":
        report = quasi_interpolant_report(args.m, n, sel, reg.fn, iv, samples=samples)
    else:
        d1 = d2 = None
        if args.smoothness == "c1":
            d1 = reg.d1(a, b)
        elif args.smoothness == "c2":
            if reg.d2 is None:
                raise UsageError(
                    f"--fn {reg.name} has no bounded second derivative; use c0 or c1"
                )
            d2 = reg.d2(a, b)
        report = bernstein_like_report(
            args.m, n, sel, reg.fn, args.smoothness, iv, d1=d1, d2=d2, samples=samples
        )
    _emit(_json_text(report.to_json_obj()) + "\n", args.out)
    return 0


_COMMANDS = {
    "elevate": _cmd_elevate,
    "dual-basis": _cmd_dual_basis,
    "convergence": _cmd_convergence,
    "plot": _cmd_plot,
    "operator": _cmd_operator,
}


def run(argv=None) -> int:
    """Parse and dispatch; returns the process exit code (0, 2 or 3)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularMatrixError as exc:
        sys.stdout.write(
            _json_text({"error": "singular", "message": str(exc)}) + "\n"
        )
        return 3
    except ValueError as exc:  # library precondition violations
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
