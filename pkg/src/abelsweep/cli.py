"""Command-line surface.

One command per invocation; deterministic output (byte-identical for a fixed
configuration and precision mode) to stdout or --out. Numeric parameters
accept decimal or "p/q" literals. Exit codes: 0 success, 1 I/O or
configuration errors, 2 domain errors (s=0, root of unity, singular system).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp

from .affine import (
    AffineParams,
    affine_series,
    beta_direct,
    beta_recurrence,
    eval_log_poly,
    log_poly,
    reference_log,
    s_invariance_gap,
)
from .carleman import abel_system, bell_matrix
from .errors import DomainError
from .iterate import exact_log_context, fractional_iterate, poly_abel_context
from .powerseries import exp_shift_series, from_json_dict
from .scalars import PrecisionConfig, format_scalar, parse_rational
from .solver import StabilizationConfig, intuitive_sweep, solve_truncated


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); config errors are exit 1 here
        raise UsageError(message)


# ---------------------------------------------------------------------------
# literal parsing

def _precision(text: str) -> PrecisionConfig:
    if text == "machine":
        return PrecisionConfig("machine")
    if text == "exact":
        return PrecisionConfig("exact")
    if text.startswith("bits:"):
        return PrecisionConfig("bigfloat", bits=int(text[5:]))
    raise UsageError(f"bad --precision {text!r} (machine | bits:<n> | exact)")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad numeric literal {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(tok) for tok in text.split(",") if tok.strip()]


def _int_range(text: str) -> list[int]:
    """\"a:b\" or \"a:b:step\" (inclusive), or a comma list."""
    if ":" in text:
        parts = [int(tok) for tok in text.split(":")]
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(lo, hi + 1, step))
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _bracket(text: str) -> tuple:
    lo, hi = text.split(":")
    return (float(_rational(lo)), float(_rational(hi)))


def _load_series(path: str, cfg: PrecisionConfig):
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh), cfg)


def _affine_input(args, cfg: PrecisionConfig, order: int, check_unity: bool = True):
    """Series from --series FILE or the built-in affine generator.

    ``check_unity`` applies the root-of-unity validation of the generator
    parameters; matrix dumps skip it (assembly never divides by 1 - b**k).
    """
    if getattr(args, "series", None):
        return _load_series(args.series, cfg)
    p = AffineParams(cfg.scalar(args.b), cfg.scalar(args.s))
    if check_unity:
        p.ensure_order(max(order, 1))
    return affine_series(p, max(order, 1))


# ---------------------------------------------------------------------------
# output

def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def _cmd_matrix(args) -> str:
    cfg = args.precision
    with cfg.workprec():
        f = _affine_input(args, cfg, args.N - 1, check_unity=False)
        if args.system:
            sysN = abel_system(f, args.N)
            rows = [
                [format_scalar(v, cfg.dps) for v in row] + [format_scalar(sysN.rhs[m], cfg.dps)]
                for m, row in enumerate(sysN.A)
            ]
            header = [f"a{n + 1}" for n in range(args.N)] + ["rhs"]
        else:
            bm = bell_matrix(f, args.N)
            rows = [[format_scalar(v, cfg.dps) for v in row] for row in bm.rows()]
            header = [f"n{n}" for n in range(args.N + 1)]
    if args.format == "json":
        return _json({"N": args.N, "rows": rows})
    return _csv(header, rows)


def _cmd_solve(args) -> str:
    cfg = args.precision
    with cfg.workprec():
        f = _affine_input(args, cfg, args.N - 1)
        x = solve_truncated(abel_system(f, args.N))
        vals = [format_scalar(v, cfg.dps) for v in x]
    if args.format == "json":
        return _json({"N": args.N, "coefficients": vals})
    return _csv(["index", "value"], [[str(i + 1), v] for i, v in enumerate(vals)])


def _cmd_sweep(args) -> str:
    cfg = args.precision
    Ns = args.Ns
    stab = StabilizationConfig(args.tol_abs, args.tol_rel, args.window)
    with cfg.workprec():
        f = _affine_input(args, cfg, max(Ns) - 1)
    report = intuitive_sweep(f, Ns, cfg, stab)
    return _render_sweep(report, args.format, cfg)


def _render_sweep(report, fmt: str, cfg: PrecisionConfig) -> str:
    if fmt == "csv":
        rows = []
        for n in sorted(report.trajectories):
            verdict = report.verdicts[n].kind
            relevant = [N for N in report.Ns if N >= n]
            for N, v in zip(relevant, report.trajectories[n]):
                rows.append(
                    [str(n), str(N), "" if v is None else format_scalar(v, cfg.dps), verdict]
                )
        return _csv(["index", "N", "value", "verdict"], rows)
    return _json(report.to_json_dict())


def _cmd_affine(args) -> str:
    cfg = args.precision
    p = AffineParams(cfg.scalar(args.b), cfg.scalar(args.s))
    p.ensure_order(args.n)
    methods = ["direct", "recurrence", "system"] if args.method == "all" else [args.method]
    columns: dict[str, list] = {}
    with cfg.workprec():
        for method in methods:
            if method == "system":
                vec = solve_truncated(abel_system(affine_series(p, args.n), args.n))
            elif method == "recurrence":
                vec = [beta_recurrence(p, args.n, m) for m in range(1, args.n + 1)]
            else:
                vec = [beta_direct(p, args.n, m) for m in range(1, args.n + 1)]
            columns[method] = [format_scalar(v, cfg.dps) for v in vec]
    if args.format == "json":
        return _json({"n": args.n, "coefficients": columns})
    header = ["m"] + methods
    rows = [
        [str(m + 1)] + [columns[meth][m] for meth in methods] for m in range(args.n)
    ]
    return _csv(header, rows)


def _log_table(b: Fraction, degrees: list[int], xs: list[Fraction], cfg: PrecisionConfig) -> str:
    ref_bits = max(degrees) + cfg.guard_bits + 64
    rows = []
    for n in degrees:
        poly = log_poly(b, n)
        for x in xs:
            approx = eval_log_poly(poly, x, cfg)
            with mp.workprec(ref_bits):
                ref = reference_log(b, x, bits=ref_bits)
                err = abs(approx - ref)
                rows.append(
                    [
                        str(n),
                        format_scalar(x),
                        format_scalar(approx, cfg.dps),
                        format_scalar(ref, cfg.dps),
                        format_scalar(err, cfg.dps),
                    ]
                )
    return _csv(["n", "x", "approx", "reference_log", "abs_error"], rows)


def _cmd_logapprox(args) -> str:
    table = _log_table(args.b, args.n, args.xs, args.precision)
    if args.format == "json":
        lines = [row.split(",") for row in table.strip().split("\n")[1:]]
        return _json(
            [
                dict(zip(["n", "x", "approx", "reference_log", "abs_error"], row))
                for row in lines
            ]
        )
    return table


def _cmd_invariance(args) -> str:
    cfg = args.precision
    p1 = AffineParams(args.b, args.s1)
    p2 = AffineParams(args.b, args.s2)
    p1.ensure_order(args.n)
    report = s_invariance_gap(p1, p2, args.n, args.xs, cfg)
    if args.format == "csv":
        rows = [
            [format_scalar(x), format_scalar(g, cfg.dps)]
            for x, g in zip(report.xs, report.gaps)
        ]
        return _csv(["x", "gap"], rows)
    return _json(
        {
            "b": format_scalar(args.b),
            "s1": format_scalar(args.s1),
            "s2": format_scalar(args.s2),
            "n": args.n,
            "median_gap": format_scalar(report.median_gap, cfg.dps),
            "deviation": format_scalar(report.deviation, cfg.dps),
        }
    )


def _cmd_iterate(args) -> str:
    cfg = args.precision
    p = AffineParams(cfg.scalar(args.b), cfg.scalar(args.s))
    if args.n is None:
        ctx = exact_log_context(p.b, p.s, cfg, bracket=args.bracket, tol=args.tol)
    else:
        if args.bracket is None:
            raise UsageError("--bracket lo:hi is required with --n (polynomial inversion)")
        p.ensure_order(args.n)
        ctx = poly_abel_context(p, args.n, cfg, bracket=args.bracket, tol=args.tol)
    rows = []
    for t in args.t:
        for z in args.z:
            w = fractional_iterate(ctx, cfg.scalar(t), cfg.scalar(z))
            rows.append(
                [format_scalar(t), format_scalar(z), format_scalar(w, cfg.dps)]
            )
    if args.format == "json":
        return _json([dict(zip(["t", "z", "value"], row)) for row in rows])
    return _csv(["t", "z", "value"], rows)


def _cmd_explore_exp(args) -> str:
    cfg = args.precision
    if (args.Ns is None) == (args.N_max is None):
        raise UsageError("give exactly one of --Ns or --N-max")
    Ns = args.Ns if args.Ns is not None else list(range(1, args.N_max + 1))
    f = exp_shift_series(args.s, max(Ns) - 1 if max(Ns) > 1 else 1, cfg)
    stab = StabilizationConfig(args.tol_abs, args.tol_rel, args.window)
    report = intuitive_sweep(f, Ns, cfg, stab)
    return _render_sweep(report, args.format, cfg)


def _cmd_explore_bgt1(args) -> str:
    b = args.b
    if b <= 1:
        raise UsageError("explore-bgt1 expects a base b > 1")
    xs = args.xs or [b * (1 + Fraction(u, 10)) for u in range(-8, 9, 2)]
    return _log_table(b, args.n, xs, args.precision)


# ---------------------------------------------------------------------------
# parser

def build_parser() -> _Parser:
    parser = _Parser(prog="abelsweep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="csv", precision_default="bits:128"):
        p.add_argument("--precision", type=_precision, default=_precision(precision_default))
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        p.add_argument("--out", default=None)

    p = sub.add_parser("matrix", help="dump the Bell matrix (or Abel system) of a map")
    p.add_argument("--b", type=_rational, default=Fraction(2))
    p.add_argument("--s", type=_rational, default=Fraction(1))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--series", default=None, help="JSON series file instead of --b/--s")
    p.add_argument("--system", action="store_true", help="dump A|rhs instead of the Bell matrix")
    common(p)
    p.set_defaults(fn=_cmd_matrix)

    p = sub.add_parser("solve", help="solve one truncated Abel system")
    p.add_argument("--b", type=_rational, default=Fraction(2))
    p.add_argument("--s", type=_rational, default=Fraction(1))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--series", default=None)
    common(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("sweep", help="solve truncations over increasing N and classify")
    p.add_argument("--b", type=_rational, default=Fraction(2))
    p.add_argument("--s", type=_rational, default=Fraction(1))
    p.add_argument("--Ns", type=_int_range, required=True, help="e.g. 1:32 or 1,2,4,8")
    p.add_argument("--series", default=None)
    p.add_argument("--tol-abs", type=float, default=1e-9)
    p.add_argument("--tol-rel", type=float, default=1e-9)
    p.add_argument("--window", type=int, default=3)
    common(p, fmt_default="json")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("affine", help="closed-form solution coefficients")
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--s", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("direct", "recurrence", "system", "all"), default="all")
    common(p, precision_default="exact")
    p.set_defaults(fn=_cmd_affine)

    p = sub.add_parser("logapprox", help="polynomial log approximation error table")
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--n", type=_int_range, required=True, help="degree(s), e.g. 100,400")
    p.add_argument("--xs", type=_rational_list, required=True)
    common(p)
    p.set_defaults(fn=_cmd_logapprox)

    p = sub.add_parser("invariance", help="development-point invariance gap")
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--s1", type=_rational, required=True)
    p.add_argument("--s2", type=_rational, required=True)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--xs", type=_rational_list, required=True)
    common(p, fmt_default="json")
    p.set_defaults(fn=_cmd_invariance)

    p = sub.add_parser("iterate", help="fractional iterates through an Abel function")
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--s", type=_rational, required=True)
    p.add_argument("--t", type=_rational_list, required=True)
    p.add_argument("--z", type=_rational_list, required=True)
    p.add_argument("--n", type=int, default=None, help="polynomial degree (default: exact log)")
    p.add_argument("--bracket", type=_bracket, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(fn=_cmd_iterate)

    p = sub.add_parser("explore-exp", help="exploratory sweep for the exponential map")
    p.add_argument("--s", type=_rational, default=Fraction(0))
    p.add_argument("--Ns", type=_int_range, default=None)
    p.add_argument("--N-max", dest="N_max", type=int, default=None)
    p.add_argument("--tol-abs", type=float, default=1e-9)
    p.add_argument("--tol-rel", type=float, default=1e-9)
    p.add_argument("--window", type=int, default=3)
    common(p, fmt_default="json", precision_default="bits:256")
    p.set_defaults(fn=_cmd_explore_exp)

    p = sub.add_parser("explore-bgt1", help="exploratory log table for b > 1 (no pass/fail)")
    p.add_argument("--b", type=_rational, default=Fraction(2))
    p.add_argument("--n", type=_int_range, default=[200])
    p.add_argument("--xs", type=_rational_list, default=None)
    common(p)
    p.set_defaults(fn=_cmd_explore_bgt1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.fn(args)
        _emit(text, args.out)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
