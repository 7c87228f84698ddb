"""Command-line front end.

Exit status is 0 on success, 1 for usage errors (bad flags or parameters
outside an operation's domain) and 2 when a computation fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, intervals, kernels, sidon

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % x


def _number(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _int_list(text: str) -> list:
    """``"5"``, ``"5,7"`` or ``"3-9"`` style lists."""
    out = []
    try:
        for part in text.split(","):
            if "-" in part:
                a, b = part.split("-")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None
    return out


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("SYMMETRA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"SYMMETRA_THREADS must be an integer, got {env!r}") from None
    return 1


def _read_json(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _emit(args, text: str):
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


# ---- dsym -----------------------------------------------------------------


def cmd_dsym(args):
    try:
        A = intervals.IntervalSet.from_json(_read_json(args.input))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad interval set: {exc}") from None
    if args.ambient:
        A = intervals.IntervalSet(A.intervals, args.ambient)
    if not A:
        raise UsageError("interval set is empty")
    delta, c = intervals.largest_symmetric(A)
    if args.format == "json":
        _emit(args, json.dumps({"delta": _exact(delta), "c": _exact(c), "measure": _exact(intervals.measure(A))}) + "\n")
    else:
        _emit(args, f"delta={fmt(delta)} c={fmt(c)}\n")


def _exact(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else v.numerator
    return v


# ---- bstar ----------------------------------------------------------------

BSTAR_COLUMNS = ("g", "n", "size", "exact", "seed", "seconds")


def cmd_bstar_search(args):
    rows, witnesses = [], []
    search = sidon.search_C if args.modular else sidon.search_R
    for g in args.g:
        for n in args.n:
            if g < 1 or n < 1:
                raise UsageError("g and n must be positive")
            r = search(g, n, budget=args.budget, threads=_threads(args), backend=args.backend)
            rows.append((g, n, r.size, r.exact, "", r.seconds))
            witnesses.append(dict(r.witness.to_json(), exact=r.exact, nodes=r.nodes))
    if args.format == "json":
        _emit(args, json.dumps(witnesses if len(witnesses) > 1 else witnesses[0]) + "\n")
    else:
        _emit(args, _csv(BSTAR_COLUMNS, rows))


def cmd_bstar_random(args):
    import time

    t0 = time.perf_counter()
    if args.mode == "modular":
        if args.eps is None:
            raise UsageError("--eps is required for modular draws")
        if not 0 < args.eps <= 1 or args.n < 1 or args.n % 2 == 0:
            raise UsageError("modular draws need 0 < eps <= 1 and odd n")
        W = sidon.random_modular(args.eps, args.n, seed=args.seed, max_attempts=args.max_attempts, strict=args.strict)
    else:
        if args.gamma is None:
            raise UsageError("--gamma is required for integer draws")
        if args.gamma < np.pi or args.n < args.gamma:
            raise UsageError("integer draws need gamma >= pi and n >= gamma")
        W = sidon.random_integer(args.gamma, args.n, seed=args.seed, max_attempts=args.max_attempts)
    seconds = time.perf_counter() - t0
    if args.format == "json":
        _emit(args, json.dumps(W.to_json()) + "\n")
    else:
        _emit(args, _csv(BSTAR_COLUMNS, [(W.g, W.n, len(W), "", args.seed, seconds)]))


def cmd_bstar_verify(args):
    data = _read_json(args.input)
    try:
        W = sidon.BstarSet.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ok = W.verify(args.g) if args.g is not None else W.verify()
    _emit(args, f"ok={fmt(ok)} g={W.g} size={len(W)} n={W.n}\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---- kernel ---------------------------------------------------------------


def _load_kernel(args):
    if args.preset and args.input:
        raise UsageError("give either --preset or --input")
    if args.input:
        try:
            K = kernels.kernel_from_json(_read_json(args.input))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad kernel: {exc}") from None
    else:
        try:
            K = kernels.preset(args.preset or "K4", args.T)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if isinstance(K, kernels.ClosedFormKernel):
        K = kernels.sample_closed_form(K, args.T)
    return K


def cmd_kernel_norm(args):
    K = _load_kernel(args)
    p = args.p
    if p <= 1:
        raise UsageError("p must exceed 1")
    alpha, mixed = kernels.mix_with_constant(K, p) if K.mean <= 1 else (float("nan"), float("nan"))
    norm = K.norm(p)
    rows = [
        ("norm", norm),
        ("coeff0", K.coeff(0)),
        ("coeff1", K.coeff(1)),
        ("tail_from_m", K.tail_norm(args.m, p)),
        ("m", args.m),
        ("mix_alpha", alpha),
        ("mixed_norm", mixed),
    ]
    if abs(p - 4 / 3) < 1e-15:
        rows.append(("lower_coefficient", 0.5 * norm**-4))
    _emit(args, "".join(f"{k}={fmt(v)}\n" for k, v in rows))


def cmd_kernel_opt(args):
    cfg = kernels.OptimizeConfig(objective=args.objective)
    if args.sweeps is not None:
        cfg.sweeps = args.sweeps
    try:
        res = kernels.optimize_kernel(args.space, args.p, cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {
        "space": args.space,
        "p": args.p,
        "norm": res.norm,
        "converged": res.converged,
        "iterations": res.iterations,
        "params": [float(v) for v in res.params],
        "kernel": res.kernel.to_json() if args.full else None,
    }
    if not np.isnan(res.objective_value):
        out["objective_value"] = res.objective_value
    _emit(args, json.dumps(out) + "\n")
    if not res.barrier_ok and args.p <= 4 / 3:
        print("error: optimiser went below the known lower barrier", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if res.converged else EXIT_FAIL


def cmd_kernel_sample(args):
    K = _load_kernel(args)
    if args.format == "json":
        _emit(args, json.dumps(K.to_json()) + "\n")
        return
    x = np.linspace(-0.5, 0.5, args.points)
    _emit(args, _csv(("x", "K"), zip(x.tolist(), K(x).tolist())))


# ---- bound ----------------------------------------------------------------


def _certs(args):
    witnesses = []
    for path in getattr(args, "witness", None) or []:
        try:
            witnesses.append(sidon.BstarSet.from_json(_read_json(path)))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{path}: {exc}") from None
    return bounds.default_certificates(witnesses)


def _best(certs, eps, kind):
    cands = [(c.value(eps), c) for c in certs if c.kind == kind and c.covers(eps)]
    cands = [(v, c) for v, c in cands if not np.isnan(v)]
    if not cands:
        return None
    return max(cands, key=lambda t: t[0]) if kind == "lower" else min(cands, key=lambda t: t[0])


def _cmd_bound(args, kind):
    if not 0 <= args.eps <= 1:
        raise UsageError("eps must lie in [0, 1]")
    certs = _certs(args)
    value = bounds.lower_envelope(args.eps, certs) if kind == "lower" else bounds.upper_envelope(args.eps, certs)
    best = _best(certs, args.eps, kind)
    _emit(args, fmt(value) + "\n")
    if best is not None and not args.quiet:
        cert = best[1]
        print(f"# {kind} via {cert.form} {list(cert.coeffs)}: {json.dumps(list(cert.provenance))}", file=sys.stderr)


def cmd_bound_lower(args):
    _cmd_bound(args, "lower")


def cmd_bound_upper(args):
    _cmd_bound(args, "upper")


def cmd_bound_envelope(args):
    if not 0 < args.step <= 0.5:
        raise UsageError("step must lie in (0, 1/2]")
    rows = bounds.envelope_table(args.step, _certs(args))
    _emit(args, bounds.envelope_csv(rows))


# ---- figure ---------------------------------------------------------------


def _svg(rows, width=640, height=400, pad=50) -> str:
    eps = [r[0] for r in rows]
    lo = [r[3] for r in rows]
    up = [r[4] for r in rows]
    y0, y1 = 0.5, 1.0

    def pt(x, y):
        px = pad + x * (width - 2 * pad)
        py = height - pad - (min(max(y, y0), y1) - y0) / (y1 - y0) * (height - 2 * pad)
        return f"{px:.2f},{py:.2f}"

    def line(ys, colour):
        pts = " ".join(pt(x, y) for x, y in zip(eps, ys))
        return f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>'

    ticks = []
    for k in range(6):
        x = k / 5
        ticks.append(f'<text x="{pad + x * (width - 2 * pad):.1f}" y="{height - pad + 18}" font-size="11" text-anchor="middle">{x:g}</text>')
        y = y0 + k * (y1 - y0) / 5
        py = height - pad - k / 5 * (height - 2 * pad)
        ticks.append(f'<text x="{pad - 6}" y="{py + 4:.1f}" font-size="11" text-anchor="end">{y:.1f}</text>')
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
            f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="#888"/>',
            line(up, "#c0392b"),
            line(lo, "#2c3e80"),
            *ticks,
            f'<text x="{width / 2}" y="{height - 12}" font-size="12" text-anchor="middle">eps</text>',
            f'<text x="{pad}" y="{pad - 10}" font-size="12">Delta(eps)/eps^2: lower (blue), upper (red)</text>',
            "</svg>",
            "",
        ]
    )


def cmd_figure(args):
    rows = bounds.envelope_table(args.step, _certs(args))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "overallpic.csv").write_text(bounds.envelope_csv(rows))
    (out_dir / "overallpic.svg").write_text(_svg(rows))
    print(f"wrote {out_dir / 'overallpic.csv'} and {out_dir / 'overallpic.svg'}")


# ---- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symmetra", description="Symmetric subsets, B*[g] sets and bounds on Delta(eps).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, out=True):
        if out:
            p.add_argument("--out", help="write output to a file instead of standard output")
        return p

    p = common(sub.add_parser("dsym", help="largest symmetric subset of an interval union"))
    p.add_argument("--input", required=True, help="JSON interval set ('-' for standard input)")
    p.add_argument("--ambient", choices=("line", "circle"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_dsym)

    bstar = sub.add_parser("bstar", help="B*[g] sets").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = common(bstar.add_parser("search", help="largest B*[g] set by branch and bound"))
    p.add_argument("--g", type=_int_list, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--modular", action="store_true", help="sums modulo n")
    p.add_argument("--budget", type=int, default=sidon.DEFAULT_BUDGET)
    p.add_argument("--threads", type=int)
    p.add_argument("--backend", choices=("cython", "python"))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_bstar_search)

    p = common(bstar.add_parser("random", help="random B*[g] set"))
    p.add_argument("--mode", choices=("modular", "integer"), required=True)
    p.add_argument("--eps", type=_number)
    p.add_argument("--gamma", type=_number)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=sidon.DEFAULT_MAX_ATTEMPTS)
    p.add_argument("--strict", action="store_true", help="refuse n below the tail-estimate threshold")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_bstar_random)

    p = common(bstar.add_parser("verify", help="recount representations of a witness"))
    p.add_argument("--input", required=True)
    p.add_argument("--g", type=int, help="check against this g instead of the stated one")
    p.set_defaults(func=cmd_bstar_verify)

    kern = sub.add_parser("kernel", help="kernels").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func, hlp in (
        ("norm", cmd_kernel_norm, "Fourier norms of a kernel"),
        ("sample", cmd_kernel_sample, "dump a kernel as CSV (x, K) or JSON"),
    ):
        p = common(kern.add_parser(name, help=hlp))
        p.add_argument("--preset", help="one of " + ", ".join(kernels.PRESETS))
        p.add_argument("--input", help="kernel JSON")
        p.add_argument("--T", type=int, default=10_000, help="sampling size for closed forms")
        if name == "norm":
            p.add_argument("--p", type=_number, default=4 / 3)
            p.add_argument("--m", type=int, default=2, help="tail start")
        else:
            p.add_argument("--points", type=int, default=1001)
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.set_defaults(func=func)
    p = common(kern.add_parser("opt", help="optimise a kernel"))
    p.add_argument("--space", required=True, help="step(Q), pl(T) or family(power|arctan|green)")
    p.add_argument("--p", type=_number, default=4 / 3)
    p.add_argument("--sweeps", type=int)
    p.add_argument("--objective", choices=("norm", "threshold"), default="norm")
    p.add_argument("--full", action="store_true", help="include the kernel values")
    p.set_defaults(func=cmd_kernel_opt)

    bnd = sub.add_parser("bound", help="bounds on Delta(eps)").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func in (("lower", cmd_bound_lower), ("upper", cmd_bound_upper)):
        p = common(bnd.add_parser(name))
        p.add_argument("--eps", type=_number, required=True)
        p.add_argument("--witness", action="append", help="B*[g] witness JSON (upper bounds)")
        p.add_argument("--quiet", action="store_true", help="omit provenance")
        p.set_defaults(func=func)
    p = common(bnd.add_parser("envelope", help="CSV of both envelopes"))
    p.add_argument("--step", type=_number, default=1e-3)
    p.add_argument("--witness", action="append")
    p.set_defaults(func=cmd_bound_envelope)

    fig = sub.add_parser("figure", help="figure data").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = fig.add_parser("overallpic", help="envelope CSV and SVG")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--step", type=_number, default=1e-3)
    p.add_argument("--witness", action="append")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 1, --help exits 0
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"symmetra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sidon.ConstructionError as exc:
        print(f"symmetra: construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"symmetra: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    raise SystemExit(main())
