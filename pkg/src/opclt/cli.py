"""``opclt`` command line: exact JSON tables and CSV reports.

Exit codes: 0 on success, 1 when an input fails a mathematical condition
(non-standardized measure, violated hypotheses, divergent integral, ...),
2 for usage errors and unreadable files.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import ComplexScalar, Polynomial, as_scalar, format_rational
from .clt_engine import (
    GaussianParams,
    convergence_table,
    finite_n_table,
    limit_table,
    params_from_kmatrix,
)
from .gaussian_ops import (
    apply_C,
    kernel_apply_numeric,
    kernel_params,
    params_from_kernel,
)
from .hermite import hermite_table
from .hypercontractivity import ExponentPair, epperson_grid, transference_demo, two_point_ratio_scan
from .measures import measure_from_json
from .operators import (
    DEFAULT_CUTOFF,
    KMatrix,
    check_hypotheses,
    k_matrix,
    kmatrix_from_rows,
    operator_from_json,
    require_hypotheses,
)


class UsageError(Exception):
    pass


def fmt_scalar(v):
    if type(v) is ComplexScalar:
        return v.to_json()
    if isinstance(v, Fraction):
        return format_rational(v)
    z = complex(v)
    return {"re": repr(z.real), "im": repr(z.imag)}


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def parse_scalar(text: str):
    """``"1/3"`` or ``"re,im"`` (rationals) give exact values; anything else goes through ``complex``."""
    text = text.strip()
    try:
        if "," in text:
            re, im = text.split(",", 1)
            return ComplexScalar(Fraction(re.strip()), Fraction(im.strip()))
        return ComplexScalar(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError as e:
        raise UsageError(f"cannot read {text!r} as a number") from e


def parse_real(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot read {text!r} as a real number") from e


def parse_poly(text: str) -> Polynomial:
    """Comma-separated coefficient list, lowest degree first, e.g. ``"-1,0,1"``."""
    try:
        return Polynomial([as_scalar(Fraction(c)) for c in text.split(",")])
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot read polynomial {text!r}") from e


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"cannot read integer list {text!r}") from e


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e


def emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=False))


def table_json(tab) -> list:
    return [[fmt_scalar(v) for v in row] for row in tab.values]


def load_kmatrix(args) -> KMatrix:
    if getattr(args, "kmatrix", None):
        obj = load_json(args.kmatrix)
        rows = obj["entries"] if isinstance(obj, dict) else obj
        return kmatrix_from_rows([[ComplexScalar.from_json(v) for v in row] for row in rows])
    if not (args.measure and args.operator):
        raise UsageError("give --kmatrix FILE or both --measure and --operator")
    mu = measure_from_json(load_json(args.measure))
    K = operator_from_json(load_json(args.operator), mu, args.cutoff)
    return k_matrix(K, mu, args.cutoff)


# handlers


def cmd_hermite_table(args):
    rows = [
        {"l": l, "H": str(p), "coeffs": [format_rational(c.re) for c in p.coeffs], "H(0)": format_rational(h0)}
        for l, p, h0 in hermite_table(args.max)
    ]
    emit(rows)


def cmd_kmatrix(args):
    km = load_kmatrix(args)
    report = check_hypotheses(km)
    emit(
        {
            "cutoff": km.cutoff,
            "entries": [[fmt_scalar(v) for v in row] for row in km.entries],
            "hypotheses": {"ok": report.ok, "messages": report.messages},
        }
    )


def cmd_clt_limit(args):
    km = load_kmatrix(args)
    require_hypotheses(km)
    gp = params_from_kmatrix(km)
    emit({"params": gp.to_json(), "limit": table_json(limit_table(km, args.lmax))})


def cmd_clt_finite(args):
    km = load_kmatrix(args)
    emit({"N": args.N, "finite_n": table_json(finite_n_table(km, args.lmax, args.N))})


def cmd_clt_converge(args):
    km = load_kmatrix(args)
    rows = convergence_table(km, args.l, args.m, parse_int_list(args.Ns))
    print("N,re(cN),im(cN),abs_err")
    for r in rows:
        z = complex(r.value)
        print(f"{r.N},{fmt_float(z.real)},{fmt_float(z.imag)},{fmt_float(r.abs_err)}")


def _params(args) -> GaussianParams:
    return GaussianParams(parse_scalar(args.tau), parse_scalar(args.omega), parse_scalar(args.lam))


def cmd_gauss_kernel(args):
    kp = kernel_params(_params(args))
    emit({"A": fmt_scalar(kp.A), "B": fmt_scalar(kp.B), "C": fmt_scalar(kp.C), "D": fmt_scalar(kp.D)})


def cmd_gauss_apply(args):
    if args.params:
        obj = load_json(args.params)
        if {"A", "B", "C"} <= set(obj):
            gp = params_from_kernel(*(parse_scalar(_arg_text(obj[k])) for k in "ABC"))
        else:
            gp = GaussianParams(*(parse_scalar(_arg_text(obj[k])) for k in ("tau", "omega", "lambda")))
    else:
        gp = _params(args)
    f = parse_poly(args.poly)
    kp = kernel_params(gp)
    x = complex(parse_scalar(args.at))
    direct = apply_C(gp, f)(x)
    via_kernel = kernel_apply_numeric(kp, f, x)
    emit({"params": gp.to_json(), "x": fmt_scalar(x), "apply_C": fmt_scalar(direct), "kernel": fmt_scalar(via_kernel)})


def _arg_text(v) -> str:
    if isinstance(v, dict):
        return f"{v.get('re', '0')},{v.get('im', '0')}"
    return str(v)


def cmd_hyper_epperson(args):
    parts = args.omega_grid.split(",")
    if len(parts) != 5:
        raise UsageError("--omega-grid needs re0,re1,im0,im1,steps")
    re0, re1, im0, im1 = (parse_real(p) for p in parts[:4])
    steps = parse_int_list(parts[4])[0]
    pq = ExponentPair(parse_real(args.p), parse_real(args.q))
    print("re,im,slack,ok")
    for re, im, slack, ok in epperson_grid(pq, (re0, re1), (im0, im1), steps):
        print(f"{fmt_float(re)},{fmt_float(im)},{fmt_float(slack)},{int(ok)}")


def cmd_hyper_two_point(args):
    pq = ExponentPair(parse_real(args.p), parse_real(args.q))
    omega = complex(parse_scalar(args.omega))
    res = two_point_ratio_scan(pq, omega, args.grid)
    emit(
        {
            "p": pq.p,
            "q": pq.q,
            "omega": fmt_scalar(omega),
            "grid_points": res.grid_points,
            "max_ratio": fmt_float(res.max_ratio),
            "argmax": "f=x" if res.argmax is None else fmt_scalar(res.argmax),
            "contraction": res.max_ratio <= 1 + args.tol,
        }
    )


def cmd_hyper_transfer(args):
    mu = measure_from_json(load_json(args.measure))
    pq = ExponentPair(parse_real(args.p), parse_real(args.q))
    report = transference_demo(mu, parse_scalar(args.omega), pq, args.grid)
    out = report.to_json()
    out["seed"] = args.seed
    emit(out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opclt", description="Tensorized operators on polynomials and their Gaussian limits.")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized scans (recorded in output)")
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hermite").add_subparsers(dest="action", required=True)
    t = h.add_parser("table")
    t.add_argument("--max", type=int, required=True)
    t.set_defaults(func=cmd_hermite_table)

    def source(p):
        p.add_argument("--measure")
        p.add_argument("--operator")
        p.add_argument("--kmatrix", help="JSON file with a square table of {re, im} entries")
        p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)

    k = sub.add_parser("kmatrix")
    source(k)
    k.set_defaults(func=cmd_kmatrix)

    c = sub.add_parser("clt").add_subparsers(dest="action", required=True)
    lim = c.add_parser("limit")
    source(lim)
    lim.add_argument("--lmax", type=int, default=4)
    lim.set_defaults(func=cmd_clt_limit)
    fin = c.add_parser("finite-n")
    source(fin)
    fin.add_argument("--N", type=int, required=True)
    fin.add_argument("--lmax", type=int, default=4)
    fin.set_defaults(func=cmd_clt_finite)
    conv = c.add_parser("converge")
    source(conv)
    conv.add_argument("--Ns", required=True)
    conv.add_argument("--l", type=int, required=True)
    conv.add_argument("--m", type=int, required=True)
    conv.set_defaults(func=cmd_clt_converge)

    g = sub.add_parser("gauss").add_subparsers(dest="action", required=True)
    gk = g.add_parser("kernel")
    gk.add_argument("--tau", required=True)
    gk.add_argument("--omega", required=True)
    gk.add_argument("--lambda", dest="lam", required=True)
    gk.set_defaults(func=cmd_gauss_kernel)
    ga = g.add_parser("apply")
    ga.add_argument("--params", help="JSON with tau/omega/lambda or A/B/C")
    ga.add_argument("--tau", default="0")
    ga.add_argument("--omega", default="0")
    ga.add_argument("--lambda", dest="lam", default="1")
    ga.add_argument("--poly", required=True, help="coefficients, lowest degree first")
    ga.add_argument("--at", required=True)
    ga.set_defaults(func=cmd_gauss_apply)

    y = sub.add_parser("hyper").add_subparsers(dest="action", required=True)
    ye = y.add_parser("epperson")
    ye.add_argument("--p", required=True)
    ye.add_argument("--q", required=True)
    ye.add_argument("--omega-grid", required=True)
    ye.set_defaults(func=cmd_hyper_epperson)
    yt = y.add_parser("two-point")
    yt.add_argument("--p", required=True)
    yt.add_argument("--q", required=True)
    yt.add_argument("--omega", help="defaults to i*sqrt(p-1)")
    yt.add_argument("--grid", type=int, default=100)
    yt.add_argument("--tol", type=float, default=1e-9)
    yt.set_defaults(func=cmd_hyper_two_point)
    yx = y.add_parser("transfer")
    yx.add_argument("--measure", required=True)
    yx.add_argument("--omega", required=True)
    yx.add_argument("--p", required=True)
    yx.add_argument("--q", required=True)
    yx.add_argument("--grid", type=int, default=100)
    yx.set_defaults(func=cmd_hyper_transfer)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if getattr(args, "func", None) is cmd_hyper_two_point and args.omega is None:
        args.omega = repr(1j * (parse_real(args.p) - 1) ** 0.5)
    try:
        args.func(args)
    except UsageError as e:
        print(f"opclt: usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, KeyError) as e:
        # MeasureError, OperatorError, HypothesisViolation and friends are ValueErrors
        print(f"opclt: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
