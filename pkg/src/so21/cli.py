"""Command line front end.

Every subcommand evaluates one library quantity over the parsed inputs and
writes one record per input point, as JSON lines (default) or CSV.  Floats
are printed with 17 significant digits so output is reproducible byte for
byte.  Exit status: 0 if every record is ok, 2 on usage errors, 3 if any
record carries an error status.

Record fields, in order: the echoed inputs, then value_re, value_im,
err_estimate, terms_used, status (and message when status is not ok).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import group, iso, rep, verify, wigner
from .errors import So21Error
from .numerics import SERIES_TOL

VALUE_FIELDS = ("value_re", "value_im", "err_estimate", "terms_used", "status")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing

def parse_complex(text: str) -> complex:
    """Parse 'a', 'a+bi', 'bi', '-i' and similar."""
    t = text.strip().replace(" ", "").replace("j", "i")
    if not t:
        raise UsageError("empty complex number")
    if t.endswith("i"):
        body = t[:-1]
        # split at the last sign that is not part of an exponent
        idx = max((k for k, ch in enumerate(body) if ch in "+-" and k > 0 and body[k - 1] not in "eE"), default=0)
        re_part, im_part = (body[:idx], body[idx:]) if idx else ("", body)
        if im_part in ("", "+", "-"):
            im_part += "1"
        try:
            return complex(float(re_part) if re_part else 0.0, float(im_part))
        except ValueError:
            raise UsageError(f"bad complex number: {text!r}") from None
    try:
        return complex(float(t), 0.0)
    except ValueError:
        raise UsageError(f"bad complex number: {text!r}") from None


def parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"bad number: {text!r}") from None


def parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"bad integer: {text!r}") from None


def parse_grid(text: str, as_int: bool = False):
    """start:stop:step with stop included; a bare number is a one-point grid."""
    conv = parse_int if as_int else parse_float
    parts = text.split(":")
    if len(parts) == 1:
        return [conv(parts[0])]
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:step, got {text!r}")
    start, stop, step = (conv(p) for p in parts)
    if step == 0 or (stop - start) * step < 0:
        raise UsageError(f"grid step has the wrong sign or is zero: {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def parse_list(text: str, conv, n: int | None = None):
    items = [conv(x) for x in text.split(",") if x.strip()]
    if n is not None and len(items) != n:
        raise UsageError(f"expected {n} comma-separated values, got {text!r}")
    return items


def element_from_args(args):
    if args.cartan is not None:
        return group.cartan_compose(parse_list(args.cartan, parse_float, 3))
    return group.boost02(parse_float(args.alpha) if args.alpha is not None else 0.0)


# ---------------------------------------------------------------- output

def _json_value(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            return "null"
        return f"{x:.17g}"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (complex, np.complexfloating)):
        return json.dumps(format_complex(complex(x)))
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in x) + "]"
    return json.dumps(x)


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _record(inputs: dict, value=None, err=0.0, terms=0, status="ok", message=None, extra=None):
    rec = dict(inputs)
    if extra:
        rec.update(extra)
    if status == "ok":
        v = complex(value)
        rec.update(value_re=v.real, value_im=v.imag, err_estimate=float(err), terms_used=int(terms), status="ok")
    else:
        rec.update(value_re=None, value_im=None, err_estimate=None, terms_used=None, status=status)
        rec["message"] = message
    return rec


def evaluate(inputs: dict, fn):
    """Run fn and wrap its result into a record.

    fn may return a complex number, anything with value / err_estimate /
    terms_used, or a pair (result, extra fields).
    """
    try:
        out = fn()
    except So21Error as exc:
        return _record(inputs, status=exc.status, message=str(exc))
    except ZeroDivisionError as exc:
        return _record(inputs, status="pole", message=str(exc))
    except (OverflowError, FloatingPointError) as exc:
        return _record(inputs, status="no_convergence", message=str(exc))
    except ValueError as exc:
        return _record(inputs, status="domain_error", message=str(exc))
    extra = {}
    if isinstance(out, tuple):
        out, extra = out
    if hasattr(out, "terms_used"):
        return _record(inputs, out.value, out.err_estimate, out.terms_used, extra=extra)
    return _record(inputs, out, extra=extra)


def emit(records, fmt: str, stream) -> None:
    if fmt == "csv":
        keys = []
        for r in records:
            for k in r:
                if k not in keys and k not in VALUE_FIELDS and k != "message":
                    keys.append(k)
        keys += list(VALUE_FIELDS) + ["message"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for r in records:
            writer.writerow(["" if r.get(k) is None else _csv_cell(r.get(k)) for k in keys])
        stream.write(buf.getvalue())
        return
    for r in records:
        stream.write("{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in r.items()) + "}\n")


def _csv_cell(x):
    if isinstance(x, str):
        return x
    if isinstance(x, complex):
        return format_complex(x)
    return _json_value(x)


# ---------------------------------------------------------------- subcommands

def cmd_zonal(args):
    sigma = parse_complex(args.sigma)
    alphas = parse_grid(args.alpha_grid) if args.alpha_grid else [parse_float(args.alpha or "0")]
    return [
        evaluate({"sigma": sigma, "alpha": a}, lambda a=a: rep.zonal_result(sigma, a, args.tol, args.max_terms))
        for a in alphas
    ]


def cmd_assoc(args):
    sigma = parse_complex(args.sigma)
    alphas = parse_grid(args.alpha_grid) if args.alpha_grid else [parse_float(args.alpha or "0")]
    ms = parse_grid(args.m, as_int=True)
    return [
        evaluate({"sigma": sigma, "m": m, "alpha": a}, lambda m=m, a=a: rep.assoc_result(sigma, m, a, args.tol, args.max_terms))
        for m in ms
        for a in alphas
    ]


def cmd_matrix_element(args):
    sigma = parse_complex(args.sigma)
    g = element_from_args(args)
    outs = parse_grid(args.m_out, as_int=True)
    ins = parse_grid(args.m_in, as_int=True)
    return [
        evaluate(
            {"sigma": sigma, "m_out": mo, "m_in": mi, "cartan": list(group.cartan_decompose(g))},
            lambda mo=mo, mi=mi: rep.matrix_element(sigma, mo, mi, g, args.quad_points),
        )
        for mo in outs
        for mi in ins
    ]


def cmd_fourier_lambda(args):
    lam = parse_complex(args.lam)
    ms = parse_grid(args.m, as_int=True)

    def run(m):
        if args.method == "quadrature":
            value, err = rep.fourier_lambda_quadrature(lam, m)
            return _Plain(value, err)
        return rep.fourier_lambda(lam, m)

    return [evaluate({"lambda": lam, "m": m, "method": args.method}, lambda m=m: run(m)) for m in ms]


class _Plain:
    def __init__(self, value, err, terms=0):
        self.value, self.err_estimate, self.terms_used = value, err, terms


def cmd_phi_m(args):
    sigma = parse_complex(args.sigma)
    return [evaluate({"sigma": sigma, "m": m}, lambda m=m: rep.phi_m(sigma, m)) for m in parse_grid(args.m, as_int=True)]


def _query(args):
    return wigner.WignerQuery.make(parse_list(args.sigmas, parse_complex, 3), parse_list(args.ms, parse_int, 3))


def cmd_wigner3(args):
    q = _query(args)
    fn = wigner.wigner_3h3 if args.form == "3h3" else wigner.wigner_coefficient
    return [evaluate({"sigmas": list(q.sigmas), "ms": list(q.ms), "form": args.form}, lambda: fn(q))]


def cmd_wigner3_oracle(args):
    q = _query(args)
    n = args.quad_points or 1024
    return [
        evaluate(
            {"sigmas": list(q.sigmas), "ms": list(q.ms), "quad_points": n},
            lambda: wigner.wigner_oracle(q, n, levels=args.levels),
        )
    ]


def cmd_covariance_check(args):
    q = _query(args)
    g = element_from_args(args)
    Ms = parse_list(args.M, parse_int)
    return [
        evaluate(
            {"sigmas": list(q.sigmas), "ms": list(q.ms), "M": M},
            lambda M=M: wigner.covariance_residual(q, g, M, args.quad_points),
        )
        for M in Ms
    ]


def cmd_orbit(args):
    p = np.array(parse_list(args.p, parse_float, 3))

    def run():
        cls = iso.orbit_classify(p, args.orbit_tol)
        return group.minkowski(p, p), {"orbit": cls.value}

    return [evaluate({"p": list(p)}, run)]


def cmd_wigner_rotation(args):
    p = np.array(parse_list(args.p, parse_float, 3))
    r = element_from_args(args)

    def run():
        w = iso.wigner_rotation(p, r)
        return w.parameter, {"kind": w.kind.value}

    return [evaluate({"p": list(p), "cartan": list(group.cartan_decompose(r))}, run)]


def _label(text: str):
    kind, _, rest = text.partition(":")
    vals = parse_list(rest, parse_float) if rest else []
    try:
        if kind == "mass":
            return iso.MassSpin(vals[0], int(vals[1]))
        if kind == "tachyon":
            return iso.TachyonicSpin(vals[0], vals[1])
        if kind == "helicity":
            return iso.Helicity(vals[0])
    except IndexError:
        pass
    raise UsageError(f"label must be mass:m,s | tachyon:m,s | helicity:lam, got {text!r}")


def cmd_induced_action(args):
    label = _label(args.label)
    p = np.array(parse_list(args.p, parse_float, 3))
    a = np.array(parse_list(args.a, parse_float, 3)) if args.a else np.zeros(3)
    r = element_from_args(args)

    def run():
        mult, p_new = iso.induced_action(label, iso.IsoElement(a, r), p)
        return mult, {"p_new": [float(x) for x in p_new]}

    return [evaluate({"label": args.label, "p": list(p), "a": list(a)}, run)]


_CASES = {
    "massive": iso.OrbitClass.MASSIVE_UPPER,
    "tachyonic": iso.OrbitClass.TACHYONIC,
    "lightlike": iso.OrbitClass.LIGHTLIKE_UPPER,
    "origin": iso.OrbitClass.ORIGIN,
}


def cmd_measure(args):
    coords = parse_list(args.coords, parse_float, 2)
    return [evaluate({"case": args.case, "coords": coords}, lambda: iso.measure_density(_CASES[args.case], coords))]


def cmd_verify(args):
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    records = []
    for name in names:
        res = verify.run_suite(name, args.seed)
        rec = {"suite": name, "passed": res.passed, "metric": res.metric, "tolerance": res.tolerance, "detail": res.detail}
        if res.passed:
            records.append(_record(rec, res.metric))
        else:
            records.append(_record(rec, status="failed", message=res.detail))
        print(res.line(), file=sys.stderr)
    return records


# ---------------------------------------------------------------- argument parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=SERIES_TOL, help="series tolerance (default 1e-12)")
    common.add_argument("--max-terms", type=int, default=100_000, help="series term limit")
    common.add_argument("--quad-points", type=int, default=None, help="quadrature grid size")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized verify suites")
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")

    parser = argparse.ArgumentParser(
        prog="so21",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
        return p

    def group_args(p):
        p.add_argument("--cartan", help="phi1,alpha,phi2 of rotation(phi1) boost02(alpha) rotation(phi2)")
        p.add_argument("--alpha", help="pure boost02 rapidity (used when --cartan is absent)")

    p = add("zonal", cmd_zonal, "zonal spherical function")
    p.add_argument("--sigma", required=True)
    p.add_argument("--alpha")
    p.add_argument("--alpha-grid")

    p = add("assoc", cmd_assoc, "associated spherical function")
    p.add_argument("--sigma", required=True)
    p.add_argument("--m", required=True, help="integer or start:stop:step")
    p.add_argument("--alpha")
    p.add_argument("--alpha-grid")

    p = add("matrix-element", cmd_matrix_element, "canonical-basis matrix element t_{m_out,m_in}(g)")
    p.add_argument("--sigma", required=True)
    p.add_argument("--m-out", required=True)
    p.add_argument("--m-in", required=True)
    group_args(p)

    p = add("fourier-lambda", cmd_fourier_lambda, "Fourier coefficient of (1 - cos psi)^lambda")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--method", choices=("closed", "quadrature"), default="closed")

    p = add("phi-m", cmd_phi_m, "weight Gamma(m+sigma+1)/Gamma(m-sigma) of the invariant form")
    p.add_argument("--sigma", required=True)
    p.add_argument("--m", required=True)

    p = add("wigner3", cmd_wigner3, "normalized Wigner coefficient")
    p.add_argument("--sigmas", required=True)
    p.add_argument("--ms", required=True)
    p.add_argument("--form", choices=("series", "3h3"), default="series")

    p = add("wigner3-oracle", cmd_wigner3_oracle, "Wigner coefficient by 2-D quadrature")
    p.add_argument("--sigmas", required=True)
    p.add_argument("--ms", required=True)
    p.add_argument("--levels", type=int, default=4, help="grid levels for extrapolation (1 = plain rule)")

    p = add("covariance-check", cmd_covariance_check, "covariance residual of the Wigner coefficients")
    p.add_argument("--sigmas", required=True)
    p.add_argument("--ms", required=True)
    p.add_argument("--M", default="6,8,10,12", help="comma-separated truncation orders")
    group_args(p)

    p = add("orbit", cmd_orbit, "classify a momentum; value is m^2")
    p.add_argument("--p", required=True)
    p.add_argument("--orbit-tol", type=float, default=None)

    p = add("wigner-rotation", cmd_wigner_rotation, "little-group parameter of h(p)^-1 r h(r^-1 p)")
    p.add_argument("--p", required=True)
    group_args(p)

    p = add("induced-action", cmd_induced_action, "multiplier and new momentum of the induced representation")
    p.add_argument("--label", required=True, help="mass:m,s | tachyon:m,s | helicity:lam")
    p.add_argument("--p", required=True)
    p.add_argument("--a", help="translation a0,a1,a2")
    group_args(p)

    p = add("measure", cmd_measure, "orbit measure density in chart coordinates")
    p.add_argument("--case", choices=tuple(_CASES), required=True)
    p.add_argument("--coords", required=True)

    p = add("verify", cmd_verify, "run acceptance suites")
    p.add_argument("--suite", default="all", choices=("all",) + tuple(verify.SUITES))
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        records = args.func(args)
    except UsageError as exc:
        print(f"so21: error: {exc}", file=sys.stderr)
        return 2
    emit(records, args.format, stdout)
    return 0 if all(r["status"] == "ok" for r in records) else 3


def main():
    sys.exit(run())
