"""Command line front end.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 verification
failure, 5 data integrity failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from pathlib import Path

import mpmath

from . import known_values as K
from . import oracle, septic, verify, zfp
from .errors import DataIntegrityError, DomainError, ZolotarevError
from .numerics import DEFAULT_PRECISION, MIN_PRECISION
from .paper_data import load_tables

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4
EXIT_DATA = 5


def fmt(x, precision: int) -> str:
    return mpmath.nstr(x, precision, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def render(pairs, fmt_name: str) -> str:
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(pairs)
        return buf.getvalue()
    if fmt_name == "table":
        width = max(len(k) for k, _ in pairs)
        return "".join(f"{k:<{width}}  {v}\n" for k, v in pairs)
    return "".join(f"{k} = {v}\n" for k, v in pairs)


def parse_structured(text: str) -> dict:
    out = {}
    for ln in text.splitlines():
        if "=" in ln:
            k, v = ln.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _tables(args):
    return load_tables(args.data) if args.data else None


def _resolve_t(args, tables):
    """Parameter as a decimal string rounded to the working precision."""
    p = args.precision
    if args.s is not None:
        return fmt(zfp.solve_parameter(args.s, p, tables=tables), p)
    with mpmath.workdps(p):
        return fmt(mpmath.mpf(args.t), p)


def construct_pairs(t: str, precision: int, s0=None, tables=None) -> list:
    r = septic.construct(t, precision, tables=tables)
    f = lambda v: fmt(v, precision)  # noqa: E731
    pairs = []
    if s0 is not None:
        pairs.append(("s0", str(s0)))
    pairs += [("t", f(r.t)), ("precision", str(precision)), ("omega", f(r.omega))]
    pairs += [(f"b{k}", f(v)) for k, v in enumerate(r.b)]
    pairs += [(f"a{k}", f(v)) for k, v in enumerate(r.a)]
    pairs += [("L", f(r.L)), ("alpha", f(r.alpha)), ("beta", f(r.beta)),
              ("gamma", f(r.gamma)), ("s", f(r.s))]
    pairs += [(f"z{k}", f(v)) for k, v in enumerate(r.z)]
    return pairs


def cmd_construct(args) -> int:
    tables = _tables(args)
    t = _resolve_t(args, tables)
    _emit(render(construct_pairs(t, args.precision, args.s, tables), args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tables = _tables(args)
    if args.from_file:
        doc = parse_structured(Path(args.from_file).read_text())
        if "t" not in doc:
            raise _Usage(f"{args.from_file}: no 't = ...' line")
        t = doc["t"]
        if "precision" in doc and not args.precision_given:
            args.precision = int(doc["precision"])
    elif args.t is None and args.s is None:
        raise _Usage("verify needs one of --t, --s or --from-file")
    else:
        t = _resolve_t(args, tables)
    rep = verify.full_report(t, args.precision, tables=tables)
    _emit(render(list(rep.as_dict().items()), args.format), args.out)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def sample_rows(t: str, points: int, kind: str, precision: int, tables=None) -> list:
    """Uniform grid on [-1.1, beta + 0.05] merged with -1, 1, alpha and beta."""
    r = septic.construct(t, precision, tables=tables)
    with mpmath.workdps(precision):
        poly = r.monic if kind == "monic" else r.normalized
        lo, hi = mpmath.mpf("-1.1"), r.beta + mpmath.mpf("0.05")
        xs = [lo + (hi - lo) * i / (points - 1) for i in range(points)]
        xs = sorted(set(xs) | {mpmath.mpf(-1), mpmath.mpf(1), r.alpha, r.beta})
        return [(fmt(x, precision), fmt(poly(x), precision)) for x in xs]


def cmd_sample(args) -> int:
    if args.points < 2:
        raise _Usage("--points must be >= 2")
    tables = _tables(args)
    t = _resolve_t(args, tables)
    rows = sample_rows(t, args.points, args.range, args.precision, tables)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value"])
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def selfcheck_checks(precision: int, tables):
    """Yield ``(name, ok, detail)`` for every self check."""
    r = septic.construct(K.T_EXAMPLE, precision, tables=tables)
    ok = all(K.agrees(x, v) for x, v in zip(r.b, K.B_AT_MINUS_21))
    yield "example t=-21 coefficients b0..b7", ok, ""
    vals = [(r.L, K.L_AT_MINUS_21), (r.s, K.S_AT_MINUS_21), (r.alpha, K.ALPHA_AT_MINUS_21),
            (r.beta, K.BETA_AT_MINUS_21), (r.gamma, K.GAMMA_AT_MINUS_21)]
    yield "example t=-21 L, s, alpha, beta, gamma", all(K.agrees(x, v) for x, v in vals), ""
    yield "example t=-21 z1..z5", all(K.agrees(x, v) for x, v in zip(r.z[1:6], K.Z_AT_MINUS_21)), ""

    sol = zfp.solve_zfp(K.S0_EXAMPLE, precision, tables=tables)
    ok = (K.agrees(sol.t0, K.T0_FOR_S0_2) and K.agrees(sol.L, K.L_FOR_S0_2)
          and all(K.agrees(x, v) for x, v in zip(sol.monic.coeffs, K.A_FOR_S0_2)))
    yield "example s0=2 (t0, monic coefficients, L)", ok, fmt(sol.t0, 15)

    tu = zfp.find_unit_leading_parameter(precision, tables=tables)
    yield "unit leading coefficient parameter", K.agrees(tu, K.T_UNIT_LEADING), fmt(tu, 15)

    for end in ("lower", "upper"):
        d = [septic.boundary_distance(end, mpmath.mpf(10) ** -k, precision, tables=tables) for k in (2, 4, 6)]
        yield f"limit continuity ({end})", d[0] > d[1] > d[2], ", ".join(mpmath.nstr(v, 4) for v in d)

    for s0 in ("0.1", "2"):
        orc = oracle.remez_minimax(s0)
        L = zfp.solve_zfp(s0, precision, tables=tables).L
        with mpmath.workdps(precision):
            rel = abs(orc.L - L) / L
        yield f"remez oracle s0={s0}", rel < mpmath.mpf("1e-8"), mpmath.nstr(rel, 3)

    rep = verify.full_report(K.T_EXAMPLE, precision, tables=tables)
    yield "identity report t=-21", rep.passed, ",".join(rep.failures)

    certs = verify.sign_certificates(tables=tables)
    ok = all(c.constant for c in certs) and all(c.sign > 0 for c in certs if c.k % 2)
    yield "radicands positive, b0/b2/b4/b6 of constant sign on I7", ok, \
        " ".join(f"b{c.k}{'+' if c.sign > 0 else '-'}" for c in certs if c.k % 2 == 0)


def cmd_selfcheck(args) -> int:
    start = time.time()
    try:
        tables = load_tables(args.data) if args.data else load_tables()
    except DataIntegrityError as exc:
        print(f"FAIL  data integrity: {exc}")
        return EXIT_DATA
    print("PASS  data integrity (fingerprints, degrees, factorisations)")
    failed = []
    for name, ok, detail in selfcheck_checks(args.precision, tables):
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
        if not ok:
            failed.append(name)
    print(f"{'all checks passed' if not failed else f'{len(failed)} check(s) failed'} "
          f"in {time.time() - start:.1f}s")
    return EXIT_OK if not failed else EXIT_VERIFY


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help=f"working precision in decimal digits (default {DEFAULT_PRECISION})")
    common.add_argument("--data", help="coefficient data file (default: bundled; env ZOLOTAREV7_DATA)")

    target = argparse.ArgumentParser(add_help=False)
    g = target.add_mutually_exclusive_group()
    g.add_argument("--t", help="parameter t in (theta, -13)")
    g.add_argument("--s", help="prescribed s0 > tan(pi/14)^2")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--format", choices=("structured-text", "table", "csv"), default="structured-text")
    out.add_argument("--out", help="write to this file instead of stdout")

    p = _Parser(prog="zolotarev7", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("construct", parents=[common, target, out], help="evaluate Z_{7,t}")
    c.set_defaults(func=cmd_construct, needs_target=True)
    v = sub.add_parser("verify", parents=[common, target, out], help="residual report")
    v.add_argument("--from-file", help="read t (and precision) from a construct output file")
    v.set_defaults(func=cmd_verify, needs_target=False)
    s = sub.add_parser("sample", parents=[common, target], help="CSV samples for plotting")
    s.add_argument("--points", type=int, default=201)
    s.add_argument("--range", choices=("monic", "normalized"), default="normalized")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_sample, needs_target=True)
    sc = sub.add_parser("selfcheck", parents=[common], help="run the built-in checks")
    sc.set_defaults(func=cmd_selfcheck, needs_target=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.precision_given = args.precision is not None
        if args.precision is None:
            args.precision = DEFAULT_PRECISION
        if args.precision < MIN_PRECISION:
            raise _Usage(f"--precision must be >= {MIN_PRECISION}")
        if args.needs_target and args.t is None and args.s is None:
            raise _Usage(f"{args.command} needs --t or --s")
        return args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataIntegrityError as exc:
        print(f"data integrity error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, mpmath.libmp.ComplexResult) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZolotarevError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
