"""Command line interface: ``koenig analyze|order|quiver|check|fixtures``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input,
3 the truncation was too small.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .chain import ConsistencyError, RingError, normalization_chain
from .field import FieldError
from .findim import FindimError, SplitFieldError, StructAlgebra, quiver, to_dot
from .fixtures import all_fixtures, get_fixture
from .inputspec import InputError, from_fixture, load
from .lattice import DomainError, LatticeError, PrecisionError, ShapeError
from .order import build_order
from .qha import HeredityError, build_Lambda, build_layers, product_algebra
from .report import analyze_spec, dumps, failed_checks, order_table, quiver_dict

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3


def _truncation(args):
    if args.truncation is not None:
        return args.truncation
    env = os.environ.get("KOENIG_TRUNCATION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError("KOENIG_TRUNCATION must be an integer, got %r" % env) from None
    return None


def _load(args):
    src = args.input
    presentations = {}
    if src.startswith("fixture:"):
        fx = get_fixture(src.split(":", 1)[1])
        spec = from_fixture(fx)
        presentations[fx.name] = fx.presentation
    else:
        try:
            spec = load(src)
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (src, exc.strerror)) from None
    if args.field:
        spec.field = args.field
        spec.field_object()
    return spec, presentations


def _emit(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    spec, pres = _load(args)
    report = analyze_spec(spec, _truncation(args), pres)
    _emit(dumps(report), args)
    return EXIT_OK


def cmd_check(args):
    spec, pres = _load(args)
    report = analyze_spec(spec, _truncation(args), pres)
    lines = []
    for p in report["points"]:
        for k, v in sorted(p["checks"].items()):
            lines.append("%-6s %s: %s" % ("PASS" if v else "FAIL", p["name"], k))
    if "curve" in report:
        for k, v in sorted(report["curve"]["checks"].items()):
            lines.append("%-6s curve: %s" % ("PASS" if v else "FAIL", k))
    if args.format == "json":
        _emit(dumps({"ok": report["ok"], "failed": failed_checks(report)}), args)
    else:
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if report["ok"] else EXIT_MATH


def _fmt_entry(e):
    vals = e["min_valuation"]
    v = vals[0] if len(set(vals)) == 1 else "(" + ",".join(map(str, vals)) + ")"
    return "t^%s|c%d" % (v, e["conductor"])


def cmd_order(args):
    spec, _ = _load(args)
    rings = spec.rings(_truncation(args))
    if args.format == "json":
        data = {R.name: order_table(build_order(normalization_chain(R))) for R in rings}
        _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args)
        return EXIT_OK
    out = []
    for R in rings:
        table = order_table(build_order(normalization_chain(R)))
        out.append("%s (level %d): entry = t^min valuation per branch | conductor exponent" % (R.name, len(table) - 1))
        cells = [[_fmt_entry(e) for e in row] for row in table]
        w = max(len(c) for row in cells for c in row)
        for row in cells:
            out.append("  " + "  ".join(c.rjust(w) for c in row))
    _emit("\n".join(out) + "\n", args)
    return EXIT_OK


def _global_Q(spec, rings, point=None):
    parts = []
    sel = [R for R in rings if point is None or R.name == point]
    if point is not None and not sel:
        raise InputError("no point named %r" % point)
    for k, R in enumerate(sel):
        ch = normalization_chain(R)
        if ch.level == 0:
            continue
        Q = build_layers(ch, build_order(ch))[-1].algebra
        labels = Q.idem_labels if len(sel) == 1 else ["%s_%d" % (l, k + 1) for l in Q.idem_labels]
        parts.append(StructAlgebra(Q.field, Q.dim, Q.table, Q.unit, Q.labels, Q.idempotents, labels, verify=False))
    if not parts:
        return None
    if len(parts) == 1:
        return parts[0]
    F = parts[0].field
    table, unit, labels, idem, il, _ = product_algebra(F, parts)
    return StructAlgebra(F, len(unit), table, unit, labels, idem, il, verify=False)


def cmd_quiver(args):
    spec, _ = _load(args)
    rings = spec.rings(_truncation(args))
    if args.algebra == "Q":
        A = _global_Q(spec, rings, args.point)
        Qv = quiver(A) if A is not None else None
        name = "Q"
    else:
        if not spec.components:
            raise InputError("Lambda needs components and attachments in the input")
        Qv = build_Lambda(spec.curve_config(rings)).quiver()
        name = "Lambda"
    if Qv is None:
        text = "digraph Q {\n}\n" if args.format == "dot" else dumps({"vertices": [], "arrows": []})
    elif args.format == "dot":
        text = to_dot(Qv, name)
    else:
        text = dumps(quiver_dict(Qv))
    _emit(text, args)
    return EXIT_OK


def cmd_fixtures(args):
    fxs = all_fixtures()
    if args.names:
        fxs = [get_fixture(n) for n in args.names]
    if args.action == "list":
        rows = ["%-4s family %s  branches %d  level %d  gl.dim(Q) %d" % (f.name, f.family, f.branches, f.level, f.gl_dim)
                for f in fxs]
        _emit("\n".join(rows) + "\n", args)
        return EXIT_OK
    ok_all = True
    rows, reports = [], {}
    t0 = time.perf_counter()
    for f in fxs:
        spec = from_fixture(f)
        rep = analyze_spec(spec, _truncation(args), {f.name: f.presentation})
        p = rep["points"][0]
        gl = p["Q"]["gl_dim"] if p["Q"] else 0
        expect = p["level"] == f.level and gl == f.gl_dim
        ok = rep["ok"] and expect
        ok_all = ok_all and ok
        reports[f.name] = rep
        bad = failed_checks(rep)
        if not expect:
            bad.append("expected level %d gl.dim %d" % (f.level, f.gl_dim))
        rows.append("%-6s %-4s level %d  dim Q %3s  gl.dim %s%s" % (
            "PASS" if ok else "FAIL", f.name, p["level"], p["Q"]["dim"] if p["Q"] else 0, gl,
            "" if ok else "  [" + ", ".join(bad) + "]"))
    rows.append("%d fixtures, %s, %.1f s" % (len(fxs), "all pass" if ok_all else "FAILURES", time.perf_counter() - t0))
    if args.format == "json":
        _emit(dumps(reports), args)
    else:
        _emit("\n".join(rows) + "\n", args)
    return EXIT_OK if ok_all else EXIT_MATH


def build_parser():
    ap = argparse.ArgumentParser(prog="koenig", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--truncation", type=int, default=None,
                        help="working t-adic truncation (default: automatic, or $KOENIG_TRUNCATION)")
    common.add_argument("--field", default=None, help="rational | prime:<p> (overrides the input)")
    common.add_argument("--out", default=None, help="write output to this path")
    sub = ap.add_subparsers(dest="command", required=True)
    inp = "input file, or fixture:<NAME> for a built-in germ"
    p = sub.add_parser("analyze", parents=[common], help="full pipeline, JSON report")
    p.add_argument("input", help=inp)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("order", parents=[common], help="valuation table of the order matrix")
    p.add_argument("input", help=inp)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_order)
    p = sub.add_parser("quiver", parents=[common], help="Ext-quiver of Q or Lambda")
    p.add_argument("input", help=inp)
    p.add_argument("--algebra", choices=["Q", "Lambda"], default="Q")
    p.add_argument("--point", default=None, help="restrict Q to one point")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_quiver)
    p = sub.add_parser("check", parents=[common], help="full invariant suite; exit code reports the verdict")
    p.add_argument("input", help=inp)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("fixtures", parents=[common], help="built-in ADE corpus")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("names", nargs="*", help="restrict to these fixtures")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrecisionError as exc:
        msg = "precision error: %s" % exc
        if getattr(exc, "advice", None):
            msg += "; retry with --truncation %s" % exc.advice
        print(msg, file=sys.stderr)
        return EXIT_PRECISION
    except SplitFieldError as exc:
        print("field error: %s; try a field where the residue algebras split (e.g. --field rational)" % exc,
              file=sys.stderr)
        return EXIT_INPUT
    except (InputError, FieldError, RingError, ShapeError, DomainError, KeyError) as exc:
        print("input error: %s" % (exc.args[0] if isinstance(exc, KeyError) else exc), file=sys.stderr)
        return EXIT_INPUT
    except (ConsistencyError, HeredityError, FindimError, LatticeError) as exc:
        print("check failed: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
