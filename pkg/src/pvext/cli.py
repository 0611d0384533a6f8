"""Command-line front end.

Subcommands: derive (run the full construction for a type/rank), verify
(byte-exact comparison of a derivation against golden fixtures), bruhat
(normal form of an exact SL_n matrix), gauge-normalize (gauge a plane
matrix to the generic shape).  Exit codes: 0 ok, 1 usage error, 2
computation failure, 3 fixture mismatch.
"""

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from . import bruhat as bruhat_mod
from . import chevalley, construct, gauge
from .diffpoly import DiffPoly, parse as parse_poly
from .errors import PvextError, UnsupportedType

_TYPES = ("A", "B", "C", "D", "G2")


def _write_output(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _require_system(args):
    if args.type not in _TYPES:
        raise UnsupportedType("unknown type %r" % args.type)
    return args.type, args.rank


def _report_text(result):
    lines = []
    rs = result.rep.rs
    lines.append("system %s rank %d  (m = %d)" % (rs.type_label, rs.rank, rs.m))
    lines.append(
        "negative roots: "
        + ", ".join("b%d=%r" % (i + 1, list(b.coeffs)) for i, b in enumerate(rs.neg_order))
    )
    lines.append("complementary indices: %s" % (list(rs.comp_roots),))
    for i, v in sorted(result.stage1.v.items()):
        lines.append("v_%d = %s" % (i, v.text()))
    for i, g in enumerate(result.stage2.g, 1):
        lines.append("g_%d = %s" % (i, g.text()))
    for i, e in enumerate(result.stage2.ell, 1):
        lines.append("l_%d = %s" % (i, e.text()))
    for i, p in enumerate(result.stage2.p, 1):
        lines.append("p_%d = %s" % (i, p.text()))
    lines.append("c = %s" % ([str(c) for c in result.liouville.c],))
    for i, g in enumerate(result.liouville.gbar, 1):
        lines.append("gbar_%d = %s" % (i, g.text()))
    for i, z in enumerate(result.liouville.z, 1):
        lines.append("z_%d = %s" % (i, z.text()))
    for i, y in enumerate(result.liouville.y, 1):
        lines.append("y_%d = %s" % (i, y.text()))
    for i, h in enumerate(result.h_raw, 1):
        lines.append("h_%d(full) = %s" % (i, h.text()))
    for k, f in sorted(result.invariants.f.items()):
        lines.append("f_%d = %s" % (k, f.text()))
    for k in sorted(result.invariants.h):
        lines.append("invariant h[%d] = %s" % (k, result.invariants.h[k].text()))
    return "\n".join(lines) + "\n"


def cmd_derive(args):
    type_label, rank = _require_system(args)
    result = construct.run_pipeline(type_label, rank)
    if args.format == "json":
        _write_output(construct.report_json(result), args.output)
    else:
        _write_output(_report_text(result), args.output)
    return 0


def _default_fixtures():
    ref = resources.files("pvext").joinpath("data/fixtures.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def _json_diff(a, b, path=""):
    """First differing path between two JSON-like values, or None."""
    if type(a) is not type(b):
        return "%s: type %s != %s" % (path or "/", type(a).__name__, type(b).__name__)
    if isinstance(a, dict):
        for key in sorted(set(a) | set(b)):
            if key not in a:
                return "%s/%s: missing on the derived side" % (path, key)
            if key not in b:
                return "%s/%s: unexpected on the derived side" % (path, key)
            got = _json_diff(a[key], b[key], "%s/%s" % (path, key))
            if got:
                return got
        return None
    if isinstance(a, list):
        if len(a) != len(b):
            return "%s: length %d != %d" % (path or "/", len(a), len(b))
        for i, (x, y) in enumerate(zip(a, b)):
            got = _json_diff(x, y, "%s[%d]" % (path, i))
            if got:
                return got
        return None
    if a != b:
        return "%s: %r != %r" % (path or "/", a, b)
    return None


def cmd_verify(args):
    if args.fixtures:
        with open(args.fixtures, "r", encoding="utf-8") as handle:
            fixtures = json.load(handle)
    else:
        fixtures = _default_fixtures()
    failures = []
    for name in sorted(fixtures):
        spec = fixtures[name]
        result = construct.run_pipeline(spec["type"], spec["rank"])
        derived = json.loads(construct.report_json(result))
        expected = spec["report"]
        if json.dumps(derived, sort_keys=True) != json.dumps(expected, sort_keys=True):
            where = _json_diff(expected, derived)
            failures.append("%s: %s" % (name, where))
            sys.stderr.write("fixture %s MISMATCH at %s\n" % (name, where))
        else:
            sys.stdout.write("fixture %s ok\n" % name)
    if failures:
        return 3
    return 0


def _parse_matrix_entry(raw):
    if isinstance(raw, dict):
        return DiffPoly.from_json_obj(raw)
    if isinstance(raw, (int, float)):
        return Fraction(raw)
    text = str(raw).strip()
    if any(ch.isalpha() or ch == "η" for ch in text):
        return parse_poly(text)
    return Fraction(text)


def _load_matrix(path):
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, list) or not data or not all(
        isinstance(row, list) and len(row) == len(data) for row in data
    ):
        raise ValueError("matrix file must hold a square array of rows")
    return [[_parse_matrix_entry(x) for x in row] for row in data]


def _frac_str(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def cmd_bruhat(args):
    m = _load_matrix(args.matrix)
    m = [[Fraction(x) if not isinstance(x, Fraction) else x for x in row] for row in m]
    form = bruhat_mod.bruhat_decompose(m, convention=args.convention)
    obj = {
        "w": list(form.perm),
        "word": list(form.word),
        "uprime": [[_frac_str(x) for x in row] for row in form.uprime],
        "t": [_frac_str(form.t[i][i]) for i in range(len(form.t))],
        "u": [[_frac_str(x) for x in row] for row in form.u],
        "x": [_frac_str(x) for x in form.x],
        "z": [_frac_str(x) for x in form.z],
        "y": [_frac_str(x) for x in form.y],
    }
    _write_output(json.dumps(obj, sort_keys=True, indent=1), args.output)
    return 0


def cmd_gauge_normalize(args):
    type_label, rank = _require_system(args)
    rep = chevalley.build_rep(type_label, rank)
    a = _load_matrix(args.matrix)
    a = [[x if isinstance(x, DiffPoly) else DiffPoly.rational(x) for x in row] for row in a]
    g, factors, f = gauge.normalize_to_AG(rep, a)
    obj = {
        "transform": construct.matrix_json(g),
        "f": {str(k): v.to_json_obj() for k, v in sorted(f.items())},
        "f_text": {str(k): v.text() for k, v in sorted(f.items())},
    }
    _write_output(json.dumps(obj, sort_keys=True, indent=1), args.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pvext",
        description="generic Picard-Vessiot constructions for classical groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="run the full construction")
    p.add_argument("--type", required=True, choices=_TYPES)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--format", default="text", choices=("text", "json"))
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="check derivations against golden fixtures")
    p.add_argument("--fixtures", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bruhat", help="Bruhat normal form of an exact SL_n matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--convention", default="negative", choices=("negative", "positive"))
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bruhat)

    p = sub.add_parser("gauge-normalize", help="gauge a plane matrix to A_G(f)")
    p.add_argument("--type", required=True, choices=_TYPES)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--matrix", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gauge_normalize)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UnsupportedType as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return 1
    except PvextError as exc:
        sys.stderr.write("computation failed: %s: %s\n" % (type(exc).__name__, exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
