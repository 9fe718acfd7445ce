"""Command-line front end: ``treearr <subcommand> [input] [options]``.

Exit status is 0 on success or a passing certificate, 1 on a failing
certificate and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import networkx as nx

from . import arrangement as arr_mod
from . import coalg
from . import lattice as lat_mod
from . import verify
from .certificate import Certificate
from .exactpoly import factored_to_poly
from .treecore import (
    ParseError,
    RootedTree,
    check_chordal_peo,
    comparability_graph,
    linear_extensions,
    parse_forest,
    parse_tree,
)

GRAMMAR = """\
input grammar:
  tree   := label [ '(' tree (',' tree)* ')' ]
  forest := tree (';' tree)*
  labels are alphanumeric and distinct, e.g. "a(b(c),d)" or "a(b);c"
  algebra words list generators parent-child, e.g. "a-b,b-c"
"""

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(d: dict, kind: str) -> str:
    out = {"schema": f"treearr.{kind}/1"}
    out.update(d)
    return json.dumps(out, sort_keys=True, ensure_ascii=False)


def _tree(text: str) -> RootedTree:
    return parse_tree(text)


def _labels(text: str) -> List[str]:
    labels = [x.strip() for x in text.split(",") if x.strip()]
    if len(set(labels)) != len(labels):
        raise UsageError("labels must be distinct")
    if not all(x.isalnum() for x in labels):
        raise UsageError("labels must be alphanumeric")
    return labels


def _certificate(cert: Certificate, fmt: str):
    if fmt == "json":
        return _dump(cert.to_dict(), "certificate"), cert.status
    return cert.to_text(), cert.status


# -- subcommand handlers: each returns (output text, passed) ---------------


def cmd_exponents(args):
    t = _tree(args.input)
    exps = arr_mod.exponents(t)
    if args.format == "json":
        return _dump({"tree": t.render(), "exponents": exps}, "exponents"), True
    return " ".join(map(str, exps)), True


def cmd_qform(args):
    t = _tree(args.input)
    arr = arr_mod.build_arrangement(t)
    q = arr_mod.defining_form(arr)
    factored = q.render(arr.names)
    expanded = factored_to_poly(q).render(arr.names)
    if args.format == "json":
        return _dump({
            "tree": t.render(),
            "hyperplanes": [h.render(arr.names) for h in arr.hyperplanes],
            "factored": factored,
            "expanded": expanded,
        }, "qform"), True
    return f"{factored}\n= {expanded}", True


def cmd_saito(args):
    arr = arr_mod.build_arrangement(_tree(args.input))
    return _certificate(arr_mod.saito_check(arr, grid_offset=args.grid_offset), args.format)


def cmd_log(args):
    arr = arr_mod.build_arrangement(_tree(args.input))
    return _certificate(arr_mod.logarithmic_check(arr), args.format)


def cmd_duality(args):
    arr = arr_mod.build_arrangement(_tree(args.input))
    return _certificate(arr_mod.duality_check(arr, grid_offset=args.grid_offset), args.format)


def cmd_relations(args):
    arr = arr_mod.build_arrangement(_tree(args.input))
    return _certificate(arr_mod.relation_span_check(arr), args.format)


def cmd_chordal(args):
    t = _tree(args.input)
    chordal = nx.is_chordal(comparability_graph(t))
    exts = list(linear_extensions(t))
    bad = [[t.labels[v] for v in order] for order in exts if not check_chordal_peo(t, order)]
    cert = Certificate(
        claim=f"comparability graph of T = {t.render()} is chordal with linear extensions as elimination orderings",
        status=chordal and not bad,
        witness={"chordal": chordal, "linear_extensions": len(exts), "failures": bad[:5]},
    )
    return _certificate(cert, args.format)


def cmd_lattice(args):
    lat = lat_mod.build_lattice(_tree(args.input))
    if args.format == "dot":
        return lat_mod.hasse_dot(lat).rstrip("\n"), True
    if args.format == "json":
        return lat_mod.lattice_json(lat), True
    mu = lat_mod.mobius(lat)
    lines = [f"L_T for T = {lat.tree.render()}: {len(lat)} elements, {len(lat.hasse)} covers"]
    for k, f in enumerate(lat.elements):
        lines.append(f"  rank {lat.rank[k]}  mu {mu[k]:+d}  {f.render()}")
    return "\n".join(lines), True


def cmd_charpoly(args):
    t = _tree(args.input)
    by_product = arr_mod.char_poly_product(t)
    by_mobius = lat_mod.char_poly_mobius(lat_mod.build_lattice(t))
    agree = by_product == by_mobius
    if args.format == "json":
        return _dump({
            "tree": t.render(),
            "product": by_product.render(),
            "mobius": by_mobius.render(),
            "agree": agree,
        }, "charpoly"), agree
    if agree:
        return by_product.render(), True
    return f"product: {by_product.render()}\nmobius:  {by_mobius.render()}\nMISMATCH", False


def cmd_chambers(args):
    t = _tree(args.input)
    cert = arr_mod.chamber_certificate(t)
    if args.format == "json":
        return _dump({"tree": t.render(), "chambers": arr_mod.chamber_count(t), **cert.witness}, "chambers"), cert.status
    return str(arr_mod.chamber_count(t)), cert.status


def cmd_cardpoly(args):
    t = _tree(args.input)
    lat = lat_mod.build_lattice(t)
    c = lat_mod.cardinality_poly(lat)
    agree = c == lat_mod.cardinality_poly_recursive(t)
    if args.format == "json":
        return _dump({"tree": t.render(), "poly": c.render(), "value_at_1_1": c(1, 1), "recursion_agrees": agree}, "cardpoly"), agree
    return c.render(), agree


def cmd_coproduct(args):
    f = parse_forest(args.input)
    d = coalg.coproduct(f)
    if args.format == "json":
        return coalg.to_json(d, "coproduct"), True
    return d.render(), True


def cmd_gamma(args):
    f = parse_forest(args.input)
    nodes = _labels(args.nodes) if args.nodes else []
    unknown = [v for v in nodes if v not in f.labels]
    if unknown:
        raise UsageError(f"unknown labels in --nodes: {', '.join(unknown)}")
    try:
        out = coalg.gamma(f, nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return _dump({"forest": f.render(), "nodes": sorted(nodes), "forests": [g.render() for g in out]}, "gamma"), True
    return "\n".join(g.render() for g in out), True


def _word(args) -> coalg.AlgebraWord:
    labels = _labels(args.labels) if args.labels else []
    return coalg.AlgebraWord.parse(args.input, labels)


def cmd_reduce(args):
    w = _word(args)
    red = coalg.algebra_reduce(w)
    if args.format == "json":
        if red is None:
            return _dump({"word": w.render(), "zero": True}, "reduce"), True
        return _dump({"word": w.render(), "zero": False, "sign": red[0], "forest": red[1].render()}, "reduce"), True
    if red is None:
        return "0", True
    sign, f = red
    return f"{'+' if sign > 0 else '-'}1·m[{f.render()}]", True


def cmd_rho(args):
    image = coalg.rho(_word(args))
    if args.format == "json":
        return coalg.to_json(image, "rho"), True
    return image.render(), True


def cmd_iso(args):
    return _certificate(coalg.iso_check(_labels(args.input)), args.format)


def cmd_sweep(args):
    if not 1 <= args.max_n <= 6:
        raise UsageError("--max-n must be between 1 and 6")
    results = verify.sweep(args.max_n)
    counts = verify.enumeration_summary(args.max_n)
    ok = all(r.passed for r in results)
    if args.format == "json":
        return _dump({"max_n": args.max_n, "counts": counts, "properties": [r.to_dict() for r in results], "status": "pass" if ok else "fail"}, "sweep"), ok
    lines = [f"n={c['n']}: {c['trees']} trees / {c['forests']} forests" for c in counts]
    lines += [r.to_text() for r in results]
    lines.append(f"{'PASS' if ok else 'FAIL'}: {sum(r.passed for r in results)}/{len(results)} properties")
    return "\n".join(lines), ok


# name, handler, what the positional input is (None for no positional)
COMMANDS = [
    ("exponents", cmd_exponents, "tree", "exponents of the arrangement (vertex depths)"),
    ("qform", cmd_qform, "tree", "defining polynomial Q_T"),
    ("saito-check", cmd_saito, "tree", "Saito determinant certificate of freeness"),
    ("log-check", cmd_log, "tree", "theta_i and omega_i are logarithmic"),
    ("duality-check", cmd_duality, "tree", "<omega_i, theta_j> = delta_ij"),
    ("lattice", cmd_lattice, "tree", "intersection lattice as forests (text, json or dot)"),
    ("charpoly", cmd_charpoly, "tree", "characteristic polynomial (product and Mobius routes)"),
    ("chambers", cmd_chambers, "tree", "number of chambers"),
    ("cardpoly", cmd_cardpoly, "tree", "cardinality polynomial C_T(y, z)"),
    ("coproduct", cmd_coproduct, "forest", "coproduct of a forest"),
    ("gamma", cmd_gamma, "forest", "forests below F with the given node set"),
    ("algebra-reduce", cmd_reduce, "word", "normal form of a word in the presented algebra"),
    ("rho", cmd_rho, "word", "image of a word in the dual algebra"),
    ("iso-check", cmd_iso, "labels", "certify the presentation isomorphism on a label set"),
    ("chordal-check", cmd_chordal, "tree", "chordality and elimination orderings"),
    ("relations-check", cmd_relations, "tree", "elementary relations span all relations"),
    ("sweep", cmd_sweep, None, "exhaustive verification over all small trees and forests"),
]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--grid-offset", type=int, default=1, help="base of the identity-testing grid")
    common.add_argument("--max-n", type=int, default=4, help="largest vertex count for sweep")

    parser = argparse.ArgumentParser(
        prog="treearr",
        description="Exact computations for arrangements of labeled rooted trees.",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True
    for name, handler, positional, help_text in COMMANDS:
        p = sub.add_parser(
            name,
            parents=[common],
            help=help_text,
            description=help_text,
            epilog=GRAMMAR,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        if positional == "labels":
            p.add_argument("input", metavar="LABELS", help='comma-separated labels, e.g. "a,b,c"')
        elif positional == "word":
            p.add_argument("input", metavar="WORD", help='generators parent-child, e.g. "a-b,a-c"')
            p.add_argument("--labels", default="", help="extra labels for the ambient set")
        elif positional:
            p.add_argument("input", metavar=positional.upper())
        if name == "gamma":
            p.add_argument("--nodes", default="", help="comma-separated node labels")
        p.set_defaults(handler=handler)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format == "dot" and args.command != "lattice":
        print(f"treearr {args.command}: --format dot is only available for 'lattice'; use text or json", file=sys.stderr)
        return EXIT_USAGE
    try:
        out, passed = args.handler(args)
    except ParseError as exc:
        print(f"treearr {args.command}: parse error: {exc}\n{GRAMMAR}", file=sys.stderr, end="")
        return EXIT_USAGE
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"treearr {args.command}: {msg}\n{GRAMMAR}", file=sys.stderr, end="")
        return EXIT_USAGE
    print(out)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
