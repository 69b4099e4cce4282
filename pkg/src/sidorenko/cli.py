"""Command-line surface.

Exit codes (stable contract): 0 success / inequality holds / arrangeable,
1 negative result (not arrangeable, violation found, identity failed),
2 usage or I/O error.

Graphs are addressed by a mini-language shared across subcommands:
  named:<key>[:<param>...]   catalog graph, e.g. named:cycle:4
  g6:<literal>               inline graph6
  file:<path>                first graph6 line of a file
Rationals on the command line are "p/q" (or integer "p") strings; floats
are rejected.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .arrangement import NeighborhoodFamily, decide_tree_arrangeable
from .constructions import (
    NAMED_KEYS,
    bipartite_double,
    cartesian_product,
    degree_split,
    homomorphism_graph,
    named,
    tensor_product,
)
from .functionals import certify_normalization_identities
from .graphs import Bipartition, bipartitions, parse_graph6, random_gnp, write_graph6
from .homomorphisms import count_hom
from .verify import corpus_run, summarize

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(ValueError):
    pass


def parse_rational(text):
    if not _RATIONAL_RE.match(text):
        raise UsageError(f"rational arguments are p/q strings, got {text!r}")
    return Fraction(text)


def parse_graph_spec(spec):
    if spec.startswith("named:"):
        parts = spec.split(":")
        return named(parts[1], parts[2:])
    if spec.startswith("g6:"):
        return parse_graph6(spec[3:])
    if spec.startswith("file:"):
        path = spec[5:]
        with open(path) as fh:
            for line in fh:
                if line.strip():
                    return parse_graph6(line)
        raise UsageError(f"no graph6 line in {path}")
    raise UsageError(f"graph spec must start with named:/g6:/file: (got {spec!r})")


def _collect_named_flags(ns):
    graphs = []
    for values in ns.named or []:
        graphs.append((f"named:{':'.join(values)}", named(values[0], values[1:])))
    for spec in ns.g or []:
        graphs.append((spec, parse_graph_spec(spec)))
    return graphs


def _emit(payload, out):
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def cmd_check_arrangeable(ns, out):
    graphs = _collect_named_flags(ns)
    if len(graphs) != 1:
        raise UsageError("check-arrangeable takes exactly one graph")
    cert = decide_tree_arrangeable(graphs[0][1])
    _emit(cert.to_json_dict(), out)
    return 0 if cert.arrangeable else 1


def cmd_count(ns, out):
    h = parse_graph_spec(ns.h)
    g = parse_graph_spec(ns.g)
    out.write(str(count_hom(h, g)) + "\n")
    return 0


def _g_sources(ns):
    """Yield (g_id, graph-or-None, error-or-None) from the selected source."""
    if ns.random:
        n_txt, p_txt, seed_txt, count_txt = ns.random
        n, seed, count = int(n_txt), int(seed_txt), int(count_txt)
        p = parse_rational(p_txt)
        for i in range(count):
            gid = f"random:{n}:{p_txt}:{seed}:{i}"
            yield gid, random_gnp(n, p, seed + i), None
        return
    if ns.g_file:
        with open(ns.g_file) as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                gid = f"file:{ns.g_file}:{lineno}"
                try:
                    yield gid, parse_graph6(line), None
                except ValueError as exc:
                    yield gid, None, str(exc)
        return
    for spec in ns.g or []:
        yield spec, parse_graph_spec(spec), None


def cmd_verify(ns, out):
    h_list = []
    for spec in ns.h or []:
        h_list.append((spec, parse_graph_spec(spec)))
    if ns.h_file:
        with open(ns.h_file) as fh:
            for lineno, line in enumerate(fh, start=1):
                if line.strip():
                    h_list.append((f"file:{ns.h_file}:{lineno}", parse_graph6(line)))
    if not h_list:
        raise UsageError("verify needs --h or --h-file")

    tasks = []
    error_records = []
    for gid, g, err in _g_sources(ns):
        if err is not None:
            error_records.append({"g_id": gid, "error": err})
            continue
        for hid, h in h_list:
            tasks.append((hid, h, gid, g))

    records = list(corpus_run(tasks, workers=ns.workers))
    records.extend(error_records)
    for record in records:
        _emit(record, out)
    summary = summarize(records)
    _emit({"summary": summary}, out)
    if ns.plot:
        from .report import render_margin_figure

        render_margin_figure(records, ns.plot)
    if error_records:
        return 2
    return 0 if not summary["violations"] else 1


def cmd_construct(ns, out):
    # binary ops read operands from --named flags in order, then --g flags
    graphs = _collect_named_flags(ns)
    op = ns.op
    if op == "named":
        if len(graphs) != 1:
            raise UsageError("construct named takes exactly one --named flag")
        result = graphs[0][1]
    elif op in ("product", "tensor", "psi"):
        if len(graphs) != 2:
            raise UsageError(f"construct {op} takes exactly two graphs")
        left, right = graphs[0][1], graphs[1][1]
        if op == "product":
            result = cartesian_product(left, right)
        elif op == "tensor":
            result = tensor_product(left, right)
        else:
            result = homomorphism_graph(left, right)
    elif op in ("phi", "split"):
        if len(graphs) != 1:
            raise UsageError(f"construct {op} takes exactly one graph")
        result = bipartite_double(graphs[0][1]) if op == "phi" else degree_split(graphs[0][1])
    else:
        raise UsageError(f"unknown construct operation {op!r}")
    out.write(write_graph6(result) + "\n")
    return 0


def _parse_tree_arg(text):
    edges = []
    for part in text.split(","):
        u, _, v = part.partition("-")
        edges.append((int(u), int(v)))
    return edges


def cmd_certify_proof(ns, out):
    h = parse_graph_spec(ns.h)
    g = parse_graph_spec(ns.g)
    eps = parse_rational(ns.eps)
    if eps <= 0:
        raise UsageError("--eps must be a positive rational")
    if ns.side:
        side_a = {int(v) for v in ns.side.split(",")}
        bip = Bipartition(h, side_a, set(range(h.n)) - side_a)
        fam = NeighborhoodFamily.from_bipartition(bip)
        if ns.tree is None:
            raise UsageError("--side requires --tree")
        tree = _parse_tree_arg(ns.tree)
    else:
        cert = decide_tree_arrangeable(h)
        if not cert.arrangeable and ns.tree is None:
            raise UsageError(
                "graph is not tree-arrangeable; pass --side/--tree explicitly"
            )
        scan = bipartitions(h)
        bip = Bipartition(h, set(cert.side_a), set(cert.side_b)) if cert.arrangeable \
            else next(scan.assignments())
        fam = NeighborhoodFamily.from_bipartition(bip)
        tree = _parse_tree_arg(ns.tree) if ns.tree else [tuple(e) for e in cert.tree]
    reports = certify_normalization_identities(fam, tree, g, eps)
    payload = {
        "eps": ns.eps,
        "side_a": list(fam.vertices),
        "tree": [list(e) for e in tree],
        "identities": [r.to_json_dict() for r in reports],
        "all_pass": all(r.passed for r in reports),
    }
    _emit(payload, out)
    return 0 if payload["all_pass"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sidorenko",
        description="Exact homomorphism-inequality toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_flags(p):
        p.add_argument("--named", nargs="+", action="append", metavar="KEY/PARAM",
                       help=f"catalog graph; keys: {', '.join(NAMED_KEYS)}")
        p.add_argument("--g", action="append", metavar="SPEC",
                       help="graph spec (named:/g6:/file:)")

    p = sub.add_parser("check-arrangeable", help="decide tree-arrangeability")
    add_graph_flags(p)
    p.set_defaults(func=cmd_check_arrangeable)

    p = sub.add_parser("count", help="|Hom(H, G)| as a decimal string")
    p.add_argument("--h", required=True, metavar="SPEC")
    p.add_argument("--g", required=True, metavar="SPEC")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="inequality check over a corpus")
    p.add_argument("--h", action="append", metavar="SPEC")
    p.add_argument("--h-file", metavar="PATH")
    p.add_argument("--g", action="append", metavar="SPEC")
    p.add_argument("--g-file", metavar="PATH")
    p.add_argument("--random", nargs=4, metavar=("N", "P", "SEED", "COUNT"),
                   help="seeded G(n, p) ensemble")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="PATH", help="write records here instead of stdout")
    p.add_argument("--plot", metavar="PATH", help="render a margin figure")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a graph, emit graph6")
    p.add_argument("op", choices=["product", "tensor", "psi", "phi", "split", "named"])
    add_graph_flags(p)
    p.add_argument("--out", metavar="PATH", help="write graph6 here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify-proof", help="certify normalization identities")
    p.add_argument("--h", required=True, metavar="SPEC")
    p.add_argument("--g", required=True, metavar="SPEC")
    p.add_argument("--eps", required=True, metavar="P/Q")
    p.add_argument("--side", metavar="V,V,...", help="explicit side A")
    p.add_argument("--tree", metavar="U-V,U-V,...", help="explicit tree on side A")
    p.set_defaults(func=cmd_certify_proof)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = sys.stdout
    close_out = False
    if getattr(ns, "out", None):
        out = open(ns.out, "w")
        close_out = True
    try:
        return ns.func(ns, out)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if close_out:
            out.close()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
