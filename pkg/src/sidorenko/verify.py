"""Exact inequality verification over graph corpora, plus a classifier for
bipartite graphs whose density inequality is certified by arrangeability or
by tree box-product closure.

The inequality t_H(G) >= t_K2(G)^|E(H)| is decided in cross-multiplied
arbitrary-precision integer form: with e = |E(H)|, k = |V(H)| (isolated
vertices removed first, which changes neither side),

    |Hom(H, G)| * n^(2e - k)   vs   (2|E(G)|)^e .

No rational powers, no floats; the reported margin is the exact Fraction
t_H(G) - t_K2(G)^e.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arrangement import (
    NeighborhoodFamily,
    check_arrangement,
    decide_tree_arrangeable,
)
from .constructions import cartesian_product, hypercube_graph, nonisomorphic_trees
from .graphs import (
    Bipartition,
    bipartitions,
    induced_subgraph,
    is_isomorphic,
    parse_graph6,
    remove_isolated,
    write_graph6,
)
from .homomorphisms import count_hom


@dataclass(frozen=True)
class InequalityVerdict:
    holds: bool
    lhs: int
    rhs: int
    margin: Fraction
    hom_count: int
    isolated_removed: int


def sidorenko_check(h, g):
    """Exact verdict of t_H(G) >= t_K2(G)^|E(H)|.

    h must be bipartite with at least one edge (for non-bipartite h the
    inequality fails against any g with an edge, so it is rejected to avoid
    misuse); g must be nonempty. Isolated vertices of h are dropped first
    and counted in the verdict.
    """
    if g.n < 1:
        raise ValueError("target graph must be nonempty")
    if h.edge_count < 1:
        raise ValueError("pattern graph needs at least one edge")
    scan = bipartitions(h)
    if not scan.is_bipartite:
        raise ValueError(f"pattern graph is not bipartite: odd cycle {list(scan.odd_cycle)}")
    reduced = remove_isolated(h)
    e = reduced.edge_count
    k = reduced.n
    hom = count_hom(reduced, g)
    n = g.n
    two_m = 2 * g.edge_count
    lhs = hom * n ** (2 * e - k)  # 2e >= k once isolated vertices are gone
    rhs = two_m ** e
    margin = Fraction(hom, n ** k) - Fraction(two_m, n * n) ** e
    return InequalityVerdict(
        holds=lhs >= rhs,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        hom_count=hom,
        isolated_removed=h.n - reduced.n,
    )


# ---------------------------------------------------------------------------
# Corpus runs
# ---------------------------------------------------------------------------


def _eval_pair(task):
    h_id, h, g_id, g = task
    start = time.perf_counter()
    try:
        verdict = sidorenko_check(h, g)
    except ValueError as exc:
        return {"h_id": h_id, "g_id": g_id, "error": str(exc)}
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    m = verdict.margin
    return {
        "h_id": h_id,
        "g_id": g_id,
        "holds": verdict.holds,
        "lhs": str(verdict.lhs),
        "rhs": str(verdict.rhs),
        "margin": f"{m.numerator}/{m.denominator}",
        "timings": {"total_ms": round(elapsed_ms, 3)},
    }


def corpus_run(tasks, workers=1):
    """Evaluate (h_id, h, g_id, g) tasks; yields one record dict per task in
    input order regardless of worker count. Every record field except the
    timings is deterministic for fixed inputs."""
    tasks = list(tasks)
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(1, len(tasks) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_eval_pair, tasks, chunksize=chunk)
    else:
        for task in tasks:
            yield _eval_pair(task)


def summarize(records):
    """Aggregate corpus records: totals, violations, and the minimum margin."""
    pairs = holds = errors = 0
    violations = []
    min_margin = None
    min_pair = None
    for r in records:
        if "error" in r:
            errors += 1
            continue
        pairs += 1
        if r["holds"]:
            holds += 1
        else:
            violations.append([r["h_id"], r["g_id"]])
        margin = Fraction(r["margin"])
        if min_margin is None or margin < min_margin:
            min_margin = margin
            min_pair = [r["h_id"], r["g_id"]]
    return {
        "pairs": pairs,
        "holds": holds,
        "violations": violations,
        "errors": errors,
        "min_margin": None if min_margin is None else f"{min_margin.numerator}/{min_margin.denominator}",
        "min_margin_pair": min_pair,
    }


# ---------------------------------------------------------------------------
# Classification: arrangeable / closure-derived / unknown
# ---------------------------------------------------------------------------


def is_tree_graph(h):
    return h.n >= 1 and h.is_connected() and h.edge_count == h.n - 1


def is_even_cycle(h):
    return (
        h.n >= 4
        and h.n % 2 == 0
        and h.is_connected()
        and all(len(h.adj[v]) == 2 for v in range(h.n))
    )


def is_complete_bipartite(h):
    scan = bipartitions(h)
    if not scan.is_bipartite or len(scan.components) != 1:
        return False
    side0, side1 = scan.components[0]
    return h.edge_count == len(side0) * len(side1)


def is_hypercube(h):
    d = h.n.bit_length() - 1
    if h.n != 1 << d or h.n > 16:
        return False
    return is_isomorphic(h, hypercube_graph(d))


_KNOWN_FAMILIES = (
    ("tree", is_tree_graph),
    ("even-cycle", is_even_cycle),
    ("complete-bipartite", is_complete_bipartite),
    ("hypercube", is_hypercube),
)


@dataclass(frozen=True)
class ClassificationRecord:
    graph_id: str
    status: str  # tree-arrangeable | closure-derived | unknown
    derivation: tuple

    def to_json_dict(self):
        return {
            "graph_id": self.graph_id,
            "status": self.status,
            "derivation": list(self.derivation),
        }


def _tree_factor_step(h, tree_limit):
    """Search for a tree T and an induced layer S with h isomorphic to
    T box h[S]; layers of a box product are induced copies of the other
    factor, so induced subgraphs of the right order are the only candidates.
    """
    degrees = sorted(h.degrees())
    for tau in range(2, tree_limit + 1):
        if h.n % tau or h.n // tau < 1 or tau == h.n:
            continue
        k = h.n // tau
        inner_edges, rem = divmod(h.edge_count - (tau - 1) * k, tau)
        if rem or inner_edges < 0:
            continue
        for t in nonisomorphic_trees(tau):
            t_deg = t.degrees()
            for subset in combinations(range(h.n), k):
                inner = induced_subgraph(h, subset)
                if inner.edge_count != inner_edges:
                    continue
                combo = sorted(dt + dv for dt in t_deg for dv in inner.degrees())
                if combo != degrees:
                    continue
                if is_isomorphic(cartesian_product(t, inner), h):
                    inner_rec = classify(inner, tree_limit)
                    if inner_rec.status != "unknown":
                        return t, subset, inner_rec
    return None


def classify(h, tree_limit=6):
    """Classify a bipartite graph by the rules this toolkit can certify:

    tree-arrangeable   the decision procedure found a witness tree;
    closure-derived    a known base family (tree, even cycle, complete
                       bipartite, hypercube) or a box product of a tree
                       (up to `tree_limit` vertices) with a certified graph;
    unknown            neither route applies at desk scale.

    The derivation is replayable via replay_derivation.
    """
    graph_id = write_graph6(h)
    cert = decide_tree_arrangeable(h)
    if cert.arrangeable:
        return ClassificationRecord(
            graph_id,
            "tree-arrangeable",
            (
                {
                    "rule": "tree-arrangeable",
                    "side_a": list(cert.side_a),
                    "tree": [list(e) for e in cert.tree],
                },
            ),
        )
    for name, detector in _KNOWN_FAMILIES:
        if detector(h):
            return ClassificationRecord(
                graph_id,
                "closure-derived",
                ({"rule": "known-family", "family": name},),
            )
    found = _tree_factor_step(h, tree_limit)
    if found is not None:
        t, subset, inner_rec = found
        return ClassificationRecord(
            graph_id,
            "closure-derived",
            (
                {
                    "rule": "tree-product",
                    "tree_graph6": write_graph6(t),
                    "layer": list(subset),
                    "inner_status": inner_rec.status,
                    "inner": list(inner_rec.derivation),
                },
            ),
        )
    return ClassificationRecord(graph_id, "unknown", ())


def replay_derivation(h, record):
    """Re-apply the named rules of a classification record to h; True iff
    they reproduce its status."""
    return _replay(h, record.status, record.derivation)


def _replay(h, status, derivation):
    if status == "unknown":
        return len(derivation) == 0
    if not derivation:
        return False
    step = derivation[0]
    rule = step["rule"]
    if rule == "tree-arrangeable":
        if status != "tree-arrangeable":
            return False
        side_a = set(step["side_a"])
        side_b = set(range(h.n)) - side_a
        try:
            bip = Bipartition(h, side_a, side_b)
        except ValueError:
            return False
        fam = NeighborhoodFamily.from_bipartition(bip)
        tree = [tuple(e) for e in step["tree"]]
        try:
            return check_arrangement(fam, tree) is None
        except ValueError:
            return False
    if rule == "known-family":
        detector = dict(_KNOWN_FAMILIES).get(step["family"])
        return status == "closure-derived" and detector is not None and detector(h)
    if rule == "tree-product":
        if status != "closure-derived":
            return False
        t = parse_graph6(step["tree_graph6"])
        inner = induced_subgraph(h, step["layer"])
        if not is_isomorphic(cartesian_product(t, inner), h):
            return False
        return _replay(inner, step["inner_status"], step["inner"])
    return False
