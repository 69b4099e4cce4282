"""Graph constructions: Cartesian and tensor products, the hom-graph
operator, the bipartite double, degree splitting, and a catalog of named
families.

Composite-vertex encodings are published so tests can address specific
vertices: pair (u1, u2) of a product gets index u1 * |V(right)| + u2, and
hom-graph vertices are the homomorphism tuples in lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from heapq import heapify, heappop, heappush
from itertools import product as iter_product

from .graphs import Graph, is_isomorphic
from .homomorphisms import SizeLimitError, enumerate_homomorphisms


class PairGraph(Graph):
    """Graph whose vertices encode ordered pairs; index = u1 * right_n + u2."""

    __slots__ = ("left_n", "right_n")

    def __init__(self, left_n, right_n, edges):
        super().__init__(left_n * right_n, edges)
        self.left_n = left_n
        self.right_n = right_n

    def pair_index(self, u1, u2):
        return u1 * self.right_n + u2

    def pair(self, idx):
        return divmod(idx, self.right_n)


def cartesian_product(h1, h2):
    """Box product: pairs adjacent iff equal in one coordinate and adjacent
    in the other. |E| = |V(h1)|*|E(h2)| + |V(h2)|*|E(h1)|."""
    n2 = h2.n
    edges = []
    for u1 in range(h1.n):
        for u2, v2 in h2.edges():
            edges.append((u1 * n2 + u2, u1 * n2 + v2))
    for u1, v1 in h1.edges():
        for u2 in range(n2):
            edges.append((u1 * n2 + u2, v1 * n2 + u2))
    return PairGraph(h1.n, h2.n, edges)


def tensor_product(g1, g2):
    """Categorical product: pairs adjacent iff adjacent in both coordinates.
    Makes homomorphism counts multiplicative."""
    n2 = g2.n
    edges = []
    for u1, v1 in g1.edges():
        for u2, v2 in g2.edges():
            edges.append((u1 * n2 + u2, v1 * n2 + v2))
            edges.append((u1 * n2 + v2, v1 * n2 + u2))
    return PairGraph(g1.n, g2.n, edges)


class HomGraph(Graph):
    """Graph on Hom(t, g): vertices are image tuples in lexicographic order,
    two tuples adjacent iff their images are adjacent coordinatewise."""

    __slots__ = ("mappings", "index", "source_n", "target_n")

    def __init__(self, mappings, edges, source_n, target_n):
        super().__init__(len(mappings), edges)
        self.mappings = tuple(mappings)
        self.index = {m: i for i, m in enumerate(self.mappings)}
        self.source_n = source_n
        self.target_n = target_n


def homomorphism_graph(t, g, max_homs=20000):
    """Build the hom-graph of maps t -> g (vertex set Hom(t, g)).

    Refuses once |Hom(t, g)| exceeds `max_homs`, since adjacency is
    quadratic in the vertex count.
    """
    if t.n == 0:
        raise ValueError("source graph needs at least one vertex")
    mappings = []
    for m in enumerate_homomorphisms(t, g):
        mappings.append(m)
        if len(mappings) > max_homs:
            raise SizeLimitError(f"hom-graph would exceed {max_homs} vertices")
    edges = []
    rng = range(t.n)
    for i in range(len(mappings)):
        mi = mappings[i]
        for j in range(i + 1, len(mappings)):
            mj = mappings[j]
            if all(mj[w] in g.adj[mi[w]] for w in rng):
                edges.append((i, j))
    return HomGraph(mappings, edges, t.n, g.n)


def _check_product_hom(t, h, g, mapping):
    hn = h.n
    if len(mapping) != t.n * hn or any(not 0 <= x < g.n for x in mapping):
        raise ValueError("not a map from V(t) x V(h) into V(g)")
    for w, w2 in t.edges():
        for v in range(hn):
            if not g.has_edge(mapping[w * hn + v], mapping[w2 * hn + v]):
                raise ValueError(
                    f"not a homomorphism: tree edge ({w},{w2}) at layer {v}"
                )
    for v, v2 in h.edges():
        for w in range(t.n):
            if not g.has_edge(mapping[w * hn + v], mapping[w * hn + v2]):
                raise ValueError(
                    f"not a homomorphism: edge ({v},{v2}) in copy {w}"
                )


def lift_hom(t, h, g, mapping, psi=None):
    """Transport a homomorphism (t box h) -> g to one h -> hom-graph(t, g).

    `mapping` is indexed by the published pair encoding w * |V(h)| + v.
    Returns the image tuple over V(h) of hom-graph vertex ids.
    """
    _check_product_hom(t, h, g, mapping)
    if psi is None:
        psi = homomorphism_graph(t, g)
    hn = h.n
    return tuple(
        psi.index[tuple(mapping[w * hn + v] for w in range(t.n))] for v in range(hn)
    )


def project_hom(t, h, g, mapping, psi=None):
    """Inverse transport: a homomorphism h -> hom-graph(t, g) back to one
    (t box h) -> g, indexed by the pair encoding."""
    if psi is None:
        psi = homomorphism_graph(t, g)
    if len(mapping) != h.n or any(not 0 <= x < psi.n for x in mapping):
        raise ValueError("not a map from V(h) into the hom-graph")
    for v, v2 in h.edges():
        if not psi.has_edge(mapping[v], mapping[v2]):
            raise ValueError(f"not a homomorphism: edge ({v},{v2}) not preserved")
    hn = h.n
    out = [0] * (t.n * hn)
    for v in range(hn):
        hv = psi.mappings[mapping[v]]
        for w in range(t.n):
            out[w * hn + v] = hv[w]
    return tuple(out)


def bipartite_double(h):
    """Two copies of V(h); vertices in opposite copies are adjacent iff they
    copy the same vertex or two adjacent vertices. Bipartite on 2n vertices
    with 2|E| + n edges; the second copy of v is n + v."""
    n = h.n
    edges = [(v, n + v) for v in range(n)]
    for u, v in h.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    return Graph(2 * n, edges)


def degree_split(g):
    """Split vertices of above-average degree into copies with disjoint
    neighbor shares.

    With avg = 2|E|/|V| (exact rational), vertex v becomes ceil(deg(v)/avg)
    copies; shares are as even as possible (larger shares first), neighbors
    handed out in ascending order, vertices processed in ascending order.
    The edge count is preserved, |V'| <= 2|V|, every share has size at most
    ceil(avg), and degree-0 vertices vanish (they contribute 0 copies).
    Output vertices are ordered by (original vertex, copy number).
    """
    m = g.edge_count
    if m == 0:
        raise ValueError("degree splitting needs at least one edge")
    avg = Fraction(2 * m, g.n)

    def label_key(x):
        return x if isinstance(x, tuple) else (x, -1)

    work = {v: set(g.adj[v]) for v in range(g.n)}
    for v in range(g.n):
        nbrs = sorted(work.pop(v), key=label_key)
        d = len(nbrs)
        copies = -(-d * avg.denominator // avg.numerator)  # ceil(d / avg)
        if copies == 0:
            continue
        q, r = divmod(d, copies)
        sizes = [q + 1] * r + [q] * (copies - r)
        at = 0
        for i, size in enumerate(sizes):
            share = nbrs[at:at + size]
            at += size
            work[(v, i)] = set(share)
            for w in share:
                work[w].discard(v)
                work[w].add((v, i))
    labels = sorted(work, key=label_key)
    index = {lab: i for i, lab in enumerate(labels)}
    edges = set()
    for lab, nbrs in work.items():
        for w in nbrs:
            edges.add(tuple(sorted((index[lab], index[w]))))
    return Graph(len(labels), sorted(edges))


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def path_graph(k):
    if k < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k):
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(leaves):
    if leaves < 0:
        raise ValueError("leaf count must be non-negative")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(k):
    if k < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def complete_bipartite_graph(a, b):
    if a < 1 or b < 1:
        raise ValueError("both sides need at least 1 vertex")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def grid_graph(*dims):
    """Box product of paths, one per dimension; dims are vertex counts."""
    if not dims:
        raise ValueError("grid needs at least one dimension")
    g = path_graph(dims[0])
    for d in dims[1:]:
        g = cartesian_product(g, path_graph(d))
    return g


def hypercube_graph(d):
    """d-fold box power of a single edge; 2^d vertices."""
    if d < 0:
        raise ValueError("dimension must be non-negative")
    g = Graph(1)
    for _ in range(d):
        g = cartesian_product(path_graph(2), g)
    return g


def k55_minus_c10():
    """Complete bipartite 5+5 minus the Hamilton cycle a0 b0 a1 b1 ... a4 b4:
    side vertices i and 5+j adjacent iff j != i and j != i-1 (mod 5).
    3-regular on 10 vertices."""
    edges = [
        (i, 5 + j)
        for i in range(5)
        for j in range(5)
        if j != i and j != (i - 1) % 5
    ]
    return Graph(10, edges)


NAMED_KEYS = (
    "path",
    "cycle",
    "star",
    "complete",
    "complete_bipartite",
    "grid",
    "hypercube",
    "k55_minus_c10",
)

_ARITY = {
    "path": (1, 1),
    "cycle": (1, 1),
    "star": (1, 1),
    "complete": (1, 1),
    "complete_bipartite": (2, 2),
    "grid": (1, None),
    "hypercube": (1, 1),
    "k55_minus_c10": (0, 0),
}


def named(key, params=()):
    """Build a catalog graph by its stable string key."""
    if key not in _ARITY:
        raise ValueError(f"unknown named graph {key!r}; keys: {', '.join(NAMED_KEYS)}")
    params = tuple(int(p) for p in params)
    lo, hi = _ARITY[key]
    if len(params) < lo or (hi is not None and len(params) > hi):
        raise ValueError(f"named graph {key!r} takes {lo}..{hi or 'any'} parameters")
    if key == "path":
        return path_graph(params[0])
    if key == "cycle":
        return cycle_graph(params[0])
    if key == "star":
        return star_graph(params[0])
    if key == "complete":
        return complete_graph(params[0])
    if key == "complete_bipartite":
        return complete_bipartite_graph(*params)
    if key == "grid":
        return grid_graph(*params)
    if key == "hypercube":
        return hypercube_graph(params[0])
    return k55_minus_c10()


# ---------------------------------------------------------------------------
# Tree enumeration (exhaustive oracles and factor searches)
# ---------------------------------------------------------------------------


def prufer_to_edges(seq, k):
    """Decode a Pruefer sequence over range(k) into a labeled tree edge list."""
    degree = [1] * k
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(k) if degree[v] == 1]
    heapify(leaves)
    edges = []
    for x in seq:
        leaf = heappop(leaves)
        edges.append(tuple(sorted((leaf, x))))
        degree[x] -= 1
        if degree[x] == 1:
            heappush(leaves, x)
    u = heappop(leaves)
    v = heappop(leaves)
    edges.append(tuple(sorted((u, v))))
    return edges


def labeled_trees(vertices):
    """Yield every labeled tree on `vertices` as an edge list (Cayley count:
    k^(k-2) trees)."""
    verts = list(vertices)
    k = len(verts)
    if k == 0:
        return
    if k == 1:
        yield []
        return
    if k == 2:
        yield [(min(verts), max(verts))]
        return
    for seq in iter_product(range(k), repeat=k - 2):
        yield [
            tuple(sorted((verts[a], verts[b]))) for a, b in prufer_to_edges(seq, k)
        ]


@lru_cache(maxsize=None)
def nonisomorphic_trees(k):
    """All trees on k vertices up to isomorphism, as Graphs."""
    reps = []
    for edges in labeled_trees(range(k)):
        g = Graph(k, edges)
        if not any(is_isomorphic(g, r) for r in reps):
            reps.append(g)
    return tuple(reps)
