"""Simple graphs on dense integer vertices, graph6 I/O, bipartition scans,
and a desk-scale isomorphism backtracker.

Graph objects are immutable after construction and safe to share across
threads or processes. Vertices are always 0..n-1; operations that relabel
(induced subgraphs, isolated-vertex removal) keep the ascending order of the
surviving original indices.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations

_MASK64 = (1 << 64) - 1


class Graph6ParseError(ValueError):
    """Malformed graph6 text; `offset` is the byte position of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph:
    """Immutable simple graph: vertex count `n` plus per-vertex neighbor sets.

    Adjacency is symmetric and loop-free by construction; duplicate edges in
    the input collapse silently (set representation).
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)
        self._hash = None

    def edges(self):
        """Sorted tuple of edges as (u, v) pairs with u < v."""
        return tuple(
            (u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v
        )

    @property
    def edge_count(self):
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v):
        return len(self.adj[v])

    def degrees(self):
        return tuple(len(s) for s in self.adj)

    def has_edge(self, u, v):
        return v in self.adj[u]

    def components(self):
        """Connected components as sorted vertex lists, ordered by minimum."""
        seen = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            queue = deque([s])
            seen.add(s)
            comp = []
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in sorted(self.adj[v]):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges()))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


def induced_subgraph(g, vertices):
    """Induced subgraph on `vertices`, relabeled 0..k-1 in ascending order."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges()
        if u in index and v in index
    ]
    return Graph(len(keep), edges)


def remove_isolated(g):
    """Drop degree-0 vertices; the edge set is untouched."""
    return induced_subgraph(g, [v for v in range(g.n) if g.adj[v]])


# ---------------------------------------------------------------------------
# graph6 encoding (the standard small-graph interchange format)
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def write_graph6(g):
    """Encode into one graph6 line. Supports n <= 62 (single-byte size)."""
    if g.n > 62:
        raise ValueError("graph6 writer supports at most 62 vertices")
    out = [chr(g.n + 63)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (1 if g.has_edge(i, j) else 0)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text):
    """Decode one graph6 line (optionally prefixed with '>>graph6<<')."""
    line = text.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    if not line:
        raise Graph6ParseError("empty graph6 input", 0)
    first = ord(line[0])
    if first == 126:
        raise Graph6ParseError("extended (n > 62) graph6 sizes unsupported", 0)
    n = first - 63
    if not 0 <= n <= 62:
        raise Graph6ParseError(f"size byte {first} outside 63..125", 0)
    need = n * (n - 1) // 2
    nbytes = (need + 5) // 6
    body = line[1:]
    if len(body) < nbytes:
        raise Graph6ParseError(
            f"truncated: need {nbytes} adjacency bytes, got {len(body)}",
            len(line),
        )
    if len(body) > nbytes:
        raise Graph6ParseError("trailing garbage after adjacency bits", 1 + nbytes)
    bits = []
    for k, ch in enumerate(body):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise Graph6ParseError(f"byte {ord(ch)} outside graph6 range", 1 + k)
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[need:]):
        raise Graph6ParseError("nonzero padding bits", 1 + nbytes - 1)
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Seeded random graphs
# ---------------------------------------------------------------------------


def _splitmix64(state):
    """One SplitMix64 step; returns (next_state, 64-bit output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return state, z


def random_gnp(n, p, seed):
    """G(n, p) with exact rational p and a SplitMix64 draw stream.

    Unordered pairs are scanned in lexicographic order; pair {i, j} becomes
    an edge iff the 64-bit draw u satisfies u < p * 2^64, decided in integer
    arithmetic. Fixed seed gives bit-identical graphs on every platform.
    """
    p = Fraction(p)
    if p < 0 or p > 1:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    state = seed & _MASK64
    threshold = p.numerator << 64
    edges = []
    for i, j in combinations(range(n), 2):
        state, draw = _splitmix64(state)
        if draw * p.denominator < threshold:
            edges.append((i, j))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Bipartitions
# ---------------------------------------------------------------------------


class Bipartition:
    """A verified 2-coloring: every edge has one endpoint on each side."""

    __slots__ = ("graph", "side_a", "side_b")

    def __init__(self, graph, side_a, side_b):
        side_a = frozenset(side_a)
        side_b = frozenset(side_b)
        if side_a & side_b or side_a | side_b != frozenset(range(graph.n)):
            raise ValueError("sides must partition the vertex set")
        for u, v in graph.edges():
            if (u in side_a) == (v in side_a):
                raise ValueError(f"edge ({u}, {v}) does not cross the sides")
        self.graph = graph
        self.side_a = side_a
        self.side_b = side_b

    def swapped(self):
        return Bipartition(self.graph, self.side_b, self.side_a)

    def __repr__(self):
        return f"Bipartition(A={sorted(self.side_a)}, B={sorted(self.side_b)})"


class BipartitionScan:
    """Per-component 2-colorings of a bipartite graph, or an odd-cycle witness.

    `components` pairs each component with its unique coloring (side0 holds
    the component's smallest vertex). `assignments()` enumerates all
    2^(#components) global (A, B) choices; bit k of the enumeration index
    selects the orientation of component k.
    """

    def __init__(self, graph, components, odd_cycle):
        self.graph = graph
        self.components = components
        self.odd_cycle = odd_cycle

    @property
    def is_bipartite(self):
        return self.odd_cycle is None

    def assignments(self):
        if not self.is_bipartite:
            raise ValueError("graph is not bipartite")
        c = len(self.components)
        for mask in range(1 << c):
            a, b = set(), set()
            for k, (side0, side1) in enumerate(self.components):
                if (mask >> k) & 1:
                    a.update(side1)
                    b.update(side0)
                else:
                    a.update(side0)
                    b.update(side1)
            yield Bipartition(self.graph, a, b)


def _odd_cycle_from_conflict(parent, u, v):
    # Walk both BFS-tree paths to the root, cut at the lowest common ancestor.
    path_u, path_v = [u], [v]
    while parent[path_u[-1]] is not None:
        path_u.append(parent[path_u[-1]])
    while parent[path_v[-1]] is not None:
        path_v.append(parent[path_v[-1]])
    on_u = {x: i for i, x in enumerate(path_u)}
    lca_idx = next(i for i, x in enumerate(path_v) if x in on_u)
    lca = path_v[lca_idx]
    cycle = path_u[: on_u[lca] + 1] + path_v[:lca_idx][::-1]
    assert len(cycle) % 2 == 1
    return tuple(cycle)


def bipartitions(g):
    """BFS 2-coloring of every component.

    Returns a BipartitionScan; when some component has an odd cycle the scan
    carries the cycle (closed vertex sequence of odd length) as refutation.
    """
    color = {}
    parent = {}
    components = []
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = deque([s])
        side0, side1 = [s], []
        while queue:
            v = queue.popleft()
            for w in sorted(g.adj[v]):
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    (side0 if color[w] == 0 else side1).append(w)
                    queue.append(w)
                elif color[w] == color[v]:
                    cycle = _odd_cycle_from_conflict(parent, v, w)
                    return BipartitionScan(g, (), cycle)
        components.append((tuple(sorted(side0)), tuple(sorted(side1))))
    return BipartitionScan(g, tuple(components), None)


# ---------------------------------------------------------------------------
# Isomorphism (backtracking, intended for n <= 12)
# ---------------------------------------------------------------------------


def _refine_signatures(g):
    # (degree, sorted neighbor degrees) is a cheap one-round refinement.
    deg = g.degrees()
    return tuple((deg[v], tuple(sorted(deg[w] for w in g.adj[v]))) for v in range(g.n))


def _search_order(g):
    # BFS per component from the highest-degree vertex, so that each mapped
    # vertex after the root has at least one mapped neighbor to prune on.
    order = []
    seen = set()
    by_pref = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    for s in by_pref:
        if s in seen:
            continue
        queue = deque([s])
        seen.add(s)
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(g.adj[v], key=lambda x: (-len(g.adj[x]), x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def is_isomorphic(g1, g2):
    """True iff an edge-preserving bijection g1 -> g2 exists.

    Backtracking with degree-signature pruning; fine for the n <= 12 scale
    this package needs, not a general canonical-labeling engine.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    sig1, sig2 = _refine_signatures(g1), _refine_signatures(g2)
    if sorted(sig1) != sorted(sig2):
        return False
    order = _search_order(g1)
    image = [None] * g1.n
    used = [False] * g2.n

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        mapped_nb = [image[w] for w in g1.adj[v] if image[w] is not None]
        for u in range(g2.n):
            if used[u] or sig2[u] != sig1[v]:
                continue
            if any(not g2.has_edge(u, x) for x in mapped_nb):
                continue
            # mapped non-neighbors of v must stay non-neighbors of u
            ok = True
            for w in order[:k]:
                if w not in g1.adj[v] and g2.has_edge(u, image[w]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = u
            used[u] = True
            if extend(k + 1):
                return True
            image[v] = None
            used[u] = False
        return False

    return extend(0)
