"""Exact homomorphism counting and densities.

Two independent counting routes are kept on purpose: pruned brute-force
enumeration (the oracle, desk scale only) and dynamic programming over a
heuristic tree decomposition (the workhorse, exact at any width the tables
can afford). Counts are Python ints, densities are Fractions; no floats
appear anywhere.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

BRUTE_H_LIMIT = 10
BRUTE_G_LIMIT = 8


class SizeLimitError(RuntimeError):
    """Raised when a routine is asked to exceed its intended scale."""


class InvalidDecomposition(ValueError):
    """A tree decomposition violated one of its three invariants."""


def _bfs_order(h):
    order = []
    seen = set()
    for s in range(h.n):
        if s in seen:
            continue
        queue = deque([s])
        seen.add(s)
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(h.adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def is_homomorphism(h, g, mapping):
    """True iff `mapping` (tuple over V(h)) sends every edge to an edge."""
    if len(mapping) != h.n or any(not 0 <= x < g.n for x in mapping):
        return False
    return all(g.has_edge(mapping[u], mapping[v]) for u, v in h.edges())


def _count_from(h, g, order, image, start):
    total = 0
    v = order[start]
    assigned = [image[w] for w in h.adj[v] if image[w] is not None]
    if assigned:
        candidates = frozenset.intersection(*[g.adj[x] for x in assigned])
    else:
        candidates = range(g.n)
    last = start == len(order) - 1
    for c in candidates:
        if last:
            total += 1
        else:
            image[v] = c
            total += _count_from(h, g, order, image, start + 1)
            image[v] = None
    return total


def _count_branch(args):
    h, g, root_image = args
    order = _bfs_order(h)
    image = [None] * h.n
    image[order[0]] = root_image
    if len(order) == 1:
        return 1
    return _count_from(h, g, order, image, 1)


def count_hom_bruteforce(h, g, workers=1):
    """|Hom(h, g)| by pruned enumeration in BFS order.

    Guarded at |V(h)| <= 10 and |V(g)| <= 8; beyond that, refuse and point
    at the decomposition counter. With workers > 1 the enumeration splits on
    the image of the first BFS vertex and partial counts are summed in image
    order, so totals never depend on the worker count.
    """
    if h.n > BRUTE_H_LIMIT or g.n > BRUTE_G_LIMIT:
        raise SizeLimitError(
            f"brute force limited to |V(H)| <= {BRUTE_H_LIMIT}, "
            f"|V(G)| <= {BRUTE_G_LIMIT} (got {h.n}, {g.n}); use count_hom_dp"
        )
    if h.n == 0:
        return 1
    if g.n == 0:
        return 0
    branches = [(h, g, c) for c in range(g.n)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count_branch, branches))
    return sum(_count_branch(b) for b in branches)


def enumerate_homomorphisms(h, g):
    """Yield all of Hom(h, g) as image tuples, in lexicographic order."""
    if h.n == 0:
        yield ()
        return
    prev_nb = [sorted(w for w in h.adj[v] if w < v) for v in range(h.n)]
    image = [0] * h.n

    def extend(v):
        if v == h.n:
            yield tuple(image)
            return
        if prev_nb[v]:
            cands = sorted(frozenset.intersection(*[g.adj[image[w]] for w in prev_nb[v]]))
        else:
            cands = range(g.n)
        for c in cands:
            image[v] = c
            yield from extend(v + 1)

    yield from extend(0)


# ---------------------------------------------------------------------------
# Tree decompositions
# ---------------------------------------------------------------------------


class TreeDecomposition:
    """Bags (vertex frozensets) plus a tree over bag indices."""

    __slots__ = ("bags", "tree")

    def __init__(self, bags, tree):
        self.bags = tuple(frozenset(b) for b in bags)
        self.tree = tuple(tuple(sorted(e)) for e in tree)

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    def _neighbors(self):
        nb = {i: set() for i in range(len(self.bags))}
        for a, b in self.tree:
            nb[a].add(b)
            nb[b].add(a)
        return nb

    def validate(self, h):
        """Raise InvalidDecomposition naming whichever invariant fails."""
        k = len(self.bags)
        if k == 0:
            raise InvalidDecomposition("tree shape: no bags")
        if len(self.tree) != k - 1:
            raise InvalidDecomposition("tree shape: edge count != bags - 1")
        nb = self._neighbors()
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in nb[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != k:
            raise InvalidDecomposition("tree shape: bag tree is disconnected")
        if set().union(*self.bags) != set(range(h.n)) and h.n > 0:
            raise InvalidDecomposition("vertex coverage: union of bags != V(H)")
        for u, v in h.edges():
            if not any(u in b and v in b for b in self.bags):
                raise InvalidDecomposition(f"edge coverage: edge ({u}, {v}) in no bag")
        for v in range(h.n):
            holding = [i for i in range(k) if v in self.bags[i]]
            if not holding:
                raise InvalidDecomposition(f"vertex coverage: vertex {v} in no bag")
            reach = {holding[0]}
            queue = deque([holding[0]])
            inside = set(holding)
            while queue:
                x = queue.popleft()
                for y in nb[x]:
                    if y in inside and y not in reach:
                        reach.add(y)
                        queue.append(y)
            if reach != inside:
                raise InvalidDecomposition(
                    f"running intersection: bags holding vertex {v} are disconnected"
                )
        return self


def tree_decomposition(h):
    """Heuristic decomposition from a min-fill elimination ordering.

    Always valid (all three invariants hold); the width is not necessarily
    optimal. Ties break on (fill, degree, vertex index) so the output is
    deterministic. Components' bag subtrees are chained into a single tree.
    """
    if h.n == 0:
        return TreeDecomposition((frozenset(),), ())
    work = {v: set(h.adj[v]) for v in range(h.n)}
    order = []
    bag_of = {}
    while work:
        best = None
        for v, nb in sorted(work.items()):
            fill = sum(1 for a, b in combinations(sorted(nb), 2) if b not in work[a])
            key = (fill, len(nb), v)
            if best is None or key < best:
                best = key
                pick = v
        nb = sorted(work[pick])
        bag_of[pick] = frozenset([pick, *nb])
        order.append(pick)
        for a, b in combinations(nb, 2):
            work[a].add(b)
            work[b].add(a)
        for a in nb:
            work[a].discard(pick)
        del work[pick]
    pos = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    tree = []
    roots = []
    for i, v in enumerate(order):
        later = [pos[u] for u in bags[i] if u != v]
        if later:
            tree.append((i, min(later)))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        tree.append((a, b))
    return TreeDecomposition(bags, tree)


# ---------------------------------------------------------------------------
# DP over a nice (introduce/forget/join) normalization
# ---------------------------------------------------------------------------


def _nice_nodes(td):
    """Flatten into ('leaf'|'intro'|'forget'|'join', bag, children, vertex)
    records, children listed before parents."""
    nbrs = td._neighbors()
    nodes = []

    def emit(kind, bag, children, vertex=None):
        nodes.append((kind, tuple(sorted(bag)), tuple(children), vertex))
        return len(nodes) - 1

    def chain_to(idx, have, want):
        # forget then introduce, one vertex at a time, lowest index first
        have = set(have)
        for v in sorted(have - want):
            have.discard(v)
            idx = emit("forget", have, (idx,), v)
        for v in sorted(want - have):
            have.add(v)
            idx = emit("intro", have, (idx,), v)
        return idx

    def build(b, parent):
        bag = set(td.bags[b])
        parts = []
        for c in sorted(nbrs[b]):
            if c == parent:
                continue
            sub = build(c, b)
            parts.append(chain_to(sub, td.bags[c], bag))
        if not parts:
            idx = emit("leaf", (), ())
            return chain_to(idx, set(), bag)
        idx = parts[0]
        for other in parts[1:]:
            idx = emit("join", bag, (idx, other))
        return idx

    top = build(0, -1)
    return nodes, chain_to(top, td.bags[0], set())


def count_hom_dp(h, g, td=None):
    """|Hom(h, g)| by sparse table DP over a (validated) tree decomposition.

    Tables map tuples of images of the sorted bag to partial counts; only
    edge-respecting assignments are ever keyed, so table size tracks the
    number of partial homomorphisms of the bag, not |V(g)|^width.
    """
    if td is None:
        td = tree_decomposition(h)
    td.validate(h)
    nodes, root = _nice_nodes(td)
    tables = [None] * len(nodes)
    for idx, (kind, bag, children, vertex) in enumerate(nodes):
        if kind == "leaf":
            tables[idx] = {(): 1}
        elif kind == "intro":
            child = children[0]
            cbag = nodes[child][1]
            pos = bag.index(vertex)
            nb_pos = [i for i, w in enumerate(cbag) if w in h.adj[vertex]]
            out = {}
            for key, cnt in tables[child].items():
                if nb_pos:
                    cands = frozenset.intersection(*[g.adj[key[i]] for i in nb_pos])
                else:
                    cands = range(g.n)
                head, tail = key[:pos], key[pos:]
                for w in cands:
                    out[head + (w,) + tail] = out.get(head + (w,) + tail, 0) + cnt
            tables[idx] = out
            tables[child] = None
        elif kind == "forget":
            child = children[0]
            cbag = nodes[child][1]
            pos = cbag.index(vertex)
            out = {}
            for key, cnt in tables[child].items():
                short = key[:pos] + key[pos + 1:]
                out[short] = out.get(short, 0) + cnt
            tables[idx] = out
            tables[child] = None
        else:  # join
            left, right = children
            tl, tr = tables[left], tables[right]
            if len(tl) > len(tr):
                tl, tr = tr, tl
            tables[idx] = {k: c * tr[k] for k, c in tl.items() if k in tr}
            tables[left] = tables[right] = None
    return tables[root].get((), 0)


@lru_cache(maxsize=512)
def _cached_decomposition(h):
    return tree_decomposition(h)


def count_hom(h, g):
    """|Hom(h, g)|, exact, via the decomposition DP (cached per h)."""
    return count_hom_dp(h, g, _cached_decomposition(h))


def density(h, g):
    """t_H(G) = |Hom(H, G)| / |V(G)|^|V(H)| as an exact Fraction."""
    if g.n < 1:
        raise ValueError("density needs a nonempty target graph")
    return Fraction(count_hom(h, g), g.n ** h.n)


# ---------------------------------------------------------------------------
# Weighted (step-function) densities
# ---------------------------------------------------------------------------


class WeightMatrix:
    """Symmetric matrix of non-negative Fractions: edge weights for the
    step-function generalization of plain densities."""

    __slots__ = ("n", "entries")

    def __init__(self, rows):
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("weight matrix must be square")
        for i in range(n):
            for j in range(n):
                if entries[i][j] < 0:
                    raise ValueError(f"negative weight at ({i}, {j})")
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"asymmetric weights at ({i}, {j})")
        self.n = n
        self.entries = entries

    @classmethod
    def from_graph(cls, g):
        return cls(
            [[1 if g.has_edge(i, j) else 0 for j in range(g.n)] for i in range(g.n)]
        )

    @classmethod
    def constant(cls, n, value):
        return cls([[value] * n for _ in range(n)])


def weighted_density(h, w):
    """Average over all maps V(h) -> [n] of the product of entry weights
    over the edges of h. With a 0/1 adjacency matrix this equals density().
    """
    if w.n < 1:
        raise ValueError("weight matrix must be nonempty")
    order = _bfs_order(h)
    image = [None] * h.n

    def accumulate(k, weight):
        if k == len(order):
            return weight
        v = order[k]
        assigned = [image[u] for u in h.adj[v] if image[u] is not None]
        total = Fraction(0)
        for c in range(w.n):
            f = weight
            for x in assigned:
                f *= w.entries[c][x]
                if not f:
                    break
            if f:
                image[v] = c
                total += accumulate(k + 1, f)
                image[v] = None
        return total

    if h.n == 0:
        return Fraction(1)
    return accumulate(0, Fraction(1)) / w.n ** h.n
