"""Tree-arrangeability: deciding whether one side of a bipartite graph
admits a tree with the path-intersection property, with witness trees and
re-checkable refutations.

A side A with neighborhoods L_a is arrangeable for a tree T on A when for
every pair u, v and the path P between them, L_u n L_v equals the
intersection of L_w over w in P. Equivalently, for each opposite-side
vertex b the set of A-vertices whose neighborhood contains b must induce a
subtree of T (a junction tree / running-intersection condition). The
decision procedure is: reduce to inclusion-maximal neighborhoods, take a
maximum-weight spanning tree under weights |L_u n L_v|, and check; a
maximum-weight tree passes whenever any tree does.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graphs import bipartitions


class NeighborhoodFamily:
    """An independent side with its neighbor sets in the opposite side."""

    __slots__ = ("vertices", "neighborhoods")

    def __init__(self, vertices, neighborhoods):
        self.vertices = tuple(sorted(vertices))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate side vertices")
        nbh = {}
        for a in self.vertices:
            lam = frozenset(neighborhoods[a])
            if lam & vs:
                raise ValueError(f"neighborhood of {a} meets the side itself")
            nbh[a] = lam
        self.neighborhoods = nbh

    @classmethod
    def from_bipartition(cls, bip):
        return cls(bip.side_a, {a: bip.graph.adj[a] for a in bip.side_a})

    def ground(self):
        """All opposite-side vertices that occur in some neighborhood."""
        out = set()
        for lam in self.neighborhoods.values():
            out |= lam
        return out

    def support(self, b):
        return frozenset(a for a in self.vertices if b in self.neighborhoods[a])

    def restrict(self, keep):
        keep = set(keep)
        return NeighborhoodFamily(
            [a for a in self.vertices if a in keep],
            {a: self.neighborhoods[a] for a in self.vertices if a in keep},
        )

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class ArrangementViolation:
    """A failed path-intersection condition, re-checkable from its fields:
    b lies in both endpoint neighborhoods but not in every path vertex's."""

    vertex_b: int
    u: int
    v: int
    path: tuple
    path_intersection: frozenset
    endpoint_intersection: frozenset

    def to_json_dict(self):
        return {
            "b": self.vertex_b,
            "u": self.u,
            "v": self.v,
            "path": list(self.path),
            "path_intersection": sorted(self.path_intersection),
            "endpoint_intersection": sorted(self.endpoint_intersection),
        }


def _tree_adjacency(fam, tree_edges):
    verts = set(fam.vertices)
    adj = {a: set() for a in fam.vertices}
    count = 0
    for u, v in tree_edges:
        if u not in verts or v not in verts or u == v:
            raise ValueError(f"tree edge ({u}, {v}) not on the side")
        if v in adj[u]:
            raise ValueError(f"repeated tree edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
        count += 1
    if len(verts) and count != len(verts) - 1:
        raise ValueError("not a spanning tree: wrong edge count")
    if verts:
        seen = {fam.vertices[0]}
        queue = deque([fam.vertices[0]])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(verts):
            raise ValueError("not a spanning tree: disconnected")
    return adj


def tree_path(adj, u, v):
    """Vertex path from u to v in a tree given as an adjacency dict."""
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def check_arrangement(fam, tree_edges):
    """None if the tree arranges the family, else an ArrangementViolation.

    Evaluates the per-b support-connectivity form: for each ground vertex b,
    the vertices whose neighborhood contains b must induce a connected
    subtree. Raises ValueError if tree_edges is not a spanning tree.
    """
    adj = _tree_adjacency(fam, tree_edges)
    for b in sorted(fam.ground()):
        support = sorted(fam.support(b))
        if len(support) <= 1:
            continue
        inside = set(support)
        reached = {support[0]}
        queue = deque([support[0]])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in inside and y not in reached:
                    reached.add(y)
                    queue.append(y)
        if reached != inside:
            u = support[0]
            v = min(inside - reached)
            path = tree_path(adj, u, v)
            inter = frozenset.intersection(*[fam.neighborhoods[w] for w in path])
            return ArrangementViolation(
                b, u, v, path, inter,
                fam.neighborhoods[u] & fam.neighborhoods[v],
            )
    return None


def check_arrangement_paths(fam, tree_edges):
    """Same verdict as check_arrangement, evaluated the defining way: every
    pair's path intersection is compared against the endpoint intersection.
    Kept as an independent second route; the two must always agree."""
    adj = _tree_adjacency(fam, tree_edges)
    for u, v in combinations(fam.vertices, 2):
        path = tree_path(adj, u, v)
        inter = frozenset.intersection(*[fam.neighborhoods[w] for w in path])
        endpoints = fam.neighborhoods[u] & fam.neighborhoods[v]
        if inter != endpoints:
            b = min(endpoints - inter)
            return ArrangementViolation(b, u, v, path, inter, endpoints)
    return None


def tree_weight(fam, tree_edges):
    """Total |L_u n L_v| over the tree's edges."""
    return sum(
        len(fam.neighborhoods[u] & fam.neighborhoods[v]) for u, v in tree_edges
    )


def weight_upper_bound(fam):
    """Sum over ground vertices b of (|support(b)| - 1); no spanning tree can
    weigh more, and one achieving it arranges the family."""
    return sum(len(fam.support(b)) - 1 for b in fam.ground())


def mwst_candidate_tree(fam):
    """Maximum-weight spanning tree of the complete graph on the side under
    weights |L_u n L_v|; Kruskal with edges sorted by descending weight then
    ascending (u, v). Returned sorted, as (u, v) pairs with u < v."""
    verts = fam.vertices
    if len(verts) <= 1:
        return ()
    ranked = sorted(
        (-len(fam.neighborhoods[u] & fam.neighborhoods[v]), u, v)
        for u, v in combinations(verts, 2)
    )
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for _, u, v in ranked:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
            if len(chosen) == len(verts) - 1:
                break
    return tuple(sorted(chosen))


def neighbor_covering_reduction(fam):
    """Shrink to one representative per inclusion-maximal neighborhood class.

    Returns (reduced family on U, attachment map a -> u with L_a <= L_u for
    every dropped a). A witness tree on U extends to the whole side by
    adding each dropped vertex as a leaf under its attachment.
    """
    classes = {}
    for a in fam.vertices:
        classes.setdefault(fam.neighborhoods[a], []).append(a)
    maximal = []
    for lam in classes:
        if not any(lam < other for other in classes):
            maximal.append(min(classes[lam]))
    u_set = sorted(maximal)
    attachment = {}
    for a in fam.vertices:
        if a in u_set:
            continue
        attachment[a] = min(
            u for u in u_set if fam.neighborhoods[a] <= fam.neighborhoods[u]
        )
    return fam.restrict(u_set), attachment


def extend_tree_with_leaves(tree_edges, attachment):
    """Attach each dropped vertex as a leaf under its representative."""
    edges = list(tree_edges)
    for a in sorted(attachment):
        edges.append(tuple(sorted((attachment[a], a))))
    return tuple(sorted(edges))


@dataclass(frozen=True)
class ArrangementCertificate:
    """Outcome of the decision: a witness tree on side A, or per-assignment
    refutations covering every global side choice."""

    arrangeable: bool
    side_a: tuple = ()
    side_b: tuple = ()
    tree: tuple = ()
    refutations: tuple = ()

    def to_json_dict(self):
        if self.arrangeable:
            return {
                "arrangeable": True,
                "side_a": list(self.side_a),
                "side_b": list(self.side_b),
                "tree": [list(e) for e in self.tree],
            }
        return {
            "arrangeable": False,
            "assignments": [
                {
                    "side_a": list(r["side_a"]),
                    "tree_tried": [list(e) for e in r["tree_tried"]],
                    "witness": r["witness"].to_json_dict(),
                }
                for r in self.refutations
            ],
        }


def decide_side(fam):
    """Try to arrange one fixed side: reduce, build the max-weight tree,
    check, and extend back. Returns (tree, None) on success or
    (None, refutation record) where the record carries the tried tree and
    its violation."""
    if len(fam) <= 1:
        return (), None
    reduced, attachment = neighbor_covering_reduction(fam)
    candidate = mwst_candidate_tree(reduced)
    violation = check_arrangement(reduced, candidate)
    if violation is not None:
        return None, {
            "side_a": fam.vertices,
            "tree_tried": candidate,
            "witness": violation,
        }
    full = extend_tree_with_leaves(candidate, attachment)
    assert check_arrangement(fam, full) is None
    return full, None


def decide_tree_arrangeable(h):
    """Decide tree-arrangeability of a bipartite graph over every global
    side assignment (2^components of them, in scan order); the first side
    that works yields the certificate."""
    scan = bipartitions(h)
    if not scan.is_bipartite:
        raise ValueError(f"not bipartite: odd cycle {list(scan.odd_cycle)}")
    refutations = []
    for bip in scan.assignments():
        fam = NeighborhoodFamily.from_bipartition(bip)
        tree, refutation = decide_side(fam)
        if tree is not None:
            return ArrangementCertificate(
                True,
                side_a=tuple(sorted(bip.side_a)),
                side_b=tuple(sorted(bip.side_b)),
                tree=tree,
            )
        refutations.append(refutation)
    return ArrangementCertificate(False, refutations=tuple(refutations))
