"""Normalized indicator functionals along a rooted arrangement tree, and
exact certification of their expectation identities by full enumeration.

For a side vertex u with neighborhood L_u and a random assignment x of graph
vertices, the basic functional is

    f(u, x) = ( 1[x_u adjacent to all of x(L_u)] + eps * rho(x_u)^|L_u| )
              / ( rho0 * rho(x_u)^(|L_u| - 1) )

where rho(v) = deg(v)/n and rho0 = 2|E|/n^2. Its mean is exactly 1 + eps.
Along a tree rooted at r, each factor is renormalized by the conditional
expectation given everything on the root side of u, which reduces (when the
tree arranges the family) to a closed form over L_u n L_parent(u). The
product of the renormalized factors has mean exactly 1 and does not depend
on the root. All of this is computed in exact rational arithmetic; the
identity checks are equalities, never tolerances.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .arrangement import _tree_adjacency
from .homomorphisms import SizeLimitError

ENUMERATION_LIMIT = 2_000_000


def degree_density(g, v):
    """deg(v) / n as an exact Fraction."""
    if g.n < 1:
        raise ValueError("empty graph")
    return Fraction(len(g.adj[v]), g.n)


def mean_degree_density(g):
    """2|E| / n^2: the mean of the degree densities, equal to the edge
    density of a single edge."""
    if g.n < 1:
        raise ValueError("empty graph")
    return Fraction(2 * g.edge_count, g.n ** 2)


def _require_no_isolated(g):
    if g.n < 1:
        raise ValueError("empty graph")
    for v in range(g.n):
        if not g.adj[v]:
            raise ValueError(
                f"target graph has isolated vertex {v}; degree densities vanish"
            )


def _require_eps(eps):
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be a positive rational")
    return eps


class RootedArrangement:
    """A family plus a spanning tree on its side, rooted at one vertex.

    Carries the parent map of the rooted tree. Tree-ness is enforced;
    whether the tree actually arranges the family is NOT, so that corrupted
    trees can be fed to the identity certifier as negative controls.
    """

    __slots__ = ("fam", "tree_edges", "root", "parent", "adjacency")

    def __init__(self, fam, tree_edges, root):
        if root not in fam.vertices:
            raise ValueError(f"root {root} not on the side")
        self.fam = fam
        self.tree_edges = tuple(tuple(sorted(e)) for e in tree_edges)
        self.adjacency = _tree_adjacency(fam, self.tree_edges)
        self.root = root
        parent = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(self.adjacency[x]):
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        self.parent = parent

    def rerooted(self, new_root):
        return RootedArrangement(self.fam, self.tree_edges, new_root)

    def root_side_component(self, u):
        """Vertices of the component of tree minus u that contains the root."""
        if u == self.root:
            return frozenset()
        blocked = {u}
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in seen and y not in blocked:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)


def vertex_functional(fam, g, u, x, eps):
    """The basic normalized functional f(u, x); exact Fraction.

    `x` maps at least {u} | L_u to vertices of g; g must have no isolated
    vertex and eps must be positive (the eps term keeps later conditional
    denominators nonzero)."""
    _require_no_isolated(g)
    eps = _require_eps(eps)
    lam = fam.neighborhoods[u]
    xu = x[u]
    hit = all(x[b] in g.adj[xu] for b in lam)
    rho = Fraction(len(g.adj[xu]), g.n)
    rho0 = mean_degree_density(g)
    k = len(lam)
    return ((1 if hit else 0) + eps * rho ** k) / (rho0 * rho ** (k - 1))


def parent_conditional_expectation(ra, g, u, x, eps):
    """Closed-form conditional mean of f(u, .) given the root side of u.

    For the root this is the plain mean 1 + eps. Otherwise, with
    S = L_u n L_parent(u), it averages over the image c of u:

        (1/n) * sum_c 1[c adjacent to all of x(S)] / (rho0 * rho(c)^(|S|-1))

    plus eps; the result depends on x only through x(S).
    """
    _require_no_isolated(g)
    eps = _require_eps(eps)
    if u == ra.root:
        return 1 + eps
    p = ra.parent[u]
    shared = ra.fam.neighborhoods[u] & ra.fam.neighborhoods[p]
    try:
        images = [x[b] for b in sorted(shared)]
    except KeyError as missing:
        raise ValueError(f"assignment does not cover shared vertex {missing}")
    rho0 = mean_degree_density(g)
    k = len(shared)
    total = Fraction(0)
    for c in range(g.n):
        if all(img in g.adj[c] for img in images):
            rho = Fraction(len(g.adj[c]), g.n)
            total += 1 / (rho0 * rho ** (k - 1))
    return total / g.n + eps


def conditional_expectation_enumerated(ra, g, u, x, eps):
    """Oracle form of the same conditional mean, straight from its
    definition: average f(u, .) over all assignments agreeing with x on
    every coordinate visible from the root side of u (the component's
    vertices and their neighborhoods). Agrees with the closed form exactly
    whenever the tree arranges the family."""
    _require_no_isolated(g)
    eps = _require_eps(eps)
    fam = ra.fam
    if u == ra.root:
        fixed = frozenset()
    else:
        comp = ra.root_side_component(u)
        fixed = set(comp)
        for v in comp:
            fixed |= fam.neighborhoods[v]
    involved = sorted({u} | fam.neighborhoods[u])
    free = [w for w in involved if w not in fixed]
    total = Fraction(0)
    for combo in iter_product(range(g.n), repeat=len(free)):
        y = dict(x)
        y.update(zip(free, combo))
        total += vertex_functional(fam, g, u, y, eps)
    return total / g.n ** len(free)


def tree_functional(ra, g, x, eps):
    """Product over the side of f(a, x) / conditional-mean(a, x): the
    tree-renormalized functional. Mean exactly 1 under arrangeability."""
    value = Fraction(1)
    for a in ra.fam.vertices:
        value *= vertex_functional(ra.fam, g, a, x, eps)
        value /= parent_conditional_expectation(ra, g, a, x, eps)
    return value


@dataclass(frozen=True)
class IdentityReport:
    """Pass/fail for one certified identity, with a witness on failure."""

    name: str
    passed: bool
    witness: dict | None = None

    def to_json_dict(self):
        return {"identity": self.name, "passed": self.passed, "witness": self.witness}


def _frac_str(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def certify_normalization_identities(fam, tree_edges, g, eps):
    """Certify, by full enumeration with exact rationals, that a tree on the
    side satisfies the three normalization identities:

      root-invariance      the renormalized product is the same for every
                           root, pointwise in the assignment;
      unit-mean            its mean over all assignments is exactly 1;
      projection[u]        for every side vertex u and every fixed pattern
                           of (x_u, x(L_u)), summing the product against the
                           pattern indicator and scaling by (1 + eps) equals
                           the same sum of the bare functional f(u, .).

    All three hold whenever the tree arranges the family; on a corrupted
    tree failures are reported with witnesses and left uninterpreted.
    Returns a list of IdentityReport.
    """
    _require_no_isolated(g)
    eps = _require_eps(eps)
    side = fam.vertices
    relevant = sorted(set(side) | fam.ground())
    if g.n ** len(relevant) > ENUMERATION_LIMIT:
        raise SizeLimitError(
            f"{g.n}^{len(relevant)} assignments exceed the enumeration limit"
        )
    rooted = {r: RootedArrangement(fam, tree_edges, r) for r in side}
    rho0 = mean_degree_density(g)
    n = g.n

    # caches keyed by the few coordinates each quantity depends on
    f_cache = {}
    denom_cache = {}

    def f_value(a, x):
        lam = sorted(fam.neighborhoods[a])
        key = (a, x[a], tuple(x[b] for b in lam))
        if key not in f_cache:
            hit = all(x[b] in g.adj[x[a]] for b in lam)
            rho = Fraction(len(g.adj[x[a]]), n)
            k = len(lam)
            f_cache[key] = ((1 if hit else 0) + eps * rho ** k) / (rho0 * rho ** (k - 1))
        return f_cache[key]

    def denom_value(a, r, x):
        ra = rooted[r]
        if a == r:
            return 1 + eps
        p = ra.parent[a]
        shared = sorted(fam.neighborhoods[a] & fam.neighborhoods[p])
        key = (a, p, tuple(x[b] for b in shared))
        if key not in denom_cache:
            denom_cache[key] = parent_conditional_expectation(ra, g, a, x, eps)
        return denom_cache[key]

    reports = []
    root_invariant_witness = None
    total = Fraction(0)
    proj_tree = {a: {} for a in side}
    proj_bare = {a: {} for a in side}
    base_root = side[0]

    for combo in iter_product(range(n), repeat=len(relevant)):
        x = dict(zip(relevant, combo))
        factors = {a: f_value(a, x) for a in side}
        prod_f = Fraction(1)
        for a in side:
            prod_f *= factors[a]
        values = {}
        for r in side:
            denom = Fraction(1)
            for a in side:
                denom *= denom_value(a, r, x)
            values[r] = prod_f / denom
        if root_invariant_witness is None:
            base = values[base_root]
            for r in side:
                if values[r] != base:
                    root_invariant_witness = {
                        "assignment": {str(k): v for k, v in x.items()},
                        "roots": [base_root, r],
                        "values": [_frac_str(base), _frac_str(values[r])],
                    }
                    break
        ftr = values[base_root]
        total += ftr
        for u in side:
            pattern = (x[u], tuple(x[b] for b in sorted(fam.neighborhoods[u])))
            proj_tree[u][pattern] = proj_tree[u].get(pattern, Fraction(0)) + ftr
            proj_bare[u][pattern] = proj_bare[u].get(pattern, Fraction(0)) + factors[u]

    reports.append(
        IdentityReport("root-invariance", root_invariant_witness is None,
                       root_invariant_witness)
    )
    count = Fraction(n ** len(relevant))
    mean = total / count
    reports.append(
        IdentityReport(
            "unit-mean",
            mean == 1,
            None if mean == 1 else {"expected": "1/1", "actual": _frac_str(mean)},
        )
    )
    for u in side:
        witness = None
        for pattern in sorted(proj_tree[u]):
            lhs = proj_tree[u][pattern] * (1 + eps)
            rhs = proj_bare[u][pattern]
            if lhs != rhs:
                witness = {
                    "u": u,
                    "pattern": {"x_u": pattern[0], "x_lambda": list(pattern[1])},
                    "lhs_scaled": _frac_str(lhs / count),
                    "rhs": _frac_str(rhs / count),
                }
                break
        reports.append(IdentityReport(f"projection[u={u}]", witness is None, witness))
    return reports
