from fractions import Fraction

import pytest

from sidorenko import (
    Graph,
    NeighborhoodFamily,
    bipartitions,
    check_arrangement,
    check_arrangement_paths,
    decide_tree_arrangeable,
    mwst_candidate_tree,
    neighbor_covering_reduction,
    random_gnp,
)
from sidorenko.arrangement import (
    extend_tree_with_leaves,
    tree_weight,
    weight_upper_bound,
)
from sidorenko.constructions import (
    complete_bipartite_graph,
    cycle_graph,
    grid_graph,
    k55_minus_c10,
    labeled_trees,
    path_graph,
    star_graph,
)


def family_of(h, side_a):
    from sidorenko.graphs import Bipartition

    bip = Bipartition(h, set(side_a), set(range(h.n)) - set(side_a))
    return NeighborhoodFamily.from_bipartition(bip)


def exhaustive_arrangeable(fam):
    """Oracle: try every labeled tree on the side."""
    return any(
        check_arrangement(fam, tree) is None for tree in labeled_trees(fam.vertices)
    )


def random_bipartite(n_a, n_b, p, seed):
    """Thin a complete bipartite graph with a seeded gnp mask."""
    mask = random_gnp(n_a + n_b, p, seed)
    edges = [
        (i, n_a + j)
        for i in range(n_a)
        for j in range(n_b)
        if mask.has_edge(i, n_a + j)
    ]
    return Graph(n_a + n_b, edges)


def corpus_families():
    fams = []
    # graph-derived sides
    for h, side in [
        (cycle_graph(6), (0, 2, 4)),
        (cycle_graph(6), (1, 3, 5)),
        (cycle_graph(8), (0, 2, 4, 6)),
        (complete_bipartite_graph(3, 3), (0, 1, 2)),
        (complete_bipartite_graph(2, 3), (0, 1)),
        (k55_minus_c10(), tuple(range(5))),
        (k55_minus_c10(), tuple(range(5, 10))),
        (grid_graph(2, 3), (0, 2, 4)),
        (star_graph(4), (0,)),
        (path_graph(6), (0, 2, 4)),
    ]:
        fams.append(family_of(h, side))
    # handcrafted neighborhood shapes
    fams.append(NeighborhoodFamily([0, 1, 2], {0: [10, 11], 1: [11, 12], 2: [10, 12]}))
    fams.append(NeighborhoodFamily([0, 1, 2], {0: [10, 11, 12, 13], 1: [10, 11], 2: [12, 13]}))
    fams.append(NeighborhoodFamily([0, 1, 2, 3], {0: [10], 1: [10, 11], 2: [11, 12], 3: [12]}))
    fams.append(NeighborhoodFamily([0, 1, 2, 3, 4],
                                   {0: [10, 11], 1: [11, 12], 2: [12, 13], 3: [13, 14], 4: [14, 10]}))
    fams.append(NeighborhoodFamily([0, 1], {0: [], 1: [5]}))
    fams.append(NeighborhoodFamily([7], {7: [1, 2]}))
    # seeded random bipartite sides
    for seed in range(8):
        h = random_bipartite(4, 4, Fraction(1, 2), seed)
        fams.append(family_of(h, tuple(range(4))))
    return fams


class TestCheckArrangement:
    def test_k33_every_tree_works(self):
        fam = family_of(complete_bipartite_graph(3, 3), (0, 1, 2))
        for tree in labeled_trees((0, 1, 2)):
            assert check_arrangement(fam, tree) is None

    def test_c6_path_tree_fails_with_witness(self):
        fam = family_of(cycle_graph(6), (0, 2, 4))
        violation = check_arrangement(fam, [(0, 2), (2, 4)])
        assert violation is not None
        # path through the middle drops the endpoints' shared neighbor
        assert violation.path == (0, 2, 4)
        assert violation.path_intersection == frozenset()
        assert violation.endpoint_intersection
        assert violation.vertex_b in violation.endpoint_intersection

    def test_star_centered_family(self):
        # one vertex adjacent to everything on the other side: star tree works
        h = Graph(6, [(0, 3), (0, 4), (0, 5), (1, 3), (2, 4)])
        fam = family_of(h, (0, 1, 2))
        assert check_arrangement(fam, [(0, 1), (0, 2)]) is None

    def test_rejects_non_spanning_tree(self):
        fam = family_of(complete_bipartite_graph(3, 3), (0, 1, 2))
        with pytest.raises(ValueError, match="spanning"):
            check_arrangement(fam, [(0, 1)])
        with pytest.raises(ValueError, match="spanning|repeated"):
            check_arrangement(fam, [(0, 1), (0, 1)])
        with pytest.raises(ValueError, match="not on the side"):
            check_arrangement(fam, [(0, 1), (0, 9)])

    def test_two_evaluators_agree_everywhere(self):
        # connectivity form vs direct path-intersection form, exhaustively
        for fam in corpus_families():
            if len(fam) > 5:
                continue
            for tree in labeled_trees(fam.vertices):
                a = check_arrangement(fam, tree)
                b = check_arrangement_paths(fam, tree)
                assert (a is None) == (b is None), (fam.vertices, tree)


class TestMwst:
    def test_k33_all_trees_weigh_six(self):
        fam = family_of(complete_bipartite_graph(3, 3), (0, 1, 2))
        tree = mwst_candidate_tree(fam)
        assert tree_weight(fam, tree) == 6 == weight_upper_bound(fam)

    def test_nested_neighborhoods_make_a_star(self):
        fam = NeighborhoodFamily(
            [1, 2, 3], {1: [10, 11, 12, 13], 2: [10, 11], 3: [12, 13]}
        )
        assert mwst_candidate_tree(fam) == ((1, 2), (1, 3))

    def test_single_vertex_empty_tree(self):
        fam = NeighborhoodFamily([4], {4: [0, 1]})
        assert mwst_candidate_tree(fam) == ()

    def test_completeness_against_exhaustive_oracle(self):
        # if any labeled tree arranges the family, the max-weight tree does
        for fam in corpus_families():
            if len(fam) > 5:
                continue
            any_tree = exhaustive_arrangeable(fam)
            mwst_ok = check_arrangement(fam, mwst_candidate_tree(fam)) is None
            assert mwst_ok == any_tree, fam.vertices

    def test_weight_bound_with_equality_iff_arrangeable(self):
        for fam in corpus_families():
            if len(fam) > 5 or len(fam) < 2:
                continue
            tree = mwst_candidate_tree(fam)
            w = tree_weight(fam, tree)
            bound = weight_upper_bound(fam)
            assert w <= bound
            assert (w == bound) == exhaustive_arrangeable(fam)


class TestNeighborCovering:
    def test_complete_bipartite_reduces_to_one(self):
        fam = family_of(complete_bipartite_graph(4, 3), (0, 1, 2, 3))
        reduced, attachment = neighbor_covering_reduction(fam)
        assert reduced.vertices == (0,)
        assert set(attachment) == {1, 2, 3}

    def test_two_maximal_vertices_case(self):
        # every neighborhood inside one of two maximal ones => arrangeable
        fam = NeighborhoodFamily(
            [0, 1, 2, 3],
            {0: [10, 11, 12], 1: [13, 14, 15], 2: [10, 11], 3: [13]},
        )
        reduced, attachment = neighbor_covering_reduction(fam)
        assert reduced.vertices == (0, 1)
        assert attachment == {2: 0, 3: 1}
        tree = mwst_candidate_tree(reduced)
        full = extend_tree_with_leaves(tree, attachment)
        assert check_arrangement(fam, full) is None

    def test_incomparable_neighborhoods_keep_everything(self):
        fam = NeighborhoodFamily([0, 1, 2], {0: [10, 11], 1: [11, 12], 2: [12, 10]})
        reduced, attachment = neighbor_covering_reduction(fam)
        assert reduced.vertices == (0, 1, 2)
        assert attachment == {}

    def test_duplicate_neighborhoods_keep_min_representative(self):
        fam = NeighborhoodFamily([3, 5, 8], {3: [10], 5: [10], 8: [10]})
        reduced, attachment = neighbor_covering_reduction(fam)
        assert reduced.vertices == (3,)
        assert attachment == {5: 3, 8: 3}

    def test_leaf_extension_always_passes(self):
        for fam in corpus_families():
            reduced, attachment = neighbor_covering_reduction(fam)
            tree = mwst_candidate_tree(reduced)
            if check_arrangement(reduced, tree) is None:
                full = extend_tree_with_leaves(tree, attachment)
                assert check_arrangement(fam, full) is None

    def test_reduction_preserves_the_decision(self):
        for fam in corpus_families():
            if len(fam) > 5:
                continue
            reduced, _ = neighbor_covering_reduction(fam)
            assert exhaustive_arrangeable(fam) == exhaustive_arrangeable(reduced)


def exhaustive_decide(h):
    scan = bipartitions(h)
    if not scan.is_bipartite:
        raise ValueError
    return any(
        exhaustive_arrangeable(NeighborhoodFamily.from_bipartition(bip))
        for bip in scan.assignments()
    )


class TestDecide:
    def test_small_side_is_trivially_arrangeable(self):
        cert = decide_tree_arrangeable(complete_bipartite_graph(2, 5))
        assert cert.arrangeable

    def test_c6_refuted_on_both_sides(self):
        cert = decide_tree_arrangeable(cycle_graph(6))
        assert not cert.arrangeable
        assert len(cert.refutations) == 2
        for ref in cert.refutations:
            fam = family_of(cycle_graph(6), ref["side_a"])
            assert check_arrangement(fam, ref["tree_tried"]) is not None

    def test_k55_minus_c10_not_arrangeable(self):
        cert = decide_tree_arrangeable(k55_minus_c10())
        assert not cert.arrangeable
        # exhaustive confirmation: all 125 labeled trees fail on each side
        for side in (range(5), range(5, 10)):
            fam = family_of(k55_minus_c10(), tuple(side))
            trees = list(labeled_trees(fam.vertices))
            assert len(trees) == 125
            assert all(check_arrangement(fam, t) is not None for t in trees)

    def test_k33_certificate_passes_check(self):
        cert = decide_tree_arrangeable(complete_bipartite_graph(3, 3))
        assert cert.arrangeable
        fam = family_of(complete_bipartite_graph(3, 3), cert.side_a)
        assert check_arrangement(fam, cert.tree) is None

    def test_isolated_vertices_attach_as_leaves(self):
        g = Graph(5, [(0, 3), (1, 3), (1, 4)])  # vertex 2 isolated
        cert = decide_tree_arrangeable(g)
        assert cert.arrangeable

    def test_rejects_non_bipartite(self):
        with pytest.raises(ValueError, match="odd cycle"):
            decide_tree_arrangeable(cycle_graph(5))

    def test_matches_exhaustive_oracle_on_corpus(self):
        corpus = [
            cycle_graph(4),
            cycle_graph(6),
            cycle_graph(8),
            path_graph(7),
            complete_bipartite_graph(3, 3),
            complete_bipartite_graph(2, 4),
            grid_graph(2, 3),
            grid_graph(2, 4),
            star_graph(5),
            Graph(4, [(0, 1), (2, 3)]),
            k55_minus_c10(),
        ]
        for seed in range(10):
            corpus.append(random_bipartite(4, 4, Fraction(1, 2), 100 + seed))
            corpus.append(random_bipartite(5, 5, Fraction(1, 3), 200 + seed))
        for h in corpus:
            assert decide_tree_arrangeable(h).arrangeable == exhaustive_decide(h), h

    def test_json_certificate_shape(self):
        yes = decide_tree_arrangeable(complete_bipartite_graph(3, 3)).to_json_dict()
        assert yes["arrangeable"] and len(yes["tree"]) == 2
        no = decide_tree_arrangeable(cycle_graph(6)).to_json_dict()
        assert not no["arrangeable"]
        assert all("witness" in a for a in no["assignments"])
