"""Exact-arithmetic toolkit for homomorphism-density inequalities on
bipartite graphs: arrangeability certificates, product constructions, and
corpus verification of Sidorenko's inequality."""

from .arrangement import (
    ArrangementCertificate,
    ArrangementViolation,
    NeighborhoodFamily,
    check_arrangement,
    check_arrangement_paths,
    decide_tree_arrangeable,
    mwst_candidate_tree,
    neighbor_covering_reduction,
)
from .constructions import (
    NAMED_KEYS,
    HomGraph,
    PairGraph,
    bipartite_double,
    cartesian_product,
    degree_split,
    homomorphism_graph,
    labeled_trees,
    lift_hom,
    named,
    nonisomorphic_trees,
    project_hom,
    tensor_product,
)
from .functionals import (
    IdentityReport,
    RootedArrangement,
    certify_normalization_identities,
    conditional_expectation_enumerated,
    degree_density,
    mean_degree_density,
    parent_conditional_expectation,
    tree_functional,
    vertex_functional,
)
from .graphs import (
    Bipartition,
    BipartitionScan,
    Graph,
    Graph6ParseError,
    bipartitions,
    induced_subgraph,
    is_isomorphic,
    parse_graph6,
    random_gnp,
    remove_isolated,
    write_graph6,
)
from .homomorphisms import (
    InvalidDecomposition,
    SizeLimitError,
    TreeDecomposition,
    WeightMatrix,
    count_hom,
    count_hom_bruteforce,
    count_hom_dp,
    density,
    enumerate_homomorphisms,
    tree_decomposition,
    weighted_density,
)
from .verify import (
    ClassificationRecord,
    InequalityVerdict,
    classify,
    corpus_run,
    replay_derivation,
    sidorenko_check,
    summarize,
)

__version__ = "0.1.0"
