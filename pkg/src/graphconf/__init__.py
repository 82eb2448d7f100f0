"""Integer homology of graphical configuration spaces.

The package computes H_*(Conf(Γ, X); Z) — configurations of n points in
a finite simplicial complex X whose coincidences are constrained by a
graph Γ on {1..n} — by working with chain complexes whose generators
are labeled by graphs and whose matrices respect the label order.
"""

from .complexes import (
    EvaluatedComplex,
    LabeledMatrix,
    PresheafComplex,
    boxtimes,
    direct_sum,
    empty_complex,
    evaluate,
    odot,
    pointwise_homology,
    qis_test,
    representable,
    shift,
    validate,
)
from .covers import (
    DEFAULT_SIMPLEX_LIMIT,
    DEFAULT_SUBDIVISIONS,
    SimplicialComplex,
    direct_product_model,
    letter,
    staircase_product,
    star_model,
    subdivide,
)
from .errors import InputError, ResourceLimitError, SplittingError
from .graphs import (
    Graph,
    complete_graph,
    empty_graph,
    enumerate_graphs,
    intersect,
    is_subgraph,
    union,
)
from .homology import HomologySummary, chain_homology, smith
from .pruning import prune, prune_smith, split_summands
from .stable import (
    StablePresheafModel,
    cp_homology,
    formality_split,
    plane_model,
    stable_homology,
    stable_model,
)
from .torus import (
    BettiTable,
    ShiftPoly,
    closed_formula_betti,
    direct_betti,
    torus_betti,
    verify_multiplication_table,
)

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "DEFAULT_SIMPLEX_LIMIT",
    "DEFAULT_SUBDIVISIONS",
    "EvaluatedComplex",
    "Graph",
    "HomologySummary",
    "InputError",
    "LabeledMatrix",
    "PresheafComplex",
    "ResourceLimitError",
    "ShiftPoly",
    "SimplicialComplex",
    "SplittingError",
    "StablePresheafModel",
    "boxtimes",
    "chain_homology",
    "closed_formula_betti",
    "complete_graph",
    "cp_homology",
    "direct_betti",
    "direct_product_model",
    "direct_sum",
    "empty_complex",
    "empty_graph",
    "enumerate_graphs",
    "evaluate",
    "formality_split",
    "intersect",
    "is_subgraph",
    "letter",
    "odot",
    "plane_model",
    "pointwise_homology",
    "prune",
    "prune_smith",
    "qis_test",
    "representable",
    "shift",
    "smith",
    "split_summands",
    "stable_homology",
    "stable_model",
    "staircase_product",
    "star_model",
    "subdivide",
    "torus_betti",
    "union",
    "validate",
    "verify_multiplication_table",
]
