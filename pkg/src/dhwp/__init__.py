"""Directed 2-factorizations of complete symmetric digraphs.

Constructs and verifies partitions of the arcs of the complete symmetric
digraph on v vertices into r spanning factors of directed m-cycles and s
factors of directed n-cycles (the directed Hamilton-Waterloo problem),
backed by an explicit catalogue of small solutions, recursive blow-up
constructions, and an exact backtracking search for small instances.
"""

from .digraph import (
    Digraph,
    cayley_product,
    complete_symmetric,
    equipartite_symmetric,
    wreath_with_empty,
)
from .model import (
    DirectedCycle,
    Factorization,
    ProblemSpec,
    TwoFactor,
    Verdict,
    canonical_cycle,
    map_vertices,
    merge_parallel,
    verify_factorization,
)
from .oracle import SearchInstance, SearchOutcome, exact_search

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "cayley_product",
    "complete_symmetric",
    "equipartite_symmetric",
    "wreath_with_empty",
    "DirectedCycle",
    "TwoFactor",
    "Factorization",
    "ProblemSpec",
    "Verdict",
    "canonical_cycle",
    "map_vertices",
    "merge_parallel",
    "verify_factorization",
    "SearchInstance",
    "SearchOutcome",
    "exact_search",
    "__version__",
]
